#include "charcone/construction.hpp"

#include <cmath>
#include <sstream>

namespace charcone {

namespace {

struct Workspace {
  Grid2 grid;
  std::unique_ptr<DiffOps> ops;
  StageInput si;

  Workspace(const ConeProblem& p) {
    grid = p.chart->domain(p.n1, p.n2);
    ops = std::make_unique<DiffOps>(grid);
    si.chart = p.chart;
    si.eos = p.eos;
    si.free = &p.free;
    si.grid = &grid;
    si.ops = ops.get();
  }
};

EvolveState rk4_step(const StageInput& si, double t, double dt, const EvolveState& y) {
  EvolveState k1 = stage_rhs(si, t, y);
  EvolveState k2 = stage_rhs(si, t + 0.5 * dt, y.scaled_add(0.5 * dt, k1));
  EvolveState k3 = stage_rhs(si, t + 0.5 * dt, y.scaled_add(0.5 * dt, k2));
  EvolveState k4 = stage_rhs(si, t + dt, y.scaled_add(dt, k3));
  EvolveState out = y;
  out.axpy(dt / 6.0, k1);
  out.axpy(dt / 3.0, k2);
  out.axpy(dt / 3.0, k3);
  out.axpy(dt / 6.0, k4);
  return out;
}

double rel_diff(const EvolveState& a, const EvolveState& b) {
  auto field_diff = [](const Field& x, const Field& y) {
    double m = 0;
    for (size_t k = 0; k < x.size(); ++k) {
      double sc = std::max(1.0, std::abs(x[k]));
      m = std::max(m, std::abs(x[k] - y[k]) / sc);
    }
    return m;
  };
  double m = field_diff(a.wbar, b.wbar);
  if (a.with_jets) {
    m = std::max(m, field_diff(a.trho, b.trho));
    m = std::max(m, field_diff(a.kappa, b.kappa));
    for (int A = 0; A < 2; ++A)
      for (int i = 0; i < 3; ++i) m = std::max(m, field_diff(a.txa[A][i], b.txa[A][i]));
  }
  return m;
}

bool all_finite(const EvolveState& y) {
  auto ok = [](const Field& f) {
    for (double v : f)
      if (!std::isfinite(v)) return false;
    return true;
  };
  if (!ok(y.wbar)) return false;
  if (y.with_jets) {
    if (!ok(y.trho) || !ok(y.kappa)) return false;
    for (int A = 0; A < 2; ++A)
      for (int i = 0; i < 3; ++i)
        if (!ok(y.txa[A][i])) return false;
  }
  return true;
}

LevelFields assemble_level(const StageInput& si, double t, const EvolveState& y) {
  Level0 l0;
  JetLevel jl;
  stage_rhs(si, t, y, &l0, y.with_jets ? &jl : nullptr);
  const GeometryLevel& G = l0.G;
  const int N = si.grid->size();
  LevelFields out;
  out.t = t;
  for (int i = 0; i < 3; ++i) {
    out.x[i] = G.E[i];
    out.v[i] = l0.vx[i];
    out.vsl_cart[i] = l0.vslx[i];
  }
  out.wbar = y.wbar;
  out.w = l0.w;
  out.rho = l0.rho;
  out.vT = l0.vT;
  out.c = l0.c;
  out.s = l0.s;
  out.V = G.V;
  out.null_res = l0.null_res;
  out.has_jets = y.with_jets;
  if (y.with_jets) {
    out.trho = y.trho;
    out.kappa = y.kappa;
    out.Ts = jl.Ts;
    out.T2s = jl.T2s;
    for (int i = 0; i < 3; ++i) {
      out.Tv[i] = jl.Tv[i];
      out.TThat[i] = jl.TThat[i];
    }
    for (int A = 0; A < 2; ++A) {
      out.zeta[A] = jl.zeta[A];
      out.eta[A] = jl.eta[A];
      for (int i = 0; i < 3; ++i) out.txa[A][i] = y.txa[A][i];
    }
  }
  (void)N;
  return out;
}

}  // namespace

CornerReport validate_corner(const ConeProblem& p) {
  Workspace ws(p);
  const Grid2& g = ws.grid;
  GeometryLevel G = build_geometry_level(*p.chart, g, *ws.ops, 0.0);
  CornerReport rep;
  rep.checked_Ljets = p.corner.has_Ljets;

  Field vsl0[2];
  for (int A = 0; A < 2; ++A) {
    vsl0[A].assign(g.size(), 0.0);
  }
  for (int i1 = 0; i1 < g.n1; ++i1)
    for (int j1 = 0; j1 < g.n2; ++j1) {
      int k = g.idx(i1, j1);
      double u = g.theta1(i1), v = g.theta2(j1);
      for (int A = 0; A < 2; ++A) vsl0[A][k] = p.free.vslash[A].value(0.0, u, v);
    }
  GeneratorField gen = generator_field(G, vsl0);

  for (int i1 = 0; i1 < g.n1; ++i1)
    for (int j1 = 0; j1 < g.n2; ++j1) {
      int k = g.idx(i1, j1);
      double u = g.theta1(i1), v = g.theta2(j1);
      double rho0 = p.corner.rho(u, v);
      Vec3 v0 = p.corner.v(u, v);
      double s0 = p.corner.s(u, v);
      Thermo th = p.eos->eval(rho0, s0);
      Vec3 That{G.That[0][k], G.That[1][k], G.That[2][k]};
      double vT0 = dot(v0, That);
      double res = std::abs((-vT0 + th.c) - G.V[k]);
      if (res > rep.speed_residual) {
        rep.speed_residual = res;
        rep.arg_i = i1;
        rep.arg_j = j1;
      }
      // k = 0 matching of the free data against the corner restriction
      rep.mismatch_s =
          std::max(rep.mismatch_s, std::abs(p.free.s.value(0.0, u, v) - s0));
      for (int i = 0; i < 3; ++i) {
        double vsl_free = vsl0[0][k] * G.X[0][i][k] + vsl0[1][k] * G.X[1][i][k];
        double vsl_corner = v0[i] - vT0 * That[i];
        rep.mismatch_vsl =
            std::max(rep.mismatch_vsl, std::abs(vsl_free - vsl_corner));
      }
      if (p.corner.has_Ljets) {
        double Ls_free = p.free.s.dt(0.0, u, v);
        // L = d/dt + lambda^A d_A on chart samples
        // tangential part added below via spectral derivatives
        (void)Ls_free;
      }
    }

  if (p.corner.has_Ljets) {
    // assemble L(s_free) and L(vsl_free^i) on the grid
    Field sfree(g.size()), st(g.size());
    Field vslc[3], vslct[3];
    for (int i = 0; i < 3; ++i) {
      vslc[i].assign(g.size(), 0.0);
      vslct[i].assign(g.size(), 0.0);
    }
    for (int i1 = 0; i1 < g.n1; ++i1)
      for (int j1 = 0; j1 < g.n2; ++j1) {
        int k = g.idx(i1, j1);
        double u = g.theta1(i1), v = g.theta2(j1);
        sfree[k] = p.free.s.value(0.0, u, v);
        st[k] = p.free.s.dt(0.0, u, v);
        for (int i = 0; i < 3; ++i) {
          double a = p.free.vslash[0].value(0.0, u, v) * G.X[0][i][k] +
                     p.free.vslash[1].value(0.0, u, v) * G.X[1][i][k];
          vslc[i][k] = a;
          double at = p.free.vslash[0].dt(0.0, u, v) * G.X[0][i][k] +
                      p.free.vslash[1].dt(0.0, u, v) * G.X[1][i][k] +
                      p.free.vslash[0].value(0.0, u, v) * G.Xt[0][i][k] +
                      p.free.vslash[1].value(0.0, u, v) * G.Xt[1][i][k];
          vslct[i][k] = at;
        }
      }
    auto L_of = [&](const Field& q, const Field& qt) {
      Field q1 = ws.ops->d(q, 1), q2 = ws.ops->d(q, 2);
      Field outf(g.size());
      for (int k = 0; k < g.size(); ++k)
        outf[k] = qt[k] + gen.lambda[0][k] * q1[k] + gen.lambda[1][k] * q2[k];
      return outf;
    };
    Field Ls = L_of(sfree, st);
    Field Lvsl[3];
    for (int i = 0; i < 3; ++i) Lvsl[i] = L_of(vslc[i], vslct[i]);
    for (int i1 = 0; i1 < g.n1; ++i1)
      for (int j1 = 0; j1 < g.n2; ++j1) {
        int k = g.idx(i1, j1);
        double u = g.theta1(i1), v = g.theta2(j1);
        rep.mismatch_Ls = std::max(rep.mismatch_Ls,
                                   std::abs(Ls[k] - p.corner.Ls(u, v)));
        Vec3 lv = p.corner.Lvslash(u, v);
        for (int i = 0; i < 3; ++i)
          rep.mismatch_Lvsl = std::max(rep.mismatch_Lvsl, std::abs(Lvsl[i][k] - lv[i]));
      }
  }

  double worst = std::max({rep.speed_residual, rep.mismatch_s, rep.mismatch_vsl,
                           rep.mismatch_Ls, rep.mismatch_Lvsl});
  rep.pass = worst <= p.corner_tol;
  std::ostringstream os;
  if (rep.pass) {
    os << "corner compatible (max residual " << worst << ")";
  } else {
    os << "corner incompatible: speed residual " << rep.speed_residual
       << " at sample (" << rep.arg_i << "," << rep.arg_j << "), free-data mismatch s "
       << rep.mismatch_s << ", vslash " << rep.mismatch_vsl;
    if (rep.checked_Ljets)
      os << ", L-jets " << rep.mismatch_Ls << "/" << rep.mismatch_Lvsl;
  }
  rep.message = os.str();
  return rep;
}

RunResult run_cone_construction(const ConeProblem& p, int store_stride) {
  CornerReport rep = validate_corner(p);
  if (!rep.pass) throw CornerIncompatible(rep.message);

  Workspace ws(p);
  const Grid2& g = ws.grid;
  const int N = g.size();
  const double dt = p.T / p.nt;

  RunResult out;
  out.grid = g;
  out.corner_speed_residual = rep.speed_residual;
  out.kappa_min = 1e300;
  out.c_min = 1e300;

  // corner state
  EvolveState y;
  y.with_jets = (p.jet_order >= 1);
  y.wbar.assign(N, 0.0);
  GeometryLevel G0 = build_geometry_level(*p.chart, g, *ws.ops, 0.0);
  double c_corner_min = 1e300, kappa_corner_min = 1e300;
  for (int i1 = 0; i1 < g.n1; ++i1)
    for (int j1 = 0; j1 < g.n2; ++j1) {
      int k = g.idx(i1, j1);
      double u = g.theta1(i1), v = g.theta2(j1);
      double rho0 = p.corner.rho(u, v);
      Vec3 v0 = p.corner.v(u, v);
      double s0 = p.corner.s(u, v);
      Thermo th = p.eos->eval(rho0, s0);
      Vec3 That{G0.That[0][k], G0.That[1][k], G0.That[2][k]};
      y.wbar[k] = 0.5 * (th.Phi0 - dot(v0, That));
      c_corner_min = std::min(c_corner_min, th.c);
    }
  if (y.with_jets) {
    y.trho.assign(N, 0.0);
    y.kappa.assign(N, 0.0);
    for (int i1 = 0; i1 < g.n1; ++i1)
      for (int j1 = 0; j1 < g.n2; ++j1) {
        int k = g.idx(i1, j1);
        double u = g.theta1(i1), v = g.theta2(j1);
        y.trho[k] = p.corner.trho ? p.corner.trho(u, v) : 0.0;
        y.kappa[k] = p.corner.kappa0 ? p.corner.kappa0(u, v) : 1.0;
        kappa_corner_min = std::min(kappa_corner_min, y.kappa[k]);
      }
    // corner frame jets: X_A(That^i) under the distance-normalized foliation
    for (int A = 0; A < 2; ++A)
      for (int i = 0; i < 3; ++i) y.txa[A][i] = ws.ops->d(G0.That[i], A + 1);
  } else {
    kappa_corner_min = 1.0;
  }
  const double c_floor = p.c_floor_rel * c_corner_min;
  const double kappa_floor = p.kappa_floor_rel * kappa_corner_min;

  auto track_level = [&](double t, const EvolveState& yy, bool store) {
    Level0 l0 = build_level0(ws.si, t, yy.wbar);
    double sum = 0;
    for (int k = 0; k < N; ++k) {
      double r = std::abs(l0.null_res[k]);
      out.max_null_residual = std::max(out.max_null_residual, r);
      sum += r;
    }
    out.mean_null_residual += sum / N;
    out.c_min = std::min(out.c_min, l0.c_min);
    if (yy.with_jets)
      for (double kv : yy.kappa) out.kappa_min = std::min(out.kappa_min, kv);
    GeneratorField gen = generator_field(l0.G, l0.vsl);
    out.max_generator_defect = std::max(out.max_generator_defect, gen.max_normal_defect);
    if (store) out.levels.push_back(assemble_level(ws.si, t, yy));
    return l0.c_min;
  };

  track_level(0.0, y, true);

  out.status = RunStatus::Ok;
  out.truncation_time = 0.0;
  int levels_tracked = 1;
  for (int step = 0; step < p.nt; ++step) {
    double t = step * dt;
    EvolveState y1;
    bool threw = false;
    RunStatus fail_status = RunStatus::TruncatedStepRejected;
    try {
      y1 = rk4_step(ws.si, t, dt, y);
      if (p.monitor_stride > 0 && step % p.monitor_stride == 0) {
        EvolveState yh = rk4_step(ws.si, t, 0.5 * dt, y);
        yh = rk4_step(ws.si, t + 0.5 * dt, 0.5 * dt, yh);
        double err = rel_diff(y1, yh);
        out.max_step_error = std::max(out.max_step_error, err);
        if (err > p.monitor_budget) {
          threw = true;
          fail_status = RunStatus::TruncatedStepRejected;
        }
      }
    } catch (const NonPositiveSoundSpeed&) {
      threw = true;
      fail_status = RunStatus::TruncatedSoundSpeedFloor;
    } catch (const OutOfRange&) {
      threw = true;
      fail_status = RunStatus::TruncatedSoundSpeedFloor;
    } catch (const Error&) {
      threw = true;
    }
    if (!threw && !all_finite(y1)) threw = true;
    if (!threw && y1.with_jets) {
      for (double kv : y1.kappa)
        if (kv <= kappa_floor) {
          threw = true;
          fail_status = RunStatus::TruncatedKappaFloor;
          break;
        }
    }
    double cmin_level = 0;
    if (!threw) {
      try {
        bool store = ((step + 1) % store_stride == 0) || (step + 1 == p.nt);
        cmin_level = track_level(t + dt, y1, store);
      } catch (const Error&) {
        threw = true;
        fail_status = RunStatus::TruncatedSoundSpeedFloor;
      }
    }
    if (!threw && cmin_level <= c_floor) {
      threw = true;
      fail_status = RunStatus::TruncatedSoundSpeedFloor;
    }
    if (threw) {
      out.status = fail_status;
      out.truncation_time = t;
      break;
    }
    y = std::move(y1);
    out.truncation_time = t + dt;
    ++levels_tracked;
  }
  out.mean_null_residual /= levels_tracked;
  if (out.status == RunStatus::Ok &&
      std::abs(out.truncation_time - p.T) > 0.5 * dt &&
      p.nt > 0)
    out.status = RunStatus::TruncatedStepRejected;
  if (!out.levels.empty() && out.levels.back().t < out.truncation_time - 0.5 * dt) {
    // make sure the last accepted level is stored
    out.levels.push_back(assemble_level(ws.si, out.truncation_time, y));
  }
  return out;
}

}  // namespace charcone
