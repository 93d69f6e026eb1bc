#ifndef CHARCONE_FRAME_HPP
#define CHARCONE_FRAME_HPP

#include "charcone/chart.hpp"
#include "charcone/grid.hpp"
#include "charcone/vec3.hpp"

namespace charcone {

// Per-point geometry of S_{t,0}: tangents, inward unit normal, induced
// metric, inverse frame matrix, second fundamental form and normal speed.
struct SurfaceFrame {
  Vec3 X[2];
  Vec3 That;
  double g[2][2] = {};
  double ginv[2][2] = {};
  double sqrtg = 0;
  // Columns of the inverse frame matrix: OmA[A] is the raised tangent
  // ginv^{AB} X_B; the third column equals That.
  Vec3 OmA[2];
  double theta[2][2] = {};
  double trtheta = 0;
  double V = 0;
};

// Metric part only (X, That, g, ginv, OmA). Throws DegenerateChart when the
// tangents are linearly dependent at the sample.
SurfaceFrame frame_at(const ConeChart& chart, double t, double th1, double th2);

// Fills theta and trtheta (needs second chart partials). Sign convention:
// the inward-That sphere of radius r has trtheta = -2/r.
void second_form_at(const ConeChart& chart, double t, double th1, double th2,
                    SurfaceFrame& fr);

// Normal speed of the surface family; positive when the surface moves
// against That (outward for inward That).
double speed_at(const ConeChart& chart, double t, double th1, double th2);

// All chart-derived grids at one time level, including first (and where the
// jet equations need them, second) time derivatives. Mixed third partials of
// the embedding are reconstructed by tangential differentiation of analytic
// order-2 samples.
struct GeometryLevel {
  double t = 0;
  Field E[3], Et[3], Ett[3], Ettt[3];
  Field X[2][3], Xt[2][3];
  Field That[3], Thatt[3], Thattt[3];
  Field g11, g12, g22, gt11, gt12, gt22;
  Field ginv11, ginv12, ginv22, ginvt11, ginvt12, ginvt22;
  Field sqrtg, sqrtgt;
  Field OmA[2][3], OmAt[2][3];
  Field theta11, theta12, theta22, thetat11, thetat12, thetat22;
  Field trtheta, trthetat;
  Field V, Vt, Vtt;
};

GeometryLevel build_geometry_level(const ConeChart& chart, const Grid2& grid,
                                   const DiffOps& ops, double t);

// Surface differential operators against a geometry level.
Field grad_slash_component(const GeometryLevel& G, const DiffOps& ops,
                           const Field& f, int A);  // = d f / d theta^A
Field lap_slash(const GeometryLevel& G, const DiffOps& ops, const Field& f);
// Covariant divergence of a tangential field given by chart components.
Field div_slash(const GeometryLevel& G, const DiffOps& ops, const Field& V1,
                const Field& V2);

}  // namespace charcone

#endif
