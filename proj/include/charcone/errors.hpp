#ifndef CHARCONE_ERRORS_HPP
#define CHARCONE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace charcone {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonPositiveDensity : Error {
  explicit NonPositiveDensity(const std::string& msg) : Error(msg) {}
};
struct NonPositiveSoundSpeed : Error {
  explicit NonPositiveSoundSpeed(const std::string& msg) : Error(msg) {}
};
struct OutOfRange : Error {
  explicit OutOfRange(const std::string& msg) : Error(msg) {}
};
struct NonConvergence : Error {
  explicit NonConvergence(const std::string& msg) : Error(msg) {}
};
struct NonMonotone : Error {
  explicit NonMonotone(const std::string& msg) : Error(msg) {}
};
struct NoRoot : Error {
  explicit NoRoot(const std::string& msg) : Error(msg) {}
};
struct DegenerateChart : Error {
  explicit DegenerateChart(const std::string& msg) : Error(msg) {}
};
struct GridTooCoarse : Error {
  explicit GridTooCoarse(const std::string& msg) : Error(msg) {}
};
struct MissingDerivative : Error {
  explicit MissingDerivative(const std::string& msg) : Error(msg) {}
};
struct CornerIncompatible : Error {
  explicit CornerIncompatible(const std::string& msg) : Error(msg) {}
};
struct NotTangent : Error {
  explicit NotTangent(const std::string& msg) : Error(msg) {}
};
struct ClosureFailure : Error {
  explicit ClosureFailure(const std::string& msg) : Error(msg) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};
struct CyclicDependency : Error {
  explicit CyclicDependency(const std::string& msg) : Error(msg) {}
};
struct RadiusCollapse : Error {
  explicit RadiusCollapse(const std::string& msg) : Error(msg) {}
};

// Outcome of a time integration. Floors terminate the run early with a
// status rather than throwing; partial data up to the truncation time stays
// valid.
enum class RunStatus {
  Ok,
  TruncatedKappaFloor,
  TruncatedSoundSpeedFloor,
  TruncatedStepRejected,
};

inline const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Ok: return "ok";
    case RunStatus::TruncatedKappaFloor: return "kappa_floor";
    case RunStatus::TruncatedSoundSpeedFloor: return "sound_speed_floor";
    case RunStatus::TruncatedStepRejected: return "step_rejected";
  }
  return "unknown";
}

}  // namespace charcone

#endif
