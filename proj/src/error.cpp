#include "specnet/error.hpp"

namespace specnet {

const char* status_name(Status s) noexcept {
  switch (s) {
    case Status::ok: return "ok";
    case Status::invalid_argument: return "invalid_argument";
    case Status::infeasible: return "infeasible";
    case Status::not_converged: return "not_converged";
    case Status::disconnected: return "disconnected";
    case Status::empty_fan_set: return "empty_fan_set";
    case Status::numerical: return "numerical";
    case Status::io: return "io";
  }
  return "unknown";
}

}  // namespace specnet
