#pragma once

#include <stdexcept>
#include <string>

namespace specnet {

// Numeric values double as CLI exit codes and C API status codes.
enum class Status : int {
  ok = 0,
  invalid_argument = 2,
  infeasible = 3,
  not_converged = 4,
  disconnected = 5,
  empty_fan_set = 6,
  numerical = 7,
  io = 8,
};

const char* status_name(Status s) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Status status, const std::string& what)
      : std::runtime_error(what), status_(status) {}

  Status status() const noexcept { return status_; }

 private:
  Status status_;
};

}  // namespace specnet
