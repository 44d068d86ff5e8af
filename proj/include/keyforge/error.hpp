#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace keyforge {

/// Invalid or inconsistent input data. The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver stopped before meeting its tolerance.
class ConvergenceError : public DataError {
 public:
  ConvergenceError(const std::string& what, double residual)
      : DataError(what + " (residual " + format(residual) + ")"), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  static std::string format(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
  }

  double residual_;
};

}  // namespace keyforge
