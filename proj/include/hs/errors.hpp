#ifndef HS_ERRORS_HPP
#define HS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hs {

// Base class for all solver-suite errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid parameters, domain violations, incompatible inputs.
class ParamError : public Error {
 public:
  explicit ParamError(const std::string& msg) : Error(msg) {}
};

// Malformed input files (carries file/line context in the message).
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& msg) : Error(msg) {}
};

// Filesystem / stream failures.
class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

// A nonlinear or linear solve failed. Carries diagnostics so callers can
// report the failing step and the last Newton residual.
class SolveError : public Error {
 public:
  SolveError(const std::string& msg, int iterations, double residual,
             int step = -1)
      : Error(msg), iterations(iterations), residual(residual), step(step) {}

  int iterations;
  double residual;
  int step;  // time-step index, -1 when not stepping
};

}  // namespace hs

#endif
