#include "hs/reference.hpp"

#include <cmath>

#include "hs/errors.hpp"
#include "hs/util.hpp"

namespace hs {

ExactSolution::ExactSolution(double half_width) : half_width_(half_width) {
  if (!(half_width > 0.0))
    throw ParamError("exact solution requires a positive half-width");
}

double ExactSolution::horizon() const {
  return 2.0 * (std::sqrt(half_width_) - 1.0);
}

void ExactSolution::check_time(double t) const {
  if (!(t >= 0.0) || !(t < horizon()))
    throw ParamError("time " + format_full(t) +
                     " outside the exact solution's validity interval [0, " +
                     format_full(horizon()) + ")");
}

double ExactSolution::u(double x, double t) const {
  check_time(t);
  if (std::abs(x) > half_width_ * (1.0 + 1e-12))
    throw ParamError("position " + format_full(x) + " outside [-L, L]");
  const double s = 0.5 * t + 1.0;
  if (x <= 0.0) return 0.0;
  if (x < s * s) return x / s;
  return s;
}

ExactSolution::UxValue ExactSolution::ux_info(double x, double t) const {
  check_time(t);
  if (std::abs(x) > half_width_ * (1.0 + 1e-12))
    throw ParamError("position " + format_full(x) + " outside [-L, L]");
  const double s = 0.5 * t + 1.0;
  // left-branch value at both slope discontinuities
  if (x <= 0.0) return {0.0, x == 0.0};
  if (x < s * s) return {1.0 / s, false};
  return {x == s * s ? 1.0 / s : 0.0, x == s * s};
}

ExactSolution::Invariants ExactSolution::invariants(double t) const {
  check_time(t);
  const double s = 0.5 * t + 1.0;
  return {0.5, 0.25 * s};
}

double linf_error(const CoeffVector& u, double t) {
  const ExactSolution exact(u.mesh->half_width());
  double err = 0.0;
  for (int k = 0; k < u.mesh->n_nodes(); ++k)
    err = std::max(err,
                   std::abs(u.node_value(k) - exact.u(u.mesh->node(k), t)));
  return err;
}

double linf_error(const FdState& state, double t) {
  const ExactSolution exact(state.half_width());
  double err = 0.0;
  for (int k = 0; k <= state.n(); ++k)
    err = std::max(err, std::abs(state.values[static_cast<std::size_t>(k)] -
                                 exact.u(state.x(k), t)));
  return err;
}

}  // namespace hs
