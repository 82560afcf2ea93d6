#ifndef HS_NEWTON_HPP
#define HS_NEWTON_HPP

#include <functional>
#include <vector>

#include "hs/banded.hpp"

namespace hs {

struct NewtonOptions {
  // Residual infinity-norm target. Acceptance also triggers at the
  // round-off floor 2*eps*|J|_inf*max(1, |x|_inf) when that lies above the
  // tolerance: beyond it no representable iterate can do better, however
  // small tol is chosen.
  double tol = 1e-12;
  int max_iter = 50;
};

struct StepStats {
  int newton_iters = 0;
  double residual = 0.0;
};

using ResidualFn =
    std::function<void(const std::vector<double>&, std::vector<double>&)>;
using JacobianFn =
    std::function<void(const std::vector<double>&, BandedMatrix&)>;

// Newton iteration on a banded system. `x` holds the initial guess and is
// updated in place; `jac` is reused as Jacobian storage across iterations.
// Throws SolveError with the iteration count and last residual on failure.
StepStats newton_solve(std::vector<double>& x, const ResidualFn& residual,
                       const JacobianFn& jacobian, BandedMatrix& jac,
                       const NewtonOptions& opts);

}  // namespace hs

#endif
