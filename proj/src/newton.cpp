#include "hs/newton.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hs/errors.hpp"
#include "hs/util.hpp"

namespace hs {

StepStats newton_solve(std::vector<double>& x, const ResidualFn& residual,
                       const JacobianFn& jacobian, BandedMatrix& jac,
                       const NewtonOptions& opts) {
  constexpr double eps = std::numeric_limits<double>::epsilon();

  std::vector<double> f(x.size());
  residual(x, f);
  double res = inf_norm(f);
  // Attainable residual given the quantization of the iterate: the exact
  // root is representable only to eps*|x|, which the residual magnifies by
  // its Lipschitz constant |J|. Below that level the tolerance cannot be
  // meaningful, whatever its value.
  double floor = 0.0;
  int iter = 0;
  while (res > opts.tol && (floor == 0.0 || res > floor)) {
    if (iter >= opts.max_iter)
      throw SolveError("Newton iteration did not converge: residual " +
                           format_full(res) + " after " +
                           std::to_string(iter) + " iterations",
                       iter, res);
    jacobian(x, jac);
    floor = 2.0 * eps * jac.inf_norm() * std::max(1.0, inf_norm(x));
    BandedLU lu(jac);
    for (double& v : f) v = -v;
    lu.solve_in_place(f);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += f[i];
    ++iter;
    residual(x, f);
    res = inf_norm(f);
  }
  return StepStats{iter, res};
}

}  // namespace hs
