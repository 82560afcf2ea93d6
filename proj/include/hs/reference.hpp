#ifndef HS_REFERENCE_HPP
#define HS_REFERENCE_HPP

#include "hs/fd_scheme.hpp"
#include "hs/fem.hpp"

namespace hs {

// Piecewise rarefaction solution on [-L, L]:
//   u(x,t) = 0                 for x <= 0
//          = x / s(t)          for 0 < x < s(t)^2,   s(t) = 0.5 t + 1
//          = s(t)              for x >= s(t)^2
// valid while the moving kink x = s(t)^2 stays inside the domain,
// i.e. for t in [0, 2(sqrt(L) - 1)).
class ExactSolution {
 public:
  explicit ExactSolution(double half_width);

  double half_width() const { return half_width_; }
  double horizon() const;  // 2(sqrt(L) - 1)

  double u(double x, double t) const;

  // u_x; at the kink abscissa exactly, the left-branch value is returned
  // and `at_kink` is set.
  struct UxValue {
    double value;
    bool at_kink;
  };
  UxValue ux_info(double x, double t) const;
  double ux(double x, double t) const { return ux_info(x, t).value; }

  struct Invariants {
    double h1;  // 1/2 Int u_x^2   = 1/2 for all t
    double h2;  // 1/2 Int u u_x^2 = s(t)/4
  };
  Invariants invariants(double t) const;

 private:
  void check_time(double t) const;
  double half_width_;
};

// Max over mesh/grid nodes of |u_k - u_exact(x_k, t)|.
double linf_error(const CoeffVector& u, double t);
double linf_error(const FdState& state, double t);

}  // namespace hs

#endif
