#ifndef HS_FD_SCHEME_HPP
#define HS_FD_SCHEME_HPP

#include <span>
#include <vector>

#include "hs/newton.hpp"

namespace hs {

// Grid function u_0..u_N on a uniform grid over [-L, L], L = N*dx/2, with
// the discrete boundary condition u_0 = 0. Ghost values outside the grid
// are eliminated through
//   u_{-1} = u_1,  u_{N+1} = u_{N-1},  u_{N+2} = 2 u_N - u_{N-2}.
struct FdState {
  FdState(std::vector<double> values, double dx, double dt);

  int n() const { return static_cast<int>(values.size()) - 1; }
  double x(int k) const { return (k - 0.5 * n()) * dx; }
  double half_width() const { return 0.5 * n() * dx; }

  std::vector<double> values;  // u_0..u_N
  double dx;
  double dt;  // signed; runs use dt > 0
};

// Implicit midpoint step of the conservative finite difference scheme:
// returns u^{(n+1)} with Newton residual inf-norm <= opts.tol.
FdState fd_step(const FdState& state, const NewtonOptions& opts = {},
                StepStats* stats = nullptr);

// Residual of the step equations at a candidate for the interior unknowns
// v_1..v_N (size N). Exposed so independent solvers can cross-check fd_step.
void fd_residual(const FdState& state, std::span<const double> candidate,
                 std::span<double> out);

// Trapezoidal discrete Hamiltonian
//   H_d = dx * ( f_0/2 + f_1 + ... + f_{N-1} + f_N/2 ),
//   f_k = ((d+ u_k)^2 + (d- u_k)^2) / 4,
// with the ghost rules above at the endpoints.
double fd_hamiltonian(std::span<const double> values, double dx);
double fd_hamiltonian(const FdState& state);

// Central difference derivative at every grid point, ghost rules applied.
std::vector<double> fd_central_derivative(const FdState& state);

}  // namespace hs

#endif
