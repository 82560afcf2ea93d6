#include "hs/fd_scheme.hpp"

#include <cmath>
#include <string>

#include "hs/errors.hpp"

namespace hs {

namespace {

// Grid function extended by the discrete boundary conditions
//   z_{-1} = z_1,  z_{N+1} = z_{N-1},  z_{N+2} = 2 z_N - z_{N-2}.
inline double ext(std::span<const double> z, int k) {
  const int n = static_cast<int>(z.size()) - 1;
  if (k == -1) return z[1];
  if (k == n + 1) return z[static_cast<std::size_t>(n - 1)];
  if (k == n + 2)
    return 2.0 * z[static_cast<std::size_t>(n)] -
           z[static_cast<std::size_t>(n - 2)];
  return z[static_cast<std::size_t>(k)];
}

// (index, weight) pairs expressing how the extended value at `a` depends on
// the interior unknowns z_1..z_N.
template <typename F>
inline void for_ext_deps(int n, int a, const F& fn) {
  if (a == 0) return;
  if (a == -1) {
    fn(1, 1.0);
  } else if (a == n + 1) {
    fn(n - 1, 1.0);
  } else if (a == n + 2) {
    fn(n, 2.0);
    fn(n - 2, -1.0);
  } else {
    fn(a, 1.0);
  }
}

}  // namespace

FdState::FdState(std::vector<double> values_in, double dx_in, double dt_in)
    : values(std::move(values_in)), dx(dx_in), dt(dt_in) {
  if (values.size() < 4)
    throw ParamError("fd grid needs at least 4 points, got " +
                     std::to_string(values.size()));
  if (!(dx > 0.0)) throw ParamError("fd grid spacing must be positive");
  if (dt == 0.0) throw ParamError("fd time step must be nonzero");
  if (values[0] != 0.0)
    throw ParamError("fd boundary condition violated: u_0 must be exactly 0");
  for (double v : values)
    if (!std::isfinite(v)) throw ParamError("fd grid values must be finite");
}

void fd_residual(const FdState& state, std::span<const double> candidate,
                 std::span<double> out) {
  const int n = state.n();
  const double dx = state.dx;
  const double dt = state.dt;

  std::vector<double> w(static_cast<std::size_t>(n) + 1);
  std::vector<double> m(static_cast<std::size_t>(n) + 1);
  w[0] = 0.0;
  m[0] = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double uk = state.values[static_cast<std::size_t>(k)];
    const double vk = candidate[static_cast<std::size_t>(k - 1)];
    w[static_cast<std::size_t>(k)] = vk - uk;
    m[static_cast<std::size_t>(k)] = 0.5 * (uk + vk);
  }

  const auto d2 = [&](std::span<const double> z, int k) {
    return (ext(z, k + 1) - 2.0 * ext(z, k) + ext(z, k - 1)) / (dx * dx);
  };
  const auto d1 = [&](std::span<const double> z, int k) {
    return (ext(z, k + 1) - ext(z, k - 1)) / (2.0 * dx);
  };
  const auto p = [&](int j) { return ext(m, j) * d2(m, j); };

  for (int k = 1; k <= n; ++k) {
    out[static_cast<std::size_t>(k - 1)] =
        d2(w, k) / dt + d2(m, k) * d1(m, k) + (p(k + 1) - p(k - 1)) / (2.0 * dx);
  }
}

namespace {

void fd_jacobian(const FdState& state, const std::vector<double>& candidate,
                 BandedMatrix& jac) {
  const int n = state.n();
  const double dx = state.dx;
  const double dt = state.dt;
  const double inv_dx2 = 1.0 / (dx * dx);
  const double inv_2dx = 1.0 / (2.0 * dx);

  std::vector<double> m(static_cast<std::size_t>(n) + 1);
  m[0] = 0.0;
  for (int k = 1; k <= n; ++k)
    m[static_cast<std::size_t>(k)] =
        0.5 * (state.values[static_cast<std::size_t>(k)] +
               candidate[static_cast<std::size_t>(k - 1)]);

  const auto d2m = [&](int k) {
    return (ext(m, k + 1) - 2.0 * ext(m, k) + ext(m, k - 1)) * inv_dx2;
  };
  const auto d1m = [&](int k) {
    return (ext(m, k + 1) - ext(m, k - 1)) * inv_2dx;
  };

  jac.set_zero();
  for (int k = 1; k <= n; ++k) {
    const int row = k - 1;
    // accumulate d(residual_k)/d(z_a) for z the relevant grid function,
    // distributing extended indices onto the interior unknowns
    const auto add = [&](int a, double coeff) {
      for_ext_deps(n, a, [&](int idx, double weight) {
        jac.add(row, idx - 1, coeff * weight);
      });
    };

    // linear part: (d2 w)_k / dt, dw/dv = 1
    add(k - 1, inv_dx2 / dt);
    add(k, -2.0 * inv_dx2 / dt);
    add(k + 1, inv_dx2 / dt);

    // nonlinear part, dm/dv = 1/2
    const auto addm = [&](int a, double coeff) { add(a, 0.5 * coeff); };

    // d[(d2 m)_k (d1 m)_k]
    const double sk = d2m(k);
    const double gk = d1m(k);
    addm(k - 1, gk * inv_dx2 - sk * inv_2dx);
    addm(k, -2.0 * gk * inv_dx2);
    addm(k + 1, gk * inv_dx2 + sk * inv_2dx);

    // d[(P_{k+1} - P_{k-1}) / (2 dx)], P_j = m_j (d2 m)_j
    for (const int sgn : {+1, -1}) {
      const int j = k + sgn;
      const double scale = sgn * inv_2dx;
      addm(j, scale * d2m(j));
      const double mj = ext(m, j);
      addm(j - 1, scale * mj * inv_dx2);
      addm(j, scale * mj * -2.0 * inv_dx2);
      addm(j + 1, scale * mj * inv_dx2);
    }
  }
}

}  // namespace

FdState fd_step(const FdState& state, const NewtonOptions& opts,
                StepStats* stats) {
  const int n = state.n();
  std::vector<double> v(state.values.begin() + 1, state.values.end());
  BandedMatrix jac(n, 2, 2);

  const auto residual = [&](const std::vector<double>& x,
                            std::vector<double>& out) {
    fd_residual(state, x, out);
  };
  const auto jacobian = [&](const std::vector<double>& x, BandedMatrix& j) {
    fd_jacobian(state, x, j);
  };

  const StepStats st = newton_solve(v, residual, jacobian, jac, opts);
  if (stats != nullptr) *stats = st;

  std::vector<double> next(static_cast<std::size_t>(n) + 1);
  next[0] = 0.0;
  for (int k = 1; k <= n; ++k)
    next[static_cast<std::size_t>(k)] = v[static_cast<std::size_t>(k - 1)];
  return FdState(std::move(next), state.dx, state.dt);
}

double fd_hamiltonian(std::span<const double> values, double dx) {
  const int n = static_cast<int>(values.size()) - 1;
  double h = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double dplus = (ext(values, k + 1) - ext(values, k)) / dx;
    const double dminus = (ext(values, k) - ext(values, k - 1)) / dx;
    const double fk = 0.25 * (dplus * dplus + dminus * dminus);
    h += (k == 0 || k == n) ? 0.5 * fk : fk;
  }
  return h * dx;
}

double fd_hamiltonian(const FdState& state) {
  return fd_hamiltonian(state.values, state.dx);
}

std::vector<double> fd_central_derivative(const FdState& state) {
  const int n = state.n();
  std::vector<double> d(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k)
    d[static_cast<std::size_t>(k)] =
        (ext(state.values, k + 1) - ext(state.values, k - 1)) / (2.0 * state.dx);
  return d;
}

}  // namespace hs
