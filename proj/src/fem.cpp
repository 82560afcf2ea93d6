#include "hs/fem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hs/errors.hpp"

namespace hs {

namespace {

// 2-point Gauss-Legendre on the unit interval; exact through degree 3,
// which covers every integrand assembled here.
constexpr double kGaussXi[2] = {0.5 - 0.5 / 1.7320508075688772935,
                                0.5 + 0.5 / 1.7320508075688772935};
constexpr double kGaussW[2] = {0.5, 0.5};

// Element-local dof indices; -1 marks the constrained endpoint.
inline int x1_dof(int element, int local, int n) {
  (void)n;
  return local == 0 ? element - 1 : element;
}
inline int x2_dof(int element, int local, int n) {
  const int idx = element + local;
  return idx <= n - 1 ? idx : -1;
}

inline int dof_of(Space space, int element, int local, int n) {
  return space == Space::X1 ? x1_dof(element, local, n)
                            : x2_dof(element, local, n);
}

void require_spaces(const CoeffVector& u, const CoeffVector& w, Space wanted_w,
                    const char* op) {
  if (u.space != Space::X1 || w.space != wanted_w)
    throw ParamError(std::string(op) + ": arguments in the wrong spaces");
  const bool same_mesh =
      u.mesh == w.mesh || (u.mesh != nullptr && w.mesh != nullptr &&
                           *u.mesh == *w.mesh);
  if (!same_mesh) throw ParamError(std::string(op) + ": mesh mismatch");
}

}  // namespace

double CoeffVector::node_value(int k) const {
  const int n = size();
  if (space == Space::X1)
    return k == 0 ? 0.0 : values[static_cast<std::size_t>(k - 1)];
  return k == n ? 0.0 : values[static_cast<std::size_t>(k)];
}

double CoeffVector::element_slope(int k) const {
  return (node_value(k + 1) - node_value(k)) / mesh->h(k);
}

CoeffVector zero_coeffs(Space space, const Mesh& mesh) {
  return CoeffVector{space,
                     std::vector<double>(static_cast<std::size_t>(mesh.n_elements()), 0.0),
                     &mesh};
}

CoeffVector interpolate(const std::function<double(double)>& f,
                        const Mesh& mesh, Space space) {
  const double endpoint =
      space == Space::X1 ? mesh.node(0) : mesh.node(mesh.n_elements());
  if (std::abs(f(endpoint)) > 1e-12)
    throw ParamError("interpolate: function does not vanish at the "
                     "constrained endpoint");
  CoeffVector out = zero_coeffs(space, mesh);
  const int offset = space == Space::X1 ? 1 : 0;
  for (int i = 0; i < out.size(); ++i)
    out.values[static_cast<std::size_t>(i)] = f(mesh.node(i + offset));
  return out;
}

std::vector<double> nodal_values(const CoeffVector& u) {
  std::vector<double> v(static_cast<std::size_t>(u.mesh->n_nodes()));
  for (int k = 0; k < u.mesh->n_nodes(); ++k)
    v[static_cast<std::size_t>(k)] = u.node_value(k);
  return v;
}

BandedMatrix assemble_A(const Mesh& mesh) {
  const int n = mesh.n_elements();
  BandedMatrix a(n, 1, 1);
  for (int k = 0; k < n; ++k) {
    const double hk = mesh.h(k);
    for (int la = 0; la < 2; ++la) {
      const int i = x1_dof(k, la, n);
      if (i < 0) continue;
      for (int lb = 0; lb < 2; ++lb) {
        const int j = x1_dof(k, lb, n);
        if (j < 0) continue;
        a.add(i, j, (la == lb ? 1.0 : -1.0) / hk);
      }
    }
  }
  a.set_symmetric(true);
  return a;
}

BandedMatrix assemble_B(const Mesh& mesh) {
  const int n = mesh.n_elements();
  BandedMatrix b(n, 1, 1);
  for (int k = 0; k < n; ++k) {
    const double hk = mesh.h(k);
    for (int la = 0; la < 2; ++la) {
      const int i = x2_dof(k, la, n);
      if (i < 0) continue;
      for (int lb = 0; lb < 2; ++lb) {
        const int j = x2_dof(k, lb, n);
        if (j < 0) continue;
        b.add(i, j, hk / 6.0 * (la == lb ? 2.0 : 1.0));
      }
    }
  }
  b.set_symmetric(true);
  return b;
}

BandedMatrix assemble_C(const Mesh& mesh) {
  const int n = mesh.n_elements();
  BandedMatrix c(n, 0, 2);
  for (int k = 0; k < n; ++k) {
    const double hk = mesh.h(k);
    for (int la = 0; la < 2; ++la) {
      const int i = x1_dof(k, la, n);
      if (i < 0) continue;
      for (int lb = 0; lb < 2; ++lb) {
        const int j = x2_dof(k, lb, n);
        if (j < 0) continue;
        c.add(i, j, (la == lb ? 1.0 : -1.0) / hk);
      }
    }
  }
  return c;
}

BandedMatrix assemble_D(const Mesh& mesh) {
  const int n = mesh.n_elements();
  BandedMatrix d(n, 2, 0);
  for (int k = 0; k < n; ++k) {
    for (int la = 0; la < 2; ++la) {
      const int i = x2_dof(k, la, n);
      if (i < 0) continue;
      for (int lb = 0; lb < 2; ++lb) {
        const int j = x1_dof(k, lb, n);
        if (j < 0) continue;
        // Int lambda_a (lambda_b)_x = +-1/2, independent of h.
        d.add(i, j, lb == 1 ? 0.5 : -0.5);
      }
    }
  }
  return d;
}

std::vector<double> eval_g1(const CoeffVector& u, const CoeffVector& q) {
  require_spaces(u, q, Space::X2, "eval_g1");
  const Mesh& mesh = *u.mesh;
  const int n = mesh.n_elements();
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    const double hk = mesh.h(k);
    const double u0 = u.node_value(k), u1 = u.node_value(k + 1);
    const double q0 = q.node_value(k), q1 = q.node_value(k + 1);
    const double ux = (u1 - u0) / hk;
    const double qx = (q1 - q0) / hk;
    for (int g = 0; g < 2; ++g) {
      const double xi = kGaussXi[g];
      const double w = kGaussW[g] * hk;
      const double qv = q0 + (q1 - q0) * xi;
      const double uv = u0 + (u1 - u0) * xi;
      // q u_x + (q u)_x = 2 q u_x + q_x u
      const double f = 2.0 * qv * ux + qx * uv;
      const double lam[2] = {1.0 - xi, xi};
      for (int la = 0; la < 2; ++la) {
        const int i = x1_dof(k, la, n);
        if (i >= 0) out[static_cast<std::size_t>(i)] += w * f * lam[la];
      }
    }
  }
  return out;
}

std::vector<double> eval_g2(const CoeffVector& u, const CoeffVector& r) {
  require_spaces(u, r, Space::X2, "eval_g2");
  const Mesh& mesh = *u.mesh;
  const int n = mesh.n_elements();
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    const double hk = mesh.h(k);
    const double u0 = u.node_value(k), u1 = u.node_value(k + 1);
    const double r0 = r.node_value(k), r1 = r.node_value(k + 1);
    const double ux = (u1 - u0) / hk;
    const double rx = (r1 - r0) / hk;
    for (int g = 0; g < 2; ++g) {
      const double xi = kGaussXi[g];
      const double w = kGaussW[g] * hk;
      const double rv = r0 + (r1 - r0) * xi;
      const double uv = u0 + (u1 - u0) * xi;
      // -(1/2)(u r_x + (u r)_x) = -(1/2)(2 u r_x + u_x r)
      const double f = -0.5 * (2.0 * uv * rx + ux * rv);
      const double lam[2] = {1.0 - xi, xi};
      for (int la = 0; la < 2; ++la) {
        const int i = x2_dof(k, la, n);
        if (i >= 0) out[static_cast<std::size_t>(i)] += w * f * lam[la];
      }
    }
  }
  return out;
}

namespace {

// Derivative of a form Int f(trial; fixed) test w.r.t. the trial coefficients.
// `rows`/`cols` name the test resp. trial space; `integrand` returns the
// derivative of f with respect to the trial function's local basis (value,
// slope) at the quadrature point.
template <typename F>
BandedMatrix assemble_form_derivative(const Mesh& mesh, Space rows, Space cols,
                                      int kl, int ku, const F& integrand) {
  const int n = mesh.n_elements();
  BandedMatrix m(n, kl, ku);
  for (int k = 0; k < n; ++k) {
    const double hk = mesh.h(k);
    for (int g = 0; g < 2; ++g) {
      const double xi = kGaussXi[g];
      const double w = kGaussW[g] * hk;
      const double lam[2] = {1.0 - xi, xi};
      const double dlam[2] = {-1.0 / hk, 1.0 / hk};
      for (int lb = 0; lb < 2; ++lb) {
        const int j = dof_of(cols, k, lb, n);
        if (j < 0) continue;
        const double df = integrand(k, xi, lam[lb], dlam[lb]);
        for (int la = 0; la < 2; ++la) {
          const int i = dof_of(rows, k, la, n);
          if (i >= 0) m.add(i, j, w * df * lam[la]);
        }
      }
    }
  }
  return m;
}

}  // namespace

BandedMatrix dg1_du(const CoeffVector& q) {
  const Mesh& mesh = *q.mesh;
  return assemble_form_derivative(
      mesh, Space::X1, Space::X1, 1, 1,
      [&](int k, double xi, double lam, double dlam) {
        const double q0 = q.node_value(k), q1 = q.node_value(k + 1);
        const double qv = q0 + (q1 - q0) * xi;
        const double qx = (q1 - q0) / mesh.h(k);
        return 2.0 * qv * dlam + qx * lam;
      });
}

BandedMatrix dg1_dq(const CoeffVector& u) {
  const Mesh& mesh = *u.mesh;
  return assemble_form_derivative(
      mesh, Space::X1, Space::X2, 0, 2,
      [&](int k, double xi, double lam, double dlam) {
        const double u0 = u.node_value(k), u1 = u.node_value(k + 1);
        const double uv = u0 + (u1 - u0) * xi;
        const double ux = (u1 - u0) / mesh.h(k);
        return 2.0 * lam * ux + dlam * uv;
      });
}

BandedMatrix dg2_du(const CoeffVector& r) {
  const Mesh& mesh = *r.mesh;
  return assemble_form_derivative(
      mesh, Space::X2, Space::X1, 2, 0,
      [&](int k, double xi, double lam, double dlam) {
        const double r0 = r.node_value(k), r1 = r.node_value(k + 1);
        const double rv = r0 + (r1 - r0) * xi;
        const double rx = (r1 - r0) / mesh.h(k);
        return -0.5 * (2.0 * lam * rx + dlam * rv);
      });
}

BandedMatrix dg2_dr(const CoeffVector& u) {
  const Mesh& mesh = *u.mesh;
  return assemble_form_derivative(
      mesh, Space::X2, Space::X2, 1, 1,
      [&](int k, double xi, double lam, double dlam) {
        const double u0 = u.node_value(k), u1 = u.node_value(k + 1);
        const double uv = u0 + (u1 - u0) * xi;
        const double ux = (u1 - u0) / mesh.h(k);
        return -0.5 * (2.0 * uv * dlam + ux * lam);
      });
}

void LinearMap::apply(std::span<const double> x, std::vector<double>& y) const {
  y = mat_transpose ? mat->multiply_transpose(x) : mat->multiply(x);
  solver.solve_in_place(y, solve_transpose);
  if (sign != 1.0)
    for (double& v : y) v *= sign;
}

void LinearMap::column(int j, std::vector<double>& y) const {
  const int n = order;
  y.assign(static_cast<std::size_t>(n), 0.0);
  if (mat_transpose) {
    // column j of M^T = row j of M
    const int lo = std::max(0, j - mat->lower());
    const int hi = std::min(n - 1, j + mat->upper());
    for (int i = lo; i <= hi; ++i) y[static_cast<std::size_t>(i)] = mat->at(j, i);
  } else {
    const int lo = std::max(0, j - mat->upper());
    const int hi = std::min(n - 1, j + mat->lower());
    for (int i = lo; i <= hi; ++i) y[static_cast<std::size_t>(i)] = mat->at(i, j);
  }
  solver.solve_in_place(y, solve_transpose);
  if (sign != 1.0)
    for (double& v : y) v *= sign;
}

void add_composed(BandedMatrix& jac, double scale, const BandedMatrix& g,
                  const LinearMap& map) {
  const int n = jac.order();
  std::vector<double> col;
  for (int j = 0; j < n; ++j) {
    map.column(j, col);
    const int lo = std::max(0, j - jac.upper());
    const int hi = std::min(n - 1, j + jac.lower());
    for (int i = lo; i <= hi; ++i) {
      const int mlo = std::max(0, i - g.lower());
      const int mhi = std::min(n - 1, i + g.upper());
      double s = 0.0;
      for (int m = mlo; m <= mhi; ++m)
        s += g.at(i, m) * col[static_cast<std::size_t>(m)];
      if (s != 0.0) jac.add(i, j, scale * s);
    }
  }
}

BandedMatrix jacobian_g1(const CoeffVector& u, const CoeffVector& q,
                         const LinearMap& dq_du, int bandwidth) {
  require_spaces(u, q, Space::X2, "jacobian_g1");
  const int n = u.size();
  const int bw = bandwidth < 0 ? n - 1 : std::min(std::max(bandwidth, 2), n - 1);
  BandedMatrix jac(n, bw, bw);
  jac.add_scaled(1.0, dg1_du(q));
  add_composed(jac, 1.0, dg1_dq(u), dq_du);
  return jac;
}

BandedMatrix jacobian_g2(const CoeffVector& u, const CoeffVector& r,
                         const LinearMap& dr_du, int bandwidth) {
  require_spaces(u, r, Space::X2, "jacobian_g2");
  const int n = u.size();
  const int bw = bandwidth < 0 ? n - 1 : std::min(std::max(bandwidth, 2), n - 1);
  BandedMatrix jac(n, bw, bw);
  jac.add_scaled(1.0, dg2_du(r));
  add_composed(jac, 1.0, dg2_dr(u), dr_du);
  return jac;
}

double h1_energy(const CoeffVector& u) {
  if (u.space != Space::X1) throw ParamError("h1_energy expects X1 coefficients");
  double e = 0.0;
  for (int k = 0; k < u.mesh->n_elements(); ++k) {
    const double s = u.element_slope(k);
    e += 0.5 * u.mesh->h(k) * s * s;
  }
  return e;
}

double h2_energy(const CoeffVector& u) {
  if (u.space != Space::X1) throw ParamError("h2_energy expects X1 coefficients");
  double e = 0.0;
  for (int k = 0; k < u.mesh->n_elements(); ++k) {
    const double hk = u.mesh->h(k);
    const double u0 = u.node_value(k), u1 = u.node_value(k + 1);
    const double s = (u1 - u0) / hk;
    for (int g = 0; g < 2; ++g) {
      const double uv = u0 + (u1 - u0) * kGaussXi[g];
      e += 0.5 * kGaussW[g] * hk * uv * s * s;
    }
  }
  return e;
}

}  // namespace hs
