#ifndef HS_FEM_HPP
#define HS_FEM_HPP

#include <functional>
#include <vector>

#include "hs/banded.hpp"
#include "hs/mesh.hpp"

namespace hs {

// P1 trial/test spaces on a mesh with N elements, both of dimension N:
//   X1: v(-L) = 0, dof i <-> node x_{i+1}  (i = 0..N-1)
//   X2: v( L) = 0, dof i <-> node x_i      (i = 0..N-1)
// The orderings make the mixed matrix D lower triangular.
enum class Space { X1, X2 };

struct CoeffVector {
  Space space;
  std::vector<double> values;  // size N
  const Mesh* mesh = nullptr;

  int size() const { return static_cast<int>(values.size()); }

  // Value at mesh node k (0..N); the constrained endpoint returns 0.
  double node_value(int k) const;

  // Constant slope on element k.
  double element_slope(int k) const;
};

CoeffVector zero_coeffs(Space space, const Mesh& mesh);

// Nodal interpolant. X1 targets require f(-L) = 0, X2 targets f(L) = 0
// (within 1e-12), else ParamError.
CoeffVector interpolate(const std::function<double(double)>& f,
                        const Mesh& mesh, Space space);

// Values of the P1 function at all mesh nodes x_0..x_N.
std::vector<double> nodal_values(const CoeffVector& u);

// Gram/coupling matrices of the two spaces. Entries come from closed-form
// element integrals (exact for P1 products).
BandedMatrix assemble_A(const Mesh& mesh);  // ((phi_i)_x,(phi_j)_x)  X1xX1, SPD
BandedMatrix assemble_B(const Mesh& mesh);  // (psi_i,psi_j)          X2xX2, SPD
BandedMatrix assemble_C(const Mesh& mesh);  // ((phi_i)_x,(psi_j)_x)  X1 rows
BandedMatrix assemble_D(const Mesh& mesh);  // (psi_i,(phi_j)_x)      X2 rows

// Nonlinear forms, integrated with 2-point Gauss per element (exact: the
// integrands are piecewise polynomials of degree <= 3).
//   g1_i = Int (q u_x + (q u)_x) phi_i   (u in X1, q in X2)
//   g2_i = -1/2 Int (u r_x + (u r)_x) psi_i  (u in X1, r in X2)
std::vector<double> eval_g1(const CoeffVector& u, const CoeffVector& q);
std::vector<double> eval_g2(const CoeffVector& u, const CoeffVector& r);

// Partial derivatives of the bilinear forms.
BandedMatrix dg1_du(const CoeffVector& q);  // kl=1, ku=1
BandedMatrix dg1_dq(const CoeffVector& u);  // kl=0, ku=2
BandedMatrix dg2_du(const CoeffVector& r);  // kl=2, ku=0
BandedMatrix dg2_dr(const CoeffVector& u);  // kl=1, ku=1

// y = sign * S^{-1 or -T} (M or M^T) x with S held in factored form.
// Describes the auxiliary-variable reductions q = -B^{-1} C^T u and
// r = D^{-T} A u without ever forming an inverse densely.
struct LinearMap {
  BandedSolverRef solver;
  bool solve_transpose = false;
  const BandedMatrix* mat = nullptr;
  bool mat_transpose = false;
  double sign = 1.0;
  int order = 0;

  void apply(std::span<const double> x, std::vector<double>& y) const;
  std::vector<double> apply(std::span<const double> x) const {
    std::vector<double> y;
    apply(x, y);
    return y;
  }
  // Column j of the represented matrix (apply to a unit vector).
  void column(int j, std::vector<double>& y) const;
};

// J += scale * G * K restricted to the band of J, where K is the matrix
// represented by `map`. Used to compose the Jacobians below.
void add_composed(BandedMatrix& jac, double scale, const BandedMatrix& g,
                  const LinearMap& map);

// Exact Jacobian of u -> g1(u, K u) with K = dq_du, truncated to the given
// bandwidth (default: full). Bilinearity makes this the sum of the two
// partial maps.
BandedMatrix jacobian_g1(const CoeffVector& u, const CoeffVector& q,
                         const LinearMap& dq_du, int bandwidth = -1);
BandedMatrix jacobian_g2(const CoeffVector& u, const CoeffVector& r,
                         const LinearMap& dr_du, int bandwidth = -1);

// H1 = 1/2 Int u_x^2 and H2 = 1/2 Int u u_x^2 of a P1 function in X1.
double h1_energy(const CoeffVector& u);
double h2_energy(const CoeffVector& u);

}  // namespace hs

#endif
