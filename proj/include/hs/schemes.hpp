#ifndef HS_SCHEMES_HPP
#define HS_SCHEMES_HPP

#include <functional>
#include <optional>
#include <vector>

#include "hs/fd_scheme.hpp"
#include "hs/fem.hpp"
#include "hs/mesh.hpp"
#include "hs/newton.hpp"

namespace hs {

enum class SchemeKind {
  fd,
  galerkin1,
  galerkin2,
  euler_explicit,
  euler_implicit,
};

const char* scheme_name(SchemeKind kind);

struct SchemeConfig {
  SchemeKind kind = SchemeKind::galerkin1;
  double dt = 0.01;
  double t_end = 1.0;
  double newton_tol = 1e-12;
  int newton_max_iter = 50;

  void validate() const;  // throws ParamError
};

// Time steppers sharing the P1 spatial discretization. Scheme 1 and the
// Euler variants reduce the auxiliary variable through q = -B^{-1} C^T u;
// Scheme 2 through r = D^{-T} A u. The reduced nonlinear system has size N;
// the auxiliary variable is recovered, never solved for.
class GalerkinStepper {
 public:
  GalerkinStepper(const Mesh& mesh, SchemeKind kind, double dt,
                  NewtonOptions opts = {});

  SchemeKind kind() const { return kind_; }
  double dt() const { return dt_; }
  const Mesh& mesh() const { return *mesh_; }
  const BandedMatrix& stiffness() const { return a_; }

  CoeffVector step(const CoeffVector& u, StepStats* stats = nullptr) const;

  // Residual of the step equations at candidate v for u^{(n+1)}, given the
  // current coefficients. Exposed for independent cross-checks.
  void residual(const std::vector<double>& u_current,
                const std::vector<double>& candidate,
                std::vector<double>& out) const;

  // Auxiliary variable of the scheme's weak form (q for Scheme 1 and the
  // Euler variants, r for Scheme 2) as a P1 function in X2.
  CoeffVector recover_aux(const CoeffVector& u) const;

 private:
  void jacobian(const std::vector<double>& u_current,
                const std::vector<double>& candidate, BandedMatrix& jac) const;
  const LinearMap& aux_map() const;
  CoeffVector wrap(std::vector<double> values) const;

  const Mesh* mesh_;
  SchemeKind kind_;
  double dt_;
  NewtonOptions opts_;
  int band_;  // Newton matrix bandwidth, chosen at setup

  BandedMatrix a_, b_, c_, d_;
  BandedCholesky a_chol_, b_chol_;
  BandedLU d_lu_;
  LinearMap q_map_, r_map_;
};

struct StepRecord {
  int step = 0;
  double t = 0.0;
  // X1 coefficients (size N) for Galerkin/Euler kinds, grid values
  // u_0..u_N (size N+1) for the finite difference scheme.
  std::vector<double> values;
  double h1 = 0.0;
  double h2 = 0.0;
  std::optional<double> linf;  // absent when no exact reference applies
  int newton_iters = 0;
};

struct Trajectory {
  SchemeKind kind = SchemeKind::galerkin1;
  double dt = 0.0;
  StepRecord initial;
  std::vector<StepRecord> steps;

  int n_steps() const { return static_cast<int>(steps.size()); }
};

// Max over all steps of |H1 - H1(initial)| (the scheme's own Hamiltonian).
double max_h1_drift(const Trajectory& traj);

// Integrate from t=0 to t_end with fixed steps. `initial` is sampled at the
// mesh nodes (it must vanish at -L). With track_exact_error set, each record
// carries the nodal max error against the exact solution while the record
// time is inside the validity horizon. kind=fd requires a uniform mesh.
// Solver failures rethrow SolveError annotated with the failing step.
Trajectory run(const SchemeConfig& config, const Mesh& mesh,
               const std::function<double(double)>& initial,
               bool track_exact_error = false);

// Derivative profile used for plots: the scheme's recovered derivative at
// every mesh node (auxiliary variable for Galerkin/Euler kinds, ghost-rule
// central differences for fd).
std::vector<double> recovered_derivative(const SchemeConfig& config,
                                         const Mesh& mesh,
                                         const StepRecord& record);

}  // namespace hs

#endif
