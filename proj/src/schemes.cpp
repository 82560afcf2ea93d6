#include "hs/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hs/errors.hpp"
#include "hs/reference.hpp"
#include "hs/util.hpp"

namespace hs {

namespace {

// Bandwidth of the Newton matrix for the q-reduction schemes. The mass
// inverse in q = -B^{-1} C^T u fills the Jacobian band, but its entries
// decay geometrically away from the diagonal (B is diagonally dominant with
// off-diagonal ratio <= 1/2), so a fixed fill captures the fill-in down to
// round-off. The r-reduction of Scheme 2 has no such decay (D^{-T} is a
// dense triangle), so that scheme keeps the full bandwidth.
constexpr int kQReductionFill = 48;

double h2_of_grid(std::span<const double> values, double dx) {
  double e = 0.0;
  for (std::size_t k = 0; k + 1 < values.size(); ++k) {
    const double s = (values[k + 1] - values[k]) / dx;
    e += 0.5 * s * s * dx * 0.5 * (values[k] + values[k + 1]);
  }
  return e;
}

}  // namespace

const char* scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::fd: return "fd";
    case SchemeKind::galerkin1: return "g1";
    case SchemeKind::galerkin2: return "g2";
    case SchemeKind::euler_explicit: return "euler-exp";
    case SchemeKind::euler_implicit: return "euler-imp";
  }
  return "?";
}

void SchemeConfig::validate() const {
  if (!(dt > 0.0)) throw ParamError("dt must be positive");
  if (!(t_end > 0.0)) throw ParamError("t_end must be positive");
  if (dt > t_end) throw ParamError("dt must not exceed t_end");
  if (!(newton_tol > 0.0)) throw ParamError("newton tolerance must be positive");
  if (newton_max_iter < 1) throw ParamError("newton max iterations must be >= 1");
}

GalerkinStepper::GalerkinStepper(const Mesh& mesh, SchemeKind kind, double dt,
                                 NewtonOptions opts)
    : mesh_(&mesh),
      kind_(kind),
      dt_(dt),
      opts_(opts),
      band_(0),
      a_(assemble_A(mesh)),
      b_(assemble_B(mesh)),
      c_(assemble_C(mesh)),
      d_(assemble_D(mesh)),
      a_chol_(a_),
      b_chol_(b_),
      d_lu_(d_) {
  if (kind_ == SchemeKind::fd)
    throw ParamError("the finite difference scheme has no Galerkin stepper");
  if (dt_ == 0.0) throw ParamError("dt must be nonzero");

  const int n = mesh.n_elements();
  band_ = kind_ == SchemeKind::galerkin2 ? n - 1
                                         : std::min(n - 1, kQReductionFill);
  band_ = std::max(band_, 2);

  q_map_ = LinearMap{BandedSolverRef{nullptr, &b_chol_}, false, &c_, true,
                     -1.0, n};
  r_map_ = LinearMap{BandedSolverRef{&d_lu_, nullptr}, true, &a_, false,
                     1.0, n};
}

const LinearMap& GalerkinStepper::aux_map() const {
  return kind_ == SchemeKind::galerkin2 ? r_map_ : q_map_;
}

CoeffVector GalerkinStepper::wrap(std::vector<double> values) const {
  return CoeffVector{Space::X1, std::move(values), mesh_};
}

CoeffVector GalerkinStepper::recover_aux(const CoeffVector& u) const {
  std::vector<double> aux;
  aux_map().apply(u.values, aux);
  return CoeffVector{Space::X2, std::move(aux), mesh_};
}

void GalerkinStepper::residual(const std::vector<double>& u_current,
                               const std::vector<double>& candidate,
                               std::vector<double>& out) const {
  const std::size_t n = u_current.size();
  std::vector<double> diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = candidate[i] - u_current[i];
  const BandedMatrix& lhs = kind_ == SchemeKind::galerkin2 ? d_ : a_;
  out = lhs.multiply(diff);

  std::vector<double> arg(n);
  if (kind_ == SchemeKind::galerkin1 || kind_ == SchemeKind::galerkin2) {
    for (std::size_t i = 0; i < n; ++i)
      arg[i] = 0.5 * (u_current[i] + candidate[i]);
  } else if (kind_ == SchemeKind::euler_implicit) {
    arg = candidate;
  } else {
    arg = u_current;  // explicit Euler: frozen argument
  }
  const CoeffVector ucv = wrap(std::move(arg));
  const CoeffVector aux = recover_aux(ucv);
  const std::vector<double> g = kind_ == SchemeKind::galerkin2
                                    ? eval_g2(ucv, aux)
                                    : eval_g1(ucv, aux);
  for (std::size_t i = 0; i < n; ++i) out[i] = out[i] / dt_ - g[i];
}

void GalerkinStepper::jacobian(const std::vector<double>& u_current,
                               const std::vector<double>& candidate,
                               BandedMatrix& jac) const {
  const std::size_t n = u_current.size();
  jac.set_zero();
  std::vector<double> arg(n);
  double weight;  // d(arg)/d(candidate)
  if (kind_ == SchemeKind::euler_implicit) {
    arg = candidate;
    weight = 1.0;
  } else {
    for (std::size_t i = 0; i < n; ++i)
      arg[i] = 0.5 * (u_current[i] + candidate[i]);
    weight = 0.5;
  }
  const CoeffVector ucv = wrap(std::move(arg));
  const CoeffVector aux = recover_aux(ucv);
  if (kind_ == SchemeKind::galerkin2) {
    jac.add_scaled(1.0 / dt_, d_);
    jac.add_scaled(-weight, dg2_du(aux));
    add_composed(jac, -weight, dg2_dr(ucv), r_map_);
  } else {
    jac.add_scaled(1.0 / dt_, a_);
    jac.add_scaled(-weight, dg1_du(aux));
    add_composed(jac, -weight, dg1_dq(ucv), q_map_);
  }
}

CoeffVector GalerkinStepper::step(const CoeffVector& u, StepStats* stats) const {
  if (u.space != Space::X1 || u.mesh != mesh_)
    throw ParamError("stepper: coefficients not in X1 on the stepper's mesh");

  if (kind_ == SchemeKind::euler_explicit) {
    const CoeffVector aux = recover_aux(u);
    std::vector<double> delta = a_chol_.solve(eval_g1(u, aux));
    std::vector<double> next(u.values);
    for (std::size_t i = 0; i < next.size(); ++i) next[i] += dt_ * delta[i];
    if (stats != nullptr) *stats = StepStats{0, 0.0};
    return wrap(std::move(next));
  }

  std::vector<double> v = u.values;  // initial guess: previous step
  BandedMatrix jac(static_cast<int>(v.size()), band_, band_);
  const auto res_fn = [&](const std::vector<double>& x,
                          std::vector<double>& out) {
    residual(u.values, x, out);
  };
  const auto jac_fn = [&](const std::vector<double>& x, BandedMatrix& j) {
    jacobian(u.values, x, j);
  };
  const StepStats st = newton_solve(v, res_fn, jac_fn, jac, opts_);
  if (stats != nullptr) *stats = st;
  return wrap(std::move(v));
}

double max_h1_drift(const Trajectory& traj) {
  double drift = 0.0;
  for (const StepRecord& r : traj.steps)
    drift = std::max(drift, std::abs(r.h1 - traj.initial.h1));
  return drift;
}

namespace {

int step_count(const SchemeConfig& config) {
  return static_cast<int>(std::ceil(config.t_end / config.dt - 1e-9));
}

}  // namespace

Trajectory run(const SchemeConfig& config, const Mesh& mesh,
               const std::function<double(double)>& initial,
               bool track_exact_error) {
  config.validate();
  const int n_steps = step_count(config);
  const double horizon =
      2.0 * (std::sqrt(mesh.half_width()) - 1.0);
  const auto track_at = [&](double t) {
    return track_exact_error && t >= 0.0 && t < horizon;
  };

  Trajectory traj;
  traj.kind = config.kind;
  traj.dt = config.dt;
  const NewtonOptions opts{config.newton_tol, config.newton_max_iter};

  if (config.kind == SchemeKind::fd) {
    if (!mesh.is_uniform())
      throw ParamError("the finite difference scheme requires a uniform mesh");
    const double dx = 2.0 * mesh.half_width() / mesh.n_elements();
    if (std::abs(initial(mesh.node(0))) > 1e-12)
      throw ParamError("initial data must vanish at x = -L");
    std::vector<double> values(static_cast<std::size_t>(mesh.n_nodes()));
    values[0] = 0.0;
    for (int k = 1; k < mesh.n_nodes(); ++k)
      values[static_cast<std::size_t>(k)] = initial(mesh.node(k));
    FdState state(std::move(values), dx, config.dt);

    traj.initial = StepRecord{0, 0.0, state.values, fd_hamiltonian(state),
                              h2_of_grid(state.values, dx),
                              track_at(0.0)
                                  ? std::optional<double>(linf_error(state, 0.0))
                                  : std::nullopt,
                              0};
    for (int n = 1; n <= n_steps; ++n) {
      const double t = n * config.dt;
      StepStats st;
      try {
        state = fd_step(state, opts, &st);
      } catch (const SolveError& e) {
        throw SolveError("step " + std::to_string(n) + ": " + e.what(),
                         e.iterations, e.residual, n);
      }
      traj.steps.push_back(
          StepRecord{n, t, state.values, fd_hamiltonian(state),
                     h2_of_grid(state.values, dx),
                     track_at(t) ? std::optional<double>(linf_error(state, t))
                                 : std::nullopt,
                     st.newton_iters});
    }
    return traj;
  }

  GalerkinStepper stepper(mesh, config.kind, config.dt, opts);
  CoeffVector u = interpolate(initial, mesh, Space::X1);
  traj.initial = StepRecord{0, 0.0, u.values, h1_energy(u), h2_energy(u),
                            track_at(0.0)
                                ? std::optional<double>(linf_error(u, 0.0))
                                : std::nullopt,
                            0};
  for (int n = 1; n <= n_steps; ++n) {
    const double t = n * config.dt;
    StepStats st;
    try {
      u = stepper.step(u, &st);
    } catch (const SolveError& e) {
      throw SolveError("step " + std::to_string(n) + ": " + e.what(),
                       e.iterations, e.residual, n);
    }
    traj.steps.push_back(
        StepRecord{n, t, u.values, h1_energy(u), h2_energy(u),
                   track_at(t) ? std::optional<double>(linf_error(u, t))
                               : std::nullopt,
                   st.newton_iters});
  }
  return traj;
}

std::vector<double> recovered_derivative(const SchemeConfig& config,
                                         const Mesh& mesh,
                                         const StepRecord& record) {
  if (config.kind == SchemeKind::fd) {
    const double dx = 2.0 * mesh.half_width() / mesh.n_elements();
    const FdState state(record.values, dx, config.dt);
    return fd_central_derivative(state);
  }
  const CoeffVector u{Space::X1, record.values, &mesh};
  if (config.kind == SchemeKind::galerkin2) {
    const BandedMatrix a = assemble_A(mesh);
    const BandedMatrix d = assemble_D(mesh);
    const BandedLU d_lu(d);
    const LinearMap r_map{BandedSolverRef{&d_lu, nullptr}, true, &a, false,
                          1.0, mesh.n_elements()};
    std::vector<double> r;
    r_map.apply(u.values, r);
    return nodal_values(CoeffVector{Space::X2, std::move(r), &mesh});
  }
  const BandedMatrix b = assemble_B(mesh);
  const BandedMatrix c = assemble_C(mesh);
  const BandedCholesky b_chol(b);
  const LinearMap q_map{BandedSolverRef{nullptr, &b_chol}, false, &c, true,
                        -1.0, mesh.n_elements()};
  std::vector<double> q;
  q_map.apply(u.values, q);
  return nodal_values(CoeffVector{Space::X2, std::move(q), &mesh});
}

}  // namespace hs
