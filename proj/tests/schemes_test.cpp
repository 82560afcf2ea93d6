#include <doctest.h>

#include <cmath>
#include <random>

#include "hs/errors.hpp"
#include "hs/reference.hpp"
#include "hs/schemes.hpp"
#include "hs/util.hpp"
#include "oracles.hpp"

using namespace hs;

namespace {

CoeffVector exact_interpolant(const Mesh& mesh) {
  const ExactSolution exact(mesh.half_width());
  return interpolate([&](double x) { return exact.u(x, 0.0); }, mesh,
                     Space::X1);
}

std::function<double(double)> exact_initial(const Mesh& mesh) {
  const ExactSolution exact(mesh.half_width());
  return [exact](double x) { return exact.u(x, 0.0); };
}

}  // namespace

TEST_CASE("config validation") {
  SchemeConfig config;
  CHECK_NOTHROW(config.validate());
  config.dt = 2.0;
  CHECK_THROWS_AS(config.validate(), ParamError);  // dt > t_end
  config.dt = -0.1;
  CHECK_THROWS_AS(config.validate(), ParamError);
  config.dt = 0.01;
  config.newton_tol = 0.0;
  CHECK_THROWS_AS(config.validate(), ParamError);
  config.newton_tol = 1e-12;
  config.newton_max_iter = 0;
  CHECK_THROWS_AS(config.validate(), ParamError);
}

TEST_CASE("zero is a fixed point of every stepper") {
  std::mt19937 rng(51);
  const Mesh mesh = testing::random_mesh(rng, 6.0, 8);
  for (const SchemeKind kind :
       {SchemeKind::galerkin1, SchemeKind::galerkin2, SchemeKind::euler_explicit,
        SchemeKind::euler_implicit}) {
    const GalerkinStepper stepper(mesh, kind, 0.01);
    StepStats stats;
    const CoeffVector next = stepper.step(zero_coeffs(Space::X1, mesh), &stats);
    for (double v : next.values) CHECK(v == 0.0);
    CHECK(stats.newton_iters == 0);
  }
}

TEST_CASE("midpoint steps preserve the discrete energy") {
  const Mesh mesh = Mesh::uniform(6.0, 200);
  const CoeffVector u0 = exact_interpolant(mesh);
  const double before = h1_energy(u0);
  for (const SchemeKind kind : {SchemeKind::galerkin1, SchemeKind::galerkin2}) {
    CAPTURE(scheme_name(kind));
    const GalerkinStepper stepper(mesh, kind, 0.01);
    const CoeffVector u1 = stepper.step(u0);
    CHECK(std::abs(h1_energy(u1) - before) <= 1e-10);
  }
}

TEST_CASE("steps match an independent dense solve") {
  std::mt19937 rng(52);
  std::uniform_real_distribution<double> dist(-0.2, 0.2);
  const Mesh mesh = Mesh::uniform(6.0, 6);
  for (const SchemeKind kind :
       {SchemeKind::galerkin1, SchemeKind::galerkin2, SchemeKind::euler_implicit,
        SchemeKind::euler_explicit}) {
    CAPTURE(scheme_name(kind));
    const GalerkinStepper stepper(mesh, kind, 0.01);
    for (int trial = 0; trial < 3; ++trial) {
      CoeffVector u = zero_coeffs(Space::X1, mesh);
      for (double& v : u.values) v = dist(rng);

      const CoeffVector next = stepper.step(u);
      const auto residual = [&](const std::vector<double>& v) {
        std::vector<double> out;
        stepper.residual(u.values, v, out);
        return out;
      };
      const std::vector<double> oracle = testing::dense_newton(residual, u.values);
      for (int i = 0; i < 6; ++i)
        CHECK(std::abs(next.values[i] - oracle[i]) <= 1e-10);
    }
  }
}

TEST_CASE("euler references bracket the conservative schemes") {
  const Mesh mesh = Mesh::uniform(6.0, 64);

  SchemeConfig config;
  config.t_end = 1.0;
  config.dt = 0.01;

  config.kind = SchemeKind::euler_implicit;
  const Trajectory imp = run(config, mesh, exact_initial(mesh));
  double prev = imp.initial.h1;
  for (const StepRecord& r : imp.steps) {
    CHECK(r.h1 < prev);
    prev = r.h1;
  }

  config.kind = SchemeKind::euler_explicit;
  const Trajectory exp = run(config, mesh, exact_initial(mesh));
  bool exceeded = false;
  for (const StepRecord& r : exp.steps)
    if (r.t < 1.0 + 1e-12 && r.h1 > exp.initial.h1) exceeded = true;
  CHECK(exceeded);
}

TEST_CASE("run produces the requested number of records") {
  const Mesh mesh = Mesh::uniform(6.0, 16);
  SchemeConfig config;
  config.kind = SchemeKind::galerkin1;
  config.dt = 0.01;
  config.t_end = 1.0;
  const Trajectory traj = run(config, mesh, exact_initial(mesh), true);
  CHECK(traj.n_steps() == 100);
  CHECK(traj.initial.t == 0.0);
  for (int i = 0; i < 100; ++i) {
    CHECK(traj.steps[i].step == i + 1);
    CHECK(traj.steps[i].t == doctest::Approx((i + 1) * 0.01));
    CHECK(traj.steps[i].linf.has_value());
  }
  CHECK(max_h1_drift(traj) <= 100 * config.newton_tol * 1.0);
}

TEST_CASE("trajectory drift stays within the Newton tolerance budget") {
  const Mesh mesh = Mesh::uniform(6.0, 16);
  SchemeConfig config;
  config.dt = 0.01;
  config.t_end = 0.2;
  for (const SchemeKind kind :
       {SchemeKind::fd, SchemeKind::galerkin1, SchemeKind::galerkin2}) {
    CAPTURE(scheme_name(kind));
    config.kind = kind;
    const Trajectory traj = run(config, mesh, exact_initial(mesh), true);
    const double budget =
        100.0 * config.newton_tol * std::max(1.0, traj.initial.h1);
    CHECK(max_h1_drift(traj) <= budget);
  }
}

TEST_CASE("zero initial data stays zero for every scheme") {
  const Mesh mesh = Mesh::uniform(6.0, 12);
  for (const SchemeKind kind :
       {SchemeKind::fd, SchemeKind::galerkin1, SchemeKind::galerkin2,
        SchemeKind::euler_explicit, SchemeKind::euler_implicit}) {
    SchemeConfig config;
    config.kind = kind;
    config.dt = 0.05;
    config.t_end = 0.25;
    const Trajectory traj = run(config, mesh, [](double) { return 0.0; });
    CHECK(traj.n_steps() == 5);
    for (const StepRecord& r : traj.steps) {
      CHECK(r.h1 == 0.0);
      for (double v : r.values) CHECK(v == 0.0);
    }
  }
}

TEST_CASE("run rejects the fd scheme on non-uniform meshes") {
  const Mesh mesh = Mesh::graded(6.0, 16, 0.0, 3.0, 0.5);
  SchemeConfig config;
  config.kind = SchemeKind::fd;
  CHECK_THROWS_AS(run(config, mesh, [](double) { return 0.0; }), ParamError);
}

TEST_CASE("step failures carry the failing step index") {
  const Mesh mesh = Mesh::uniform(6.0, 16);
  SchemeConfig config;
  config.kind = SchemeKind::galerkin1;
  config.newton_tol = 1e-300;
  config.newton_max_iter = 1;
  try {
    run(config, mesh, exact_initial(mesh));
    FAIL("expected SolveError");
  } catch (const SolveError& e) {
    CHECK(e.step == 1);
  }
}

TEST_CASE("midpoint schemes are time symmetric") {
  const Mesh mesh = Mesh::uniform(6.0, 32);
  const CoeffVector u0 = exact_interpolant(mesh);

  for (const SchemeKind kind : {SchemeKind::galerkin1, SchemeKind::galerkin2}) {
    CAPTURE(scheme_name(kind));
    const GalerkinStepper forward(mesh, kind, 0.01);
    const GalerkinStepper backward(mesh, kind, -0.01);
    const CoeffVector u1 = forward.step(u0);
    const CoeffVector u2 = backward.step(u1);
    for (int i = 0; i < u0.size(); ++i)
      CHECK(std::abs(u2.values[i] - u0.values[i]) <= 1e-9);
  }

  const ExactSolution exact(6.0);
  std::vector<double> values(33);
  for (int k = 0; k <= 32; ++k)
    values[k] = exact.u(-6.0 + k * 0.375, 0.0);
  values[0] = 0.0;
  const FdState f0(values, 0.375, 0.01);
  FdState f1 = fd_step(f0);
  f1.dt = -0.01;
  const FdState f2 = fd_step(f1);
  for (int k = 0; k <= 32; ++k)
    CHECK(std::abs(f2.values[k] - f0.values[k]) <= 1e-9);
}

TEST_CASE("recovered derivative shapes and fd recovery") {
  const Mesh mesh = Mesh::uniform(6.0, 16);
  SchemeConfig config;
  config.kind = SchemeKind::fd;
  config.dt = 0.01;
  config.t_end = 0.05;
  const Trajectory traj = run(config, mesh, exact_initial(mesh), true);
  const std::vector<double> dfd =
      recovered_derivative(config, mesh, traj.steps.back());
  CHECK(dfd.size() == 17);

  config.kind = SchemeKind::galerkin1;
  const Trajectory tg = run(config, mesh, exact_initial(mesh), true);
  const std::vector<double> dg =
      recovered_derivative(config, mesh, tg.steps.back());
  CHECK(dg.size() == 17);
  CHECK(dg.back() == 0.0);  // X2 functions vanish at +L
}
