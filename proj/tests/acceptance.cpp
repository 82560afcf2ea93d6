// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "hs/fd_scheme.hpp"
#include "hs/fem.hpp"
#include "hs/mesh.hpp"
#include "hs/reference.hpp"
#include "hs/schemes.hpp"
#include "hs/util.hpp"
#include "oracles.hpp"

using namespace hs;
using hs::testing::dense_newton;
using hs::testing::random_coeffs;
using hs::testing::random_mesh;

namespace {

struct Harness {
  int failures = 0;

  void check(int number, const std::string& name,
             const std::function<std::string()>& body) {
    try {
      const std::string detail = body();
      std::printf("[PASS] %2d %s%s%s\n", number, name.c_str(),
                  detail.empty() ? "" : " -- ", detail.c_str());
    } catch (const std::exception& e) {
      ++failures;
      std::printf("[FAIL] %2d %s -- %s\n", number, name.c_str(), e.what());
    }
    std::fflush(stdout);
  }
};

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

void expect(bool ok, const std::string& msg) {
  if (!ok) fail(msg);
}

SchemeConfig reference_config(SchemeKind kind) {
  SchemeConfig config;
  config.kind = kind;
  config.dt = 0.01;
  config.t_end = 1.0;
  return config;
}

std::function<double(double)> exact_initial(double half_width) {
  const ExactSolution exact(half_width);
  return [exact](double x) { return exact.u(x, 0.0); };
}

struct ReferenceRun {
  Trajectory traj;
  double seconds = 0.0;
};

// L=6, N=200, dt=0.01, t_end=1 runs, shared across criteria.
const ReferenceRun& reference_run(SchemeKind kind, int n = 200) {
  static std::map<std::pair<SchemeKind, int>, ReferenceRun> cache;
  const auto key = std::make_pair(kind, n);
  auto it = cache.find(key);
  if (it == cache.end()) {
    const Mesh mesh = Mesh::uniform(6.0, n);
    const auto start = std::chrono::steady_clock::now();
    Trajectory traj =
        run(reference_config(kind), mesh, exact_initial(6.0), true);
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    it = cache.emplace(key, ReferenceRun{std::move(traj), elapsed.count()})
             .first;
  }
  return it->second;
}

std::string criterion_energy_preservation() {
  std::string detail;
  for (const SchemeKind kind :
       {SchemeKind::fd, SchemeKind::galerkin1, SchemeKind::galerkin2}) {
    const ReferenceRun& ref = reference_run(kind);
    const double drift = max_h1_drift(ref.traj);
    expect(drift <= 1e-8, std::string(scheme_name(kind)) + " H1 drift " +
                              format_full(drift) + " exceeds 1e-8");
    expect(ref.seconds < 60.0, std::string(scheme_name(kind)) + " run took " +
                                   format_full(ref.seconds) + " s");
    detail += std::string(scheme_name(kind)) + " drift " + format_full(drift) +
              " (" + format_full(ref.seconds) + " s) ";
  }
  return detail;
}

std::string criterion_conservation_identities() {
  std::mt19937 rng(101);
  double worst1 = 0.0, worst2 = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 8 + static_cast<int>(rng() % 57);
    const Mesh mesh = random_mesh(rng, 6.0, n);
    const CoeffVector u = random_coeffs(rng, Space::X1, mesh, 2.0);
    const CoeffVector q = random_coeffs(rng, Space::X2, mesh, 2.0);

    const double bound = 1e-12 * norm2(u.values) * norm2(q.values);
    const double id1 = std::abs(dot(u.values, eval_g1(u, q)));
    const double id2 = std::abs(dot(q.values, eval_g2(u, q)));
    expect(id1 <= bound, "u.g1(u,q) = " + format_full(id1) + " on N=" +
                             std::to_string(n));
    expect(id2 <= bound, "r.g2(u,r) = " + format_full(id2) + " on N=" +
                             std::to_string(n));
    worst1 = std::max(worst1, id1 / bound);
    worst2 = std::max(worst2, id2 / bound);
  }
  return "worst |u.g1|/bound " + format_full(worst1) + ", worst |r.g2|/bound " +
         format_full(worst2);
}

std::string criterion_d_matrix() {
  const BandedMatrix d7 = assemble_D(Mesh::uniform(6.0, 7));
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      const double expected = i == j ? 0.5 : (i - j == 2 ? -0.5 : 0.0);
      expect(d7.at(i, j) == expected,
             "D(N=7) differs from the lower-triangular +-1/2 pattern at (" +
                 std::to_string(i) + "," + std::to_string(j) + ")");
    }

  std::mt19937 rng(102);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 77);
    const BandedMatrix dr = assemble_D(random_mesh(rng, 6.0, n));
    const BandedMatrix du = assemble_D(Mesh::uniform(6.0, n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        expect(std::abs(dr.at(i, j) - du.at(i, j)) <= 1e-14,
               "non-uniform D deviates at N=" + std::to_string(n));
  }
  return "golden N=7 exact; 100 random meshes spacing-free";
}

std::string criterion_euler_contrast() {
  const ReferenceRun& imp = reference_run(SchemeKind::euler_implicit);
  expect(imp.traj.n_steps() == 100, "implicit run incomplete");
  double prev = imp.traj.initial.h1;
  for (const StepRecord& r : imp.traj.steps) {
    expect(r.h1 < prev, "implicit Euler H1 not decreasing at step " +
                            std::to_string(r.step));
    prev = r.h1;
  }

  const ReferenceRun& exp = reference_run(SchemeKind::euler_explicit);
  double first_exceed = -1.0;
  for (const StepRecord& r : exp.traj.steps)
    if (r.h1 > exp.traj.initial.h1) {
      first_exceed = r.t;
      break;
    }
  expect(first_exceed >= 0.0 && first_exceed < 1.0,
         "explicit Euler H1 never exceeded its initial value before t=1");
  return "implicit H1 " + format_full(imp.traj.initial.h1) + " -> " +
         format_full(imp.traj.steps.back().h1) + "; explicit exceeds at t=" +
         format_full(first_exceed);
}

std::string criterion_exact_oracle() {
  const ExactSolution exact(6.0);
  for (const double t : {0.0, 0.5, 1.0, 2.0}) {
    const auto inv = exact.invariants(t);
    expect(std::abs(inv.h1 - 0.5) <= 1e-12,
           "H1(t=" + format_full(t) + ") = " + format_full(inv.h1));
    expect(std::abs(inv.h2 - 0.25 * (0.5 * t + 1.0)) <= 1e-12,
           "H2(t=" + format_full(t) + ") = " + format_full(inv.h2));
  }
  const double dt = 1e-4;
  for (const double t : {0.5, 1.0, 2.0}) {
    const double slope =
        (exact.invariants(t + dt).h2 - exact.invariants(t - dt).h2) /
        (2.0 * dt);
    expect(std::abs(slope - 0.125) <= 1e-10,
           "dH2/dt at t=" + format_full(t) + " is " + format_full(slope));
  }
  return "H1 = 1/2, H2(t) = (0.5t+1)/4, dH2/dt = 1/8";
}

std::string criterion_error_refinement() {
  std::vector<double> errors;
  std::string detail = "L_inf(t=1):";
  for (const int n : {50, 100, 200, 400}) {
    const ReferenceRun& ref = reference_run(SchemeKind::galerkin1, n);
    const auto& linf = ref.traj.steps.back().linf;
    expect(linf.has_value(), "error tracking missing at N=" + std::to_string(n));
    errors.push_back(*linf);
    detail += " N=" + std::to_string(n) + ": " + format_full(*linf);
  }
  for (std::size_t i = 1; i < errors.size(); ++i)
    expect(errors[i] < errors[i - 1],
           "L_inf error did not decrease between refinements " +
               std::to_string(i - 1) + " and " + std::to_string(i));
  // recorded regression baseline for the finest run
  expect(errors.back() < 0.05, "N=400 error " + format_full(errors.back()) +
                                   " above the recorded baseline band");
  return detail;
}

std::string criterion_graded_mesh() {
  const ReferenceRun& uniform = reference_run(SchemeKind::galerkin1, 200);
  const Mesh graded = Mesh::graded(6.0, 200, 0.0, 3.0, 0.75);
  const Trajectory gtraj =
      run(reference_config(SchemeKind::galerkin1), graded, exact_initial(6.0),
          true);
  const double ge = *gtraj.steps.back().linf;
  const double ue = *uniform.traj.steps.back().linf;
  expect(ge < ue, "graded error " + format_full(ge) +
                      " not below uniform error " + format_full(ue));
  return "graded " + format_full(ge) + " < uniform " + format_full(ue);
}

// The u_x profile each scheme plots: the piecewise-constant derivative of
// the P1 solution for the Galerkin schemes (the auxiliary q of Scheme 1
// approximates u_xx, not u_x), ghost-rule central differences for fd.
std::string criterion_oscillation_ordering() {
  const Mesh mesh = Mesh::uniform(6.0, 200);
  std::map<SchemeKind, double> tv;
  for (const SchemeKind kind : {SchemeKind::galerkin1, SchemeKind::galerkin2}) {
    const ReferenceRun& ref = reference_run(kind);
    const CoeffVector u{Space::X1, ref.traj.steps.back().values, &mesh};
    std::vector<double> slopes(200);
    for (int k = 0; k < 200; ++k) slopes[k] = u.element_slope(k);
    tv[kind] = total_variation(slopes);
  }
  {
    const ReferenceRun& ref = reference_run(SchemeKind::fd);
    tv[SchemeKind::fd] = total_variation(recovered_derivative(
        reference_config(SchemeKind::fd), mesh, ref.traj.steps.back()));
  }
  expect(tv[SchemeKind::galerkin1] < tv[SchemeKind::galerkin2],
         "TV(g1) >= TV(g2)");
  expect(tv[SchemeKind::galerkin1] < tv[SchemeKind::fd], "TV(g1) >= TV(fd)");
  return "TV g1 " + format_full(tv[SchemeKind::galerkin1]) + " < g2 " +
         format_full(tv[SchemeKind::galerkin2]) + ", fd " +
         format_full(tv[SchemeKind::fd]);
}

std::string criterion_oracle_equivalence() {
  std::mt19937 rng(103);
  std::uniform_real_distribution<double> dist(-0.2, 0.2);
  const Mesh mesh = Mesh::uniform(6.0, 6);
  double worst = 0.0;

  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> coeffs(6);
    for (double& v : coeffs) v = dist(rng);

    for (const SchemeKind kind :
         {SchemeKind::galerkin1, SchemeKind::galerkin2,
          SchemeKind::euler_implicit, SchemeKind::euler_explicit}) {
      const GalerkinStepper stepper(mesh, kind, 0.01);
      const CoeffVector u{Space::X1, coeffs, &mesh};
      const CoeffVector next = stepper.step(u);
      const auto residual = [&](const std::vector<double>& v) {
        std::vector<double> out;
        stepper.residual(coeffs, v, out);
        return out;
      };
      const std::vector<double> oracle = dense_newton(residual, coeffs);
      for (int i = 0; i < 6; ++i) {
        const double dev = std::abs(next.values[i] - oracle[i]);
        worst = std::max(worst, dev);
        expect(dev <= 1e-10, std::string(scheme_name(kind)) +
                                 " deviates from the dense solve by " +
                                 format_full(dev));
      }
    }

    std::vector<double> grid(7);
    grid[0] = 0.0;
    for (int k = 1; k <= 6; ++k) grid[k] = dist(rng);
    const FdState state(grid, 2.0, 0.01);
    const FdState next = fd_step(state);
    const auto residual = [&](const std::vector<double>& v) {
      std::vector<double> out(6);
      fd_residual(state, v, out);
      return out;
    };
    const std::vector<double> oracle = dense_newton(
        residual, std::vector<double>(grid.begin() + 1, grid.end()));
    for (int k = 1; k <= 6; ++k) {
      const double dev = std::abs(next.values[k] - oracle[k - 1]);
      worst = std::max(worst, dev);
      expect(dev <= 1e-10,
             "fd deviates from the dense solve by " + format_full(dev));
    }
  }
  return "worst deviation " + format_full(worst);
}

std::string criterion_time_symmetry() {
  const Mesh mesh = Mesh::uniform(6.0, 200);
  const ExactSolution exact(6.0);
  double worst = 0.0;

  for (const SchemeKind kind : {SchemeKind::galerkin1, SchemeKind::galerkin2}) {
    const CoeffVector u0 =
        interpolate([&](double x) { return exact.u(x, 0.0); }, mesh, Space::X1);
    const GalerkinStepper forward(mesh, kind, 0.01);
    const GalerkinStepper backward(mesh, kind, -0.01);
    const CoeffVector back = backward.step(forward.step(u0));
    for (int i = 0; i < u0.size(); ++i) {
      const double dev = std::abs(back.values[i] - u0.values[i]);
      worst = std::max(worst, dev);
      expect(dev <= 1e-9, std::string(scheme_name(kind)) +
                              " round trip deviates by " + format_full(dev));
    }
  }

  const double dx = 0.06;
  std::vector<double> grid(201);
  for (int k = 0; k <= 200; ++k) grid[k] = exact.u(-6.0 + k * dx, 0.0);
  grid[0] = 0.0;
  const FdState f0(grid, dx, 0.01);
  FdState f1 = fd_step(f0);
  f1.dt = -0.01;
  const FdState f2 = fd_step(f1);
  for (int k = 0; k <= 200; ++k) {
    const double dev = std::abs(f2.values[k] - f0.values[k]);
    worst = std::max(worst, dev);
    expect(dev <= 1e-9, "fd round trip deviates by " + format_full(dev));
  }
  return "worst round-trip deviation " + format_full(worst);
}

}  // namespace

int main() {
  Harness h;
  h.check(1, "energy preservation on the reference setup",
          criterion_energy_preservation);
  h.check(2, "conservation identities as algebra",
          criterion_conservation_identities);
  h.check(3, "D-matrix golden test", criterion_d_matrix);
  h.check(4, "Euler contrast", criterion_euler_contrast);
  h.check(5, "exact-solution oracle", criterion_exact_oracle);
  h.check(6, "error decreases under refinement", criterion_error_refinement);
  h.check(7, "graded mesh beats uniform", criterion_graded_mesh);
  h.check(8, "derivative oscillation ordering", criterion_oscillation_ordering);
  h.check(9, "oracle equivalence of all steppers", criterion_oracle_equivalence);
  h.check(10, "time symmetry of the midpoint schemes", criterion_time_symmetry);

  if (h.failures == 0)
    std::printf("acceptance: all 10 criteria passed\n");
  else
    std::printf("acceptance: %d criteria FAILED\n", h.failures);
  return h.failures;
}
