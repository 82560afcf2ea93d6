#include "hs/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "hs/errors.hpp"
#include "hs/reference.hpp"
#include "hs/util.hpp"

namespace hs::cli {

namespace {

double parse_double(const std::string& text, const char* what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw ParamError(std::string("cannot parse ") + what + " '" + text + "'");
  return v;
}

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish_csv(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failure on " + path.string());
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " +
                        ec.message());
}

std::string cell(const std::optional<double>& v) {
  return v ? format_full(*v) : std::string();
}

// Slope of the element left of node k (element 0 for the first node).
double element_slope_at_node(const std::vector<double>& nodal,
                             const Mesh& mesh, int k) {
  const int e = std::max(0, std::min(k - 1, mesh.n_elements() - 1));
  return (nodal[static_cast<std::size_t>(e + 1)] -
          nodal[static_cast<std::size_t>(e)]) /
         mesh.h(e);
}

std::vector<double> record_nodal_values(const SchemeConfig& config,
                                        const Mesh& mesh,
                                        const StepRecord& record) {
  if (config.kind == SchemeKind::fd) return record.values;
  return nodal_values(CoeffVector{Space::X1, record.values, &mesh});
}

Trajectory run_from_exact(const SchemeConfig& config, const Mesh& mesh) {
  if (mesh.half_width() <= 1.0)
    throw ParamError("reference initial data needs L > 1 "
                     "(the validity horizon 2(sqrt(L)-1) must be positive)");
  const ExactSolution exact(mesh.half_width());
  return run(config, mesh, [&](double x) { return exact.u(x, 0.0); }, true);
}

void warn_horizon(const SchemeConfig& config, const Mesh& mesh) {
  const double horizon = 2.0 * (std::sqrt(mesh.half_width()) - 1.0);
  if (config.t_end >= horizon)
    std::cerr << "warning: t_end " << format_full(config.t_end)
              << " reaches the exact solution's validity horizon "
              << format_full(horizon)
              << "; exact-solution columns are left empty from there on\n";
}

}  // namespace

MeshSpec parse_mesh_spec(const std::string& text) {
  MeshSpec spec;
  if (text == "uniform") {
    spec.kind = MeshSpec::Kind::uniform;
    return spec;
  }
  if (text.rfind("graded:", 0) == 0) {
    spec.kind = MeshSpec::Kind::graded;
    const std::string rest = text.substr(7);
    std::stringstream ss(rest);
    std::string lo, hi, frac;
    if (!std::getline(ss, lo, ',') || !std::getline(ss, hi, ',') ||
        !std::getline(ss, frac) || ss.rdbuf()->in_avail() != 0)
      throw ParamError("graded mesh spec must be graded:<lo>,<hi>,<fraction>, got '" +
                       text + "'");
    spec.focus_lo = parse_double(lo, "focus lower bound");
    spec.focus_hi = parse_double(hi, "focus upper bound");
    spec.fraction = parse_double(frac, "fraction");
    return spec;
  }
  if (text.rfind("file:", 0) == 0) {
    spec.kind = MeshSpec::Kind::file;
    spec.path = text.substr(5);
    if (spec.path.empty()) throw ParamError("file mesh spec has an empty path");
    return spec;
  }
  throw ParamError("unknown mesh spec '" + text +
                   "' (expected uniform, graded:<lo>,<hi>,<frac> or file:<path>)");
}

SchemeConfig RunSpec::scheme_config() const {
  SchemeConfig config;
  config.kind = scheme;
  config.dt = dt;
  config.t_end = t_end;
  config.newton_tol = newton_tol;
  config.newton_max_iter = newton_max_iter;
  return config;
}

Mesh build_mesh(const RunSpec& spec) {
  Mesh mesh = [&] {
    switch (spec.mesh.kind) {
      case MeshSpec::Kind::uniform:
        return Mesh::uniform(spec.half_width, spec.n);
      case MeshSpec::Kind::graded:
        return Mesh::graded(spec.half_width, spec.n, spec.mesh.focus_lo,
                            spec.mesh.focus_hi, spec.mesh.fraction);
      case MeshSpec::Kind::file:
        return Mesh::load(spec.mesh.path);
    }
    throw ParamError("invalid mesh spec");
  }();
  if (spec.scheme == SchemeKind::fd && !mesh.is_uniform())
    throw ParamError("the finite difference scheme requires a uniform mesh");
  return mesh;
}

void cmd_run(const RunSpec& spec) {
  const SchemeConfig config = spec.scheme_config();
  config.validate();
  const Mesh mesh = build_mesh(spec);
  warn_horizon(config, mesh);

  const Trajectory traj = run_from_exact(config, mesh);

  ensure_dir(spec.out_dir);
  if (spec.emit_timeseries) {
    const auto path = spec.out_dir / "timeseries.csv";
    auto out = open_csv(path);
    out << "n,t,H1,H2,linf_error,newton_iters\n";
    for (const StepRecord& r : traj.steps)
      out << r.step << ',' << format_full(r.t) << ',' << format_full(r.h1)
          << ',' << format_full(r.h2) << ',' << cell(r.linf) << ','
          << r.newton_iters << '\n';
    finish_csv(out, path);
  }

  if (spec.emit_profile) {
    const StepRecord& last = traj.steps.back();
    const std::vector<double> nodal = record_nodal_values(config, mesh, last);
    const std::vector<double> recovered =
        recovered_derivative(config, mesh, last);
    const ExactSolution exact(mesh.half_width());
    const bool in_horizon = last.t < exact.horizon();

    const auto path = spec.out_dir / "profile.csv";
    auto out = open_csv(path);
    out << "x,u,ux_element,ux_recovered,u_exact,ux_exact\n";
    for (int k = 0; k < mesh.n_nodes(); ++k) {
      const double x = mesh.node(k);
      out << format_full(x) << ',' << format_full(nodal[static_cast<std::size_t>(k)])
          << ',' << format_full(element_slope_at_node(nodal, mesh, k)) << ','
          << format_full(recovered[static_cast<std::size_t>(k)]) << ',';
      if (in_horizon)
        out << format_full(exact.u(x, last.t)) << ','
            << format_full(exact.ux(x, last.t));
      else
        out << ',';
      out << '\n';
    }
    finish_csv(out, path);
  }

  if (spec.emit_mesh) mesh.save(spec.out_dir / "mesh.txt");
}

void cmd_convergence(const ConvergenceSpec& spec) {
  if (spec.n_values.size() < 2)
    throw ParamError("convergence study needs at least 2 resolutions");

  struct Row {
    int n;
    double dx;
    std::optional<double> linf;
    double drift;
  };
  std::vector<Row> rows;
  for (const int n : spec.n_values) {
    SchemeConfig config;
    config.kind = spec.scheme;
    config.dt = spec.dt;
    config.t_end = spec.t_end;
    config.newton_tol = spec.newton_tol;
    config.newton_max_iter = spec.newton_max_iter;
    config.validate();
    const Mesh mesh = Mesh::uniform(spec.half_width, n);
    try {
      const Trajectory traj = run_from_exact(config, mesh);
      rows.push_back(Row{n, 2.0 * spec.half_width / n,
                         traj.steps.back().linf, max_h1_drift(traj)});
    } catch (const SolveError& e) {
      throw SolveError("N=" + std::to_string(n) + ": " + e.what(),
                       e.iterations, e.residual, e.step);
    }
  }

  ensure_dir(spec.out_dir);
  const auto path = spec.out_dir / "convergence.csv";
  auto out = open_csv(path);
  out << "N,dx,linf_error_at_t_end,H1_drift\n";
  for (const Row& r : rows)
    out << r.n << ',' << format_full(r.dx) << ',' << cell(r.linf) << ','
        << format_full(r.drift) << '\n';
  finish_csv(out, path);
}

void cmd_compare(const std::vector<RunSpec>& specs,
                 const std::filesystem::path& out_dir) {
  if (specs.size() < 2)
    throw ParamError("compare needs at least 2 run specs");
  for (const RunSpec& s : specs) {
    if (s.t_end != specs.front().t_end || s.dt != specs.front().dt)
      throw ParamError("compare requires all runs to share dt and t_end");
  }

  // column tags: scheme token, disambiguated by position when repeated
  std::map<std::string, int> seen;
  for (const RunSpec& s : specs) ++seen[scheme_name(s.scheme)];
  std::map<std::string, int> used;
  std::vector<std::string> tags;
  for (const RunSpec& s : specs) {
    std::string tag = scheme_name(s.scheme);
    if (seen[tag] > 1) tag += "_" + std::to_string(++used[tag]);
    for (char& ch : tag)
      if (ch == '-') ch = '_';
    tags.push_back(tag);
  }

  std::vector<Trajectory> trajs;
  for (const RunSpec& s : specs) {
    const SchemeConfig config = s.scheme_config();
    config.validate();
    const Mesh mesh = build_mesh(s);
    warn_horizon(config, mesh);
    trajs.push_back(run_from_exact(config, mesh));
  }

  ensure_dir(out_dir);
  const auto path = out_dir / "compare.csv";
  auto out = open_csv(path);
  out << "n,t";
  for (const std::string& tag : tags)
    out << ",H1_" << tag << ",H2_" << tag << ",linf_" << tag;
  out << '\n';
  const int n_steps = trajs.front().n_steps();
  for (int n = 0; n < n_steps; ++n) {
    const std::size_t i = static_cast<std::size_t>(n);
    out << trajs.front().steps[i].step << ','
        << format_full(trajs.front().steps[i].t);
    for (const Trajectory& traj : trajs) {
      const StepRecord& r = traj.steps[i];
      out << ',' << format_full(r.h1) << ',' << format_full(r.h2) << ','
          << cell(r.linf);
    }
    out << '\n';
  }
  finish_csv(out, path);
}

void cmd_mesh(const MeshSpec& spec, double half_width, int n,
              const std::filesystem::path& path) {
  Mesh mesh = [&] {
    switch (spec.kind) {
      case MeshSpec::Kind::uniform:
        return Mesh::uniform(half_width, n);
      case MeshSpec::Kind::graded:
        return Mesh::graded(half_width, n, spec.focus_lo, spec.focus_hi,
                            spec.fraction);
      case MeshSpec::Kind::file:
        throw ParamError("mesh generation needs kind uniform or graded");
    }
    throw ParamError("invalid mesh spec");
  }();
  if (path.has_parent_path()) ensure_dir(path.parent_path());
  mesh.save(path);
}

namespace {

const std::map<std::string, SchemeKind>& scheme_map() {
  static const std::map<std::string, SchemeKind> m{
      {"fd", SchemeKind::fd},
      {"g1", SchemeKind::galerkin1},
      {"g2", SchemeKind::galerkin2},
      {"euler-exp", SchemeKind::euler_explicit},
      {"euler-imp", SchemeKind::euler_implicit},
  };
  return m;
}

void add_newton_flags(CLI::App* cmd, double& tol, int& max_iter) {
  cmd->add_option("--newton-tol", tol, "Newton residual tolerance (inf-norm)");
  cmd->add_option("--newton-max-iter", max_iter, "Newton iteration cap");
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Energy-preserving solvers for the Hunter-Saxton equation"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "Integrate one scheme and write CSVs");
  RunSpec rs;
  std::string rs_mesh = "uniform";
  run_cmd->add_option("--scheme", rs.scheme, "Scheme")
      ->required()
      ->transform(CLI::CheckedTransformer(scheme_map(), CLI::ignore_case));
  run_cmd->add_option("--L", rs.half_width, "Domain half-width");
  run_cmd->add_option("--N", rs.n, "Number of elements");
  run_cmd->add_option("--dt", rs.dt, "Time step");
  run_cmd->add_option("--t-end", rs.t_end, "Final time");
  run_cmd->add_option("--mesh", rs_mesh,
                      "uniform | graded:<lo>,<hi>,<frac> | file:<path>");
  run_cmd->add_option("--out", rs.out_dir, "Output directory");
  run_cmd->add_flag("--emit-mesh", rs.emit_mesh, "Also write mesh.txt");
  bool no_profile = false, no_timeseries = false;
  run_cmd->add_flag("--no-profile", no_profile, "Skip profile.csv");
  run_cmd->add_flag("--no-timeseries", no_timeseries, "Skip timeseries.csv");
  add_newton_flags(run_cmd, rs.newton_tol, rs.newton_max_iter);

  // convergence
  auto* conv_cmd =
      app.add_subcommand("convergence", "Uniform-mesh refinement study");
  ConvergenceSpec cs;
  conv_cmd->add_option("--scheme", cs.scheme, "Scheme")
      ->required()
      ->transform(CLI::CheckedTransformer(scheme_map(), CLI::ignore_case));
  conv_cmd->add_option("--L", cs.half_width, "Domain half-width");
  conv_cmd->add_option("--dt", cs.dt, "Time step");
  conv_cmd->add_option("--t-end", cs.t_end, "Final time");
  conv_cmd->add_option("--N", cs.n_values, "Element counts (at least 2)")
      ->required()
      ->expected(-2);
  conv_cmd->add_option("--out", cs.out_dir, "Output directory");
  add_newton_flags(conv_cmd, cs.newton_tol, cs.newton_max_iter);

  // compare
  auto* cmp_cmd =
      app.add_subcommand("compare", "Side-by-side time series of several schemes");
  std::vector<SchemeKind> cmp_schemes;
  RunSpec cmp_base;
  std::string cmp_mesh = "uniform";
  cmp_cmd->add_option("--schemes", cmp_schemes, "Schemes to compare")
      ->required()
      ->expected(-2)
      ->transform(CLI::CheckedTransformer(scheme_map(), CLI::ignore_case));
  cmp_cmd->add_option("--L", cmp_base.half_width, "Domain half-width");
  cmp_cmd->add_option("--N", cmp_base.n, "Number of elements");
  cmp_cmd->add_option("--dt", cmp_base.dt, "Time step");
  cmp_cmd->add_option("--t-end", cmp_base.t_end, "Final time");
  cmp_cmd->add_option("--mesh", cmp_mesh,
                      "uniform | graded:<lo>,<hi>,<frac> | file:<path>");
  cmp_cmd->add_option("--out", cmp_base.out_dir, "Output directory");
  add_newton_flags(cmp_cmd, cmp_base.newton_tol, cmp_base.newton_max_iter);

  // mesh
  auto* mesh_cmd = app.add_subcommand("mesh", "Generate a mesh file");
  std::string mesh_kind = "uniform";
  double mesh_L = 6.0;
  int mesh_N = 200;
  std::pair<double, double> mesh_focus{0.0, 3.0};
  double mesh_fraction = 0.75;
  std::filesystem::path mesh_out = "mesh.txt";
  mesh_cmd->add_option("--kind", mesh_kind, "uniform | graded")
      ->check(CLI::IsMember({"uniform", "graded"}));
  mesh_cmd->add_option("--L", mesh_L, "Domain half-width");
  mesh_cmd->add_option("--N", mesh_N, "Number of elements");
  mesh_cmd->add_option("--focus", mesh_focus, "Focus interval (graded)");
  mesh_cmd->add_option("--fraction", mesh_fraction,
                       "Fraction of elements inside the focus interval");
  mesh_cmd->add_option("--out-file", mesh_out, "Destination path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run_cmd->parsed()) {
      rs.mesh = parse_mesh_spec(rs_mesh);
      rs.emit_profile = !no_profile;
      rs.emit_timeseries = !no_timeseries;
      cmd_run(rs);
    } else if (conv_cmd->parsed()) {
      cmd_convergence(cs);
    } else if (cmp_cmd->parsed()) {
      std::vector<RunSpec> specs;
      for (const SchemeKind kind : cmp_schemes) {
        RunSpec s = cmp_base;
        s.scheme = kind;
        s.mesh = parse_mesh_spec(cmp_mesh);
        specs.push_back(std::move(s));
      }
      cmd_compare(specs, cmp_base.out_dir);
    } else if (mesh_cmd->parsed()) {
      MeshSpec spec;
      if (mesh_kind == "uniform") {
        spec.kind = MeshSpec::Kind::uniform;
      } else {
        spec.kind = MeshSpec::Kind::graded;
        spec.focus_lo = mesh_focus.first;
        spec.focus_hi = mesh_focus.second;
        spec.fraction = mesh_fraction;
      }
      cmd_mesh(spec, mesh_L, mesh_N, mesh_out);
    }
  } catch (const SolveError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return 3;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace hs::cli
