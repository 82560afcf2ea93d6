#ifndef HS_CLI_HPP
#define HS_CLI_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "hs/mesh.hpp"
#include "hs/schemes.hpp"

namespace hs::cli {

struct MeshSpec {
  enum class Kind { uniform, graded, file };
  Kind kind = Kind::uniform;
  double focus_lo = 0.0;
  double focus_hi = 0.0;
  double fraction = 0.0;
  std::filesystem::path path;
};

// "uniform" | "graded:<lo>,<hi>,<fraction>" | "file:<path>"
MeshSpec parse_mesh_spec(const std::string& text);

struct RunSpec {
  SchemeKind scheme = SchemeKind::galerkin1;
  double half_width = 6.0;
  int n = 200;  // ignored for file meshes
  double dt = 0.01;
  double t_end = 1.0;
  MeshSpec mesh;
  std::filesystem::path out_dir = "out";
  bool emit_profile = true;
  bool emit_timeseries = true;
  bool emit_mesh = false;
  double newton_tol = 1e-12;
  int newton_max_iter = 50;

  SchemeConfig scheme_config() const;
};

// Build the mesh named by the spec and check scheme preconditions
// (fd requires a uniform mesh) before any computation.
Mesh build_mesh(const RunSpec& spec);

// Integrate from the exact initial data and write
//   <out>/profile.csv     x,u,ux_element,ux_recovered,u_exact,ux_exact
//   <out>/timeseries.csv  n,t,H1,H2,linf_error,newton_iters
// plus <out>/mesh.txt when requested. Exact columns are left empty for
// times beyond the validity horizon (a warning goes to stderr).
void cmd_run(const RunSpec& spec);

struct ConvergenceSpec {
  SchemeKind scheme = SchemeKind::galerkin1;
  double half_width = 6.0;
  double dt = 0.01;
  double t_end = 1.0;
  std::vector<int> n_values;
  std::filesystem::path out_dir = "out";
  double newton_tol = 1e-12;
  int newton_max_iter = 50;
};

// Uniform-mesh refinement study: <out>/convergence.csv with one row per N:
// N,dx,linf_error_at_t_end,H1_drift.
void cmd_convergence(const ConvergenceSpec& spec);

// Side-by-side time series of >= 2 runs sharing dt and t_end:
// <out>/compare.csv with columns n,t then H1/H2/linf per scheme.
void cmd_compare(const std::vector<RunSpec>& specs,
                 const std::filesystem::path& out_dir);

// Generate a mesh file at `path` (uniform or graded).
void cmd_mesh(const MeshSpec& spec, double half_width, int n,
              const std::filesystem::path& path);

// Parse argv, dispatch, and map errors to exit codes:
// 0 success, 2 spec error, 3 solver failure, 4 I/O error.
int run_cli(int argc, const char* const* argv);

}  // namespace hs::cli

#endif
