#ifndef HS_MESH_HPP
#define HS_MESH_HPP

#include <filesystem>
#include <vector>

namespace hs {

// 1D mesh of the symmetric interval [-L, L]: strictly increasing nodes
// x_0 = -L < x_1 < ... < x_N = L with N >= 3 elements. Immutable after
// construction; safe to share between threads.
class Mesh {
 public:
  // Uniform mesh with N elements of length 2L/N.
  static Mesh uniform(double half_width, int n_elements);

  // Two-density mesh: ceil(fraction*N) elements uniformly inside
  // [focus_lo, focus_hi] (a strict subset of (-L, L)), the rest split over
  // the complement proportionally to the gap lengths. Each gap keeps the
  // focus spacing for a few elements at its interface and then coarsens
  // geometrically toward the boundary, so element sizes never jump at the
  // focus bounds.
  static Mesh graded(double half_width, int n_elements, double focus_lo,
                     double focus_hi, double fraction);

  // Validates all invariants (monotone, symmetric endpoints, N >= 3).
  static Mesh from_nodes(std::vector<double> nodes);

  // Plain-text mesh file, one coordinate per line, strictly ascending,
  // first line -L, last line L.
  static Mesh load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  double half_width() const { return half_width_; }
  int n_elements() const { return static_cast<int>(nodes_.size()) - 1; }
  int n_nodes() const { return static_cast<int>(nodes_.size()); }
  double node(int k) const { return nodes_[static_cast<std::size_t>(k)]; }
  double h(int k) const {
    return nodes_[static_cast<std::size_t>(k) + 1] -
           nodes_[static_cast<std::size_t>(k)];
  }
  const std::vector<double>& nodes() const { return nodes_; }

  // All element lengths equal to within rel_tol of their mean.
  bool is_uniform(double rel_tol = 1e-12) const;

  bool operator==(const Mesh& other) const { return nodes_ == other.nodes_; }

 private:
  explicit Mesh(std::vector<double> nodes);

  std::vector<double> nodes_;
  double half_width_;
};

}  // namespace hs

#endif
