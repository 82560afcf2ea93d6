#include "hs/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

#include "hs/errors.hpp"
#include "hs/util.hpp"

namespace hs {

namespace {

// j-th node of a uniform subdivision of [a, b] into n parts; endpoints exact.
double lerp_node(double a, double b, int j, int n) {
  if (j == 0) return a;
  if (j == n) return b;
  return (a * (n - j) + b * j) / n;
}

// Element sizes for a gap of length `len` next to a region of spacing
// `h_ref`, ordered from the shared interface outward: a few elements stay at
// h_ref, the rest grow geometrically to fill the gap. Keeping the spacing
// locally uniform at the interface matters: the energy-preserving Galerkin
// scheme loses accuracy when an abrupt size change sits on a kink of the
// solution, and the focus bounds are exactly where kinks live.
std::vector<double> gap_element_sizes(double len, int n, double h_ref) {
  std::vector<double> sizes;
  sizes.reserve(static_cast<std::size_t>(n));
  if (n * h_ref >= len) {
    // gap budget finer than the focus region: plain uniform gap
    for (int j = 0; j < n; ++j) sizes.push_back(len / n);
    return sizes;
  }
  const int uniform_count = std::min(4, n - 1);
  const int m = n - uniform_count;
  const double remainder = len - uniform_count * h_ref;

  // solve h_ref * sum_{j=1..m} r^j = remainder for the growth ratio r >= 1
  const auto filled = [&](double r) {
    double sum = 0.0, hj = h_ref;
    for (int j = 0; j < m; ++j) {
      hj *= r;
      sum += hj;
    }
    return sum;
  };
  double lo = 1.0, hi = 2.0;
  while (filled(hi) < remainder) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (filled(mid) < remainder ? lo : hi) = mid;
  }
  const double ratio = 0.5 * (lo + hi);

  for (int j = 0; j < uniform_count; ++j) sizes.push_back(h_ref);
  double hj = h_ref;
  for (int j = 0; j < m; ++j) {
    hj *= ratio;
    sizes.push_back(hj);
  }
  double total = 0.0;
  for (double s : sizes) total += s;
  for (double& s : sizes) s *= len / total;
  return sizes;
}

}  // namespace

Mesh::Mesh(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 4)
    throw ParamError("mesh needs at least 3 elements (4 nodes), got " +
                     std::to_string(nodes_.size()) + " nodes");
  for (std::size_t k = 0; k + 1 < nodes_.size(); ++k) {
    if (!(nodes_[k] < nodes_[k + 1]))
      throw ParamError("mesh nodes not strictly increasing at index " +
                       std::to_string(k + 1));
  }
  if (!(nodes_.back() > 0.0) || nodes_.front() != -nodes_.back())
    throw ParamError("mesh endpoints must be -L and L with L > 0, got [" +
                     format_full(nodes_.front()) + ", " +
                     format_full(nodes_.back()) + "]");
  half_width_ = nodes_.back();
}

Mesh Mesh::uniform(double half_width, int n_elements) {
  if (!(half_width > 0.0))
    throw ParamError("half-width L must be positive, got " +
                     format_full(half_width));
  if (n_elements < 3)
    throw ParamError("uniform mesh needs N >= 3, got " +
                     std::to_string(n_elements));
  std::vector<double> nodes(static_cast<std::size_t>(n_elements) + 1);
  for (int k = 0; k <= n_elements; ++k)
    nodes[static_cast<std::size_t>(k)] =
        lerp_node(-half_width, half_width, k, n_elements);
  return Mesh(std::move(nodes));
}

Mesh Mesh::graded(double half_width, int n_elements, double focus_lo,
                  double focus_hi, double fraction) {
  if (!(half_width > 0.0))
    throw ParamError("half-width L must be positive");
  if (n_elements < 3) throw ParamError("graded mesh needs N >= 3");
  if (!(focus_lo < focus_hi) || !(focus_lo > -half_width) ||
      !(focus_hi < half_width))
    throw ParamError("focus interval must be a nonempty strict subset of (-L, L)");
  if (!(fraction > 0.0 && fraction < 1.0))
    throw ParamError("fraction must lie in (0, 1)");
  if (fraction * n_elements < 2.0 || (1.0 - fraction) * n_elements < 2.0)
    throw ParamError("graded mesh needs at least 2 elements on each side of the split");

  const int n_in = static_cast<int>(std::ceil(fraction * n_elements - 1e-12));
  const int n_out = n_elements - n_in;
  const double left_len = focus_lo + half_width;
  const double right_len = half_width - focus_hi;
  int n_left = static_cast<int>(
      std::lround(n_out * left_len / (left_len + right_len)));
  n_left = std::clamp(n_left, 1, n_out - 1);
  const int n_right = n_out - n_left;
  const double h_in = (focus_hi - focus_lo) / n_in;

  std::vector<double> nodes;
  nodes.reserve(static_cast<std::size_t>(n_elements) + 1);

  // left gap, sizes ordered from the focus interface toward -L
  const std::vector<double> left_sizes =
      gap_element_sizes(left_len, n_left, h_in);
  nodes.push_back(-half_width);
  for (int j = n_left - 1; j >= 1; --j) {
    double x = focus_lo;
    for (int i = 0; i < j; ++i) x -= left_sizes[static_cast<std::size_t>(i)];
    nodes.push_back(x);
  }
  for (int j = 0; j < n_in; ++j)
    nodes.push_back(lerp_node(focus_lo, focus_hi, j, n_in));
  nodes.push_back(focus_hi);
  const std::vector<double> right_sizes =
      gap_element_sizes(right_len, n_right, h_in);
  double x = focus_hi;
  for (int j = 0; j + 1 < n_right; ++j) {
    x += right_sizes[static_cast<std::size_t>(j)];
    nodes.push_back(x);
  }
  nodes.push_back(half_width);
  return Mesh(std::move(nodes));
}

Mesh Mesh::from_nodes(std::vector<double> nodes) { return Mesh(std::move(nodes)); }

Mesh Mesh::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mesh file " + path.string());

  std::vector<double> nodes;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": empty line in mesh file");
    const auto end = line.find_last_not_of(" \t\r");
    double value = 0.0;
    const char* first = line.data() + begin;
    const char* last = line.data() + end + 1;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": cannot parse coordinate '" +
                        line.substr(begin, end - begin + 1) + "'");
    if (!nodes.empty() && !(value > nodes.back()))
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": nodes not strictly increasing");
    nodes.push_back(value);
  }
  if (in.bad()) throw IoError("read failure on mesh file " + path.string());
  if (nodes.size() < 4)
    throw FormatError(path.string() + ": mesh file needs at least 4 nodes, got " +
                      std::to_string(nodes.size()));
  if (!(nodes.back() > 0.0) || nodes.front() != -nodes.back())
    throw FormatError(path.string() + ":" + std::to_string(nodes.size()) +
                      ": endpoints must be -L and L");
  return Mesh(std::move(nodes));
}

void Mesh::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (double x : nodes_) out << format_full(x) << '\n';
  if (!out) throw IoError("write failure on " + path.string());
}

bool Mesh::is_uniform(double rel_tol) const {
  const double mean = 2.0 * half_width_ / n_elements();
  for (int k = 0; k < n_elements(); ++k)
    if (std::abs(h(k) - mean) > rel_tol * mean) return false;
  return true;
}

}  // namespace hs
