#ifndef HS_UTIL_HPP
#define HS_UTIL_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hs {

// Shortest decimal string that round-trips to the same double.
std::string format_full(double v);

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline double inf_norm(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

inline double total_variation(std::span<const double> a) {
  double tv = 0.0;
  for (std::size_t i = 1; i < a.size(); ++i) tv += std::abs(a[i] - a[i - 1]);
  return tv;
}

}  // namespace hs

#endif
