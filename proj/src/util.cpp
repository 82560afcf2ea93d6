#include "hs/util.hpp"

#include <charconv>
#include <system_error>

namespace hs {

std::string format_full(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace hs
