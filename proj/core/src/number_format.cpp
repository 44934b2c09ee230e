#include "poincare/number_format.hpp"

#include <array>
#include <charconv>

namespace poincare {

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), ptr);
}

std::string format_list(std::span<const double> values, const char* separator) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += separator;
    out += format_double(values[i]);
  }
  return out;
}

}  // namespace poincare
