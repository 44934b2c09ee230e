#pragma once

#include <span>
#include <string>

namespace poincare {

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

/// Comma-joined format_double of each value.
std::string format_list(std::span<const double> values, const char* separator = ", ");

}  // namespace poincare
