#pragma once

#include <string>

namespace mobility {

/// printf("%.17g"): shortest form that always round-trips a double.
std::string format_number(double value);

}  // namespace mobility
