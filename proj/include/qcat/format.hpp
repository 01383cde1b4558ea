#pragma once

#include <string>

namespace qcat {

// Fixed 12-decimal-place rendering used for every real in reports and tables,
// so identical runs produce byte-identical output. Negative zero is folded
// into "0.000000000000".
std::string format_real(double value);

}  // namespace qcat
