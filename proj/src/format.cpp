#include "qcat/format.hpp"

#include <cmath>
#include <cstdio>

namespace qcat {

std::string format_real(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0.0
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12f", value);
  return buffer;
}

}  // namespace qcat
