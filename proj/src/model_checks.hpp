#pragma once

#include <cmath>
#include <string>

#include "dhg/errors.hpp"

namespace dhg::detail {

inline void require_positive(double v, const std::string& name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(name + " must be finite and > 0");
}

inline void require_nonnegative(double v, const std::string& name) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError(name + " must be finite and >= 0");
}

inline void require_threshold(double xi, double vdd) {
  if (!(xi > 0.0 && xi < vdd)) throw ValidationError("threshold must lie strictly between 0 and vdd");
}

}  // namespace dhg::detail
