#pragma once

#include <array>

namespace qsw::detail {

// theta_m thresholds, m = 1..55, generated by tools/gen_theta.
extern const std::array<double, 55> kThetaTaylorDouble;  // tolerance 2^-53
extern const std::array<double, 55> kThetaTaylorSingle;  // tolerance 2^-24

}  // namespace qsw::detail
