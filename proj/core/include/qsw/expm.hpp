#pragma once

#include <array>
#include <span>
#include <stdexcept>

#include "qsw/liouvillian.hpp"
#include "qsw/state.hpp"

namespace qsw {

/// Raised when an evolution produces non-finite values (overflow).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDoublePrecisionTol = 0x1p-53;
inline constexpr double kSinglePrecisionTol = 0x1p-24;

/// Backward-error thresholds for the truncated-Taylor exponential action:
/// theta[m-1] is the largest 1-norm for which a degree-m expansion keeps the
/// backward error below `tolerance`.
struct TaylorParameters {
  static constexpr std::size_t m_max = 55;
  static constexpr std::size_t p_max = 8;

  double tolerance = kDoublePrecisionTol;
  std::array<double, m_max> theta{};
};

/// Thresholds for a given tolerance. The 2^-53 and 2^-24 tables ship as
/// generated source; other tolerances are solved at runtime from the
/// backward-error series. Results are memoized per tolerance.
const TaylorParameters& build_theta_table(double tolerance = kDoublePrecisionTol);

/// Taylor degree and scaling count for one exponential action.
struct StepParameters {
  std::size_t m_star = 0;  // 0 means exp(tA)v = v (t = 0 or A = 0)
  std::size_t s = 1;
};

/// Cost-minimizing (m*, s) choice given the cached power norms
/// ||A^n||_1 (n = 1..9) and the time step t.
StepParameters select_parameters(std::span<const double, 9> one_norms, double t,
                                 const TaylorParameters& params);

/// w = exp(tL) v by scaling-and-squaring of the truncated Taylor action.
/// Negative t is permitted; the generator is not skew-Hermitian, so reverse
/// evolution can amplify rounding noise and is the caller's responsibility.
StateVector step(const DistributedLiouvillian& l, const StateVector& v, double t,
                 const TaylorParameters& params = build_theta_table());

/// States at the evenly spaced times t1 + k*(tq-t1)/steps, k = 0..steps.
struct SeriesResult {
  std::vector<double> times;
  std::vector<StateVector> states;
};

/// Time series sharing Taylor term vectors across output points, with cost
/// comparable to a single step over [t1, tq].
SeriesResult series(const DistributedLiouvillian& l, const StateVector& v, double t1, double tq,
                    std::size_t steps, const TaylorParameters& params = build_theta_table());

}  // namespace qsw
