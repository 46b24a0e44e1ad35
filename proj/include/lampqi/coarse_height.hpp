#pragma once

#include "lampqi/arith.hpp"

namespace lampqi {

/// The interval [t_u, t_l] of heights at which two vertical geodesics come
/// close, in log-base-a units.
///
/// The lower endpoint is always exact. The upper endpoint is
/// `t_high_base + log_a(t_high_log_arg)`; it is an exact rational whenever
/// the log argument is 1 (lamplighter pairs, or BS pairs with |r| = 1).
/// SOL intervals only carry the floating approximations and are flagged
/// diagnostic.
struct CoarseHeightInterval {
  Rational t_low = 0;
  Rational t_high_base = 0;
  BigInt t_high_log_arg = 1;
  std::uint32_t base = 2;  // a; 0 stands for e
  double approx_low = 0.0;
  double approx_high = 0.0;
  bool diagnostic_only = false;

  bool exact() const { return !diagnostic_only && t_high_log_arg == 1; }

  /// Exact upper endpoint; only meaningful when exact().
  Rational t_high() const { return t_high_base; }
};

}  // namespace lampqi
