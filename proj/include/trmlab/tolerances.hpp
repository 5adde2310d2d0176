#pragma once

// Tolerance hierarchy used across the whole project.
//
// Quantities that are mathematically equal are checked as equalities at
// kEqualityTol.  One-sided inequalities get kInequalitySlack of slack so a
// last-bit rounding difference never turns a theorem into a test failure.
// The performance-difference identity accumulates over leaves and steps and
// gets its own, slightly looser tolerance.

namespace trmlab::tol {

// Row sums, softmax consistency, martingale sums.
inline constexpr double kRowSum = 1e-12;

// Two independent computations of the same quantity (chain rule vs direct).
inline constexpr double kEquality = 1e-10;

// Slack added to the favorable side of a proven inequality.
inline constexpr double kInequalitySlack = 1e-12;

// Direct error vs performance-difference sum.
inline constexpr double kPdi = 1e-9;

// Numerically solved constructions (counterexample hot row).
inline constexpr double kSolver = 1e-9;

}  // namespace trmlab::tol
