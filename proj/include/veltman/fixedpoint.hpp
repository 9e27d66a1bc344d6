#pragma once
// Explicit fixed points.
//
// For a formula A modalized in p, a fixed point is a p-free F with
// F <-> A[p := F] provable; here provability is exercised as bounded
// validity over the logic's frame class.  The three primitive shapes are
// solved in closed form and arbitrary modalized formulas are reduced to
// them by abstracting one maximal modal p-subformula at a time.
//
// The closed forms are only sound from certain logics upward: the general
// route needs J2+ and J5, while the left-handed route needs J4+ and J5 plus
// a left-modalized input.  fixed_point refuses logics below the required
// strength rather than emitting an unverified guess, and every synthesized
// fixed point can be handed to verify_fixed_point for a bounded check.

#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "veltman/formula.hpp"
#include "veltman/logic.hpp"
#include "veltman/search.hpp"

namespace veltman {

class FixedPointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by verify_fixed_point when the candidate mentions p or variables
// foreign to A; kept apart from a semantic refutation on purpose.
class VariableConditionError : public FixedPointError {
 public:
  using FixedPointError::FixedPointError;
};

// Fixed point of []A(p): []A(true).  Requires []A(p) left-modalized in p,
// i.e. no |>-right side of A may mention p.
Formula fp_primitive_box(Formula a, std::string_view p);

// Fixed point of A(p) |> B(p): A(true) |> B([]~A(true)).
Formula fp_primitive_rhd(Formula a, Formula b, std::string_view p);

// Fixed point of A(p) |> B for p-free B and left-modalized A(p) |> B:
// A([]~A(true)) |> B.
Formula fp_primitive_left(Formula a, Formula b, std::string_view p);

struct FixedPointResult {
  Formula input{0};
  std::string variable;
  Formula fixpoint{0};
  // (subproblem, rule) pairs in the order they were solved
  std::vector<std::pair<Formula, std::string>> trace;
};

// Synthesizes the fixed point of A in p.  A must be modalized in p, and the
// logic must extend IL-(J2+,J5), or IL-(J4+,J5) when A is left-modalized.
FixedPointResult fixed_point(const Logic& l, Formula a, std::string_view p);

// Bounded check of F <-> A[p := F] over the logic's frame class, after
// validating that F's variables are among A's minus p.  Models passed in
// extras are evaluated first (their own valuations, all worlds).
Report verify_fixed_point(const Logic& l, Formula a, std::string_view p, Formula f,
                          const SearchBudget& budget, std::span<const Model> extras = {});

// Bounded refutation of the uniqueness implication
//   boxdot(p <-> A(p)) & boxdot(q <-> A(q)) -> (p <-> q)
// with q chosen fresh for A and p.
Report ufp_check(const Logic& l, Formula a, std::string_view p, const SearchBudget& budget);

// The uniqueness implication itself (exposed for inspection and reuse).
Formula ufp_formula(Formula a, std::string_view p);

}  // namespace veltman
