#pragma once
// Syntactic operations on core formulas.

#include <string>
#include <string_view>
#include <vector>

#include "veltman/formula.hpp"

namespace veltman {

// Variable names occurring in f, sorted, without duplicates.
std::vector<std::string> variables(Formula f);

bool contains_var(Formula f, std::string_view p);

// Distinct subformulas of f in canonical order.  With proper=true, f itself
// is excluded.
std::vector<Formula> subformulas(Formula f, bool proper = false);

// Simultaneous replacement of every occurrence of variable p by g.
Formula substitute(Formula f, std::string_view p, Formula g);

// Replacement of every occurrence of the subformula d by g (used by the
// fixed-point composition step, where d is a modal subformula).
Formula replace_subformula(Formula f, Formula d, Formula g);

// Every occurrence of p lies under a modal operator.  With left_only=true,
// additionally no subformula B |> C of f has p occurring in C.
bool is_modalized(Formula f, std::string_view p, bool left_only = false);

// Negation up to the standard involution: returns B when f is B -> false,
// otherwise f -> false.
Formula neg_tilde(Formula f);

// f & []f, expanded into the core.
Formula boxdot(Formula f);

// Least superset of the input that is closed under subformulas and
// neg_tilde, contains falsum among |>-components, contains A |> B for all
// |>-components A, B, and contains []~A for every |>-component A.  The
// |>-components of a set are the formulas appearing on either side of a |>
// member.  Result is in canonical order.
std::vector<Formula> adequate_closure(const std::vector<Formula>& xs);

}  // namespace veltman
