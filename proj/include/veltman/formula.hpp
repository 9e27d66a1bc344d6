#pragma once
// Core formula representation.
//
// Formulas live in a process-wide interning arena: structurally equal terms
// share one node, so Formula is a cheap 32-bit handle with O(1) equality.
// The core language is deliberately small (falsum, variables, implication,
// box, interpretability arrow); every other connective is expanded into it
// by the builder helpers below.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace veltman {

enum class Op : std::uint8_t {
  Bot,  // falsum
  Var,  // propositional variable
  Imp,  // implication
  Box,  // necessity
  Rhd,  // interpretability arrow A |> B
};

struct Formula {
  std::uint32_t id = 0;
  friend bool operator==(Formula, Formula) = default;
};

struct FormulaHash {
  std::size_t operator()(Formula f) const noexcept { return f.id; }
};

// ── constructors ────────────────────────────────────────────────────────────
// Core nodes.  var() accepts any non-empty name; the surface parser is more
// restrictive (see parser.hpp), which keeps machine-generated names such as
// "_r0" out of user input.
Formula bot();
Formula var(std::string_view name);
Formula imp(Formula a, Formula b);
Formula box(Formula a);
Formula rhd(Formula a, Formula b);

// Defined connectives, expanded into the core on construction:
//   top      = false -> false
//   neg A    = A -> false
//   dia A    = ~[]~A
//   conj A B = ~(A -> ~B)
//   disj A B = ~A -> B
//   iff A B  = (A -> B) & (B -> A)
Formula top();
Formula neg(Formula a);
Formula dia(Formula a);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula iff(Formula a, Formula b);

// ── node access ─────────────────────────────────────────────────────────────
Op op_of(Formula f);
Formula lhs(Formula f);  // Imp/Rhd left child, Box child
Formula rhs(Formula f);  // Imp/Rhd right child
std::string var_name(Formula f);

// Tree size (number of connective/atom occurrences), saturating.
std::uint32_t tree_size(Formula f);

// Canonical total order: by tree size first, then by operator and children.
// Used wherever a deterministic formula order is needed (corpora, closure
// output, conjunction folds).
int compare(Formula a, Formula b);
struct FormulaLess {
  bool operator()(Formula a, Formula b) const { return compare(a, b) < 0; }
};

// Core-syntax rendering; parse(render(f)) == f for parser-reachable names.
std::string render(Formula f);

}  // namespace veltman
