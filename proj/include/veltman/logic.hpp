#pragma once
// The registry of interpretability logics between the base system and IL.
//
// Each logic is the base system plus a subset of the optional schemata
// {J1, J2+, J4+, J5}.  Since J2+ yields J4+, the distinct combinations come
// to twelve; two of them carry the traditional names CL (= J1 + J2+) and
// IL (= J1 + J2+ + J5).  Every logic is matched to the structural frame
// condition of each adopted schema, and bounded validity over the resulting
// frame class is the operational semantics used throughout.

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "veltman/formula.hpp"
#include "veltman/frame.hpp"
#include "veltman/semantics.hpp"

namespace veltman {

class UnknownLogicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Logic {
  std::string name;                        // canonical name, e.g. "IL-(J1,J4+)"
  std::vector<FrameProperty> properties;   // structural conditions beyond Base
  bool has(FrameProperty p) const;
};

// The twelve logics in a fixed canonical order ("IL-" first, "IL" last).
const std::vector<Logic>& all_logics();

// Accepts canonical names, "CL", "IL", and any "IL-(...)" listing of
// J1/J2+/J4+/J5 (order-insensitive; J2+ absorbs J4+).
const Logic& lookup_logic(std::string_view name);

bool frame_class_check(const Frame& fr, const Logic& l);

// weaker's schemata are all derivable in stronger (set inclusion after
// closing J2+ over J4+).
bool extends(const Logic& weaker, const Logic& stronger);

// ── schemata ────────────────────────────────────────────────────────────────
enum class Schema { J1, J2, J2plus, J3, J4, J4plus, J5, J6, G2, G3 };

int schema_arity(Schema s);
std::string_view schema_name(Schema s);

// Instantiates the schema with the given formulas; throws ArityError when
// the argument count does not match.
Formula axiom_instance(Schema s, std::span<const Formula> args);

// Implication that reduces provability in IL to provability in the
// J2+/J5 fragment: boxdot of the conjunction of B |> B over the proper
// subformulas B of a (canonical order, empty conjunction = true) implies a.
Formula embed_il(Formula a);

}  // namespace veltman
