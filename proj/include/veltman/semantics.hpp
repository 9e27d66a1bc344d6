#pragma once
// Forcing and validity over frames and models.
//
// Formulas are compiled once into a flat postorder program whose values are
// world bitmasks; evaluating a node touches every world at most once, so a
// full truth table for all subformulas costs a handful of bit operations per
// node.  Valuation sweeps use an odometer over per-variable masks and only
// re-evaluate the nodes whose variables changed, which matters for the
// exhaustive searches.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "veltman/formula.hpp"
#include "veltman/frame.hpp"

namespace veltman {

struct EvalProgram {
  struct Ins {
    Op op;
    std::uint16_t a = 0;  // operand slot (child index, or variable slot for Var)
    std::uint16_t b = 0;
    // smallest variable slot this node depends on; kNoVar when none
    std::uint8_t minSlot = 0;
  };
  static constexpr std::uint8_t kNoVar = 0xff;

  std::vector<Ins> code;           // postorder over distinct subformulas, root last
  std::vector<std::string> vars;   // sorted variable names; position = slot
  Formula source{0};

  int num_vars() const { return static_cast<int>(vars.size()); }
};

EvalProgram compile(Formula f);

// Evaluates nodes whose smallest variable slot is <= changedSlot (use
// full_eval after switching frames or to initialise).  values must hold
// code.size() masks and varMasks num_vars() masks.
void eval_step(const EvalProgram& p, const Frame& fr, const WorldMask* varMasks,
               WorldMask* values, int changedSlot);
WorldMask full_eval(const EvalProgram& p, const Frame& fr, const WorldMask* varMasks,
                    WorldMask* values);

// Truth mask of f in m (bit w = f holds at world w).
WorldMask truth_mask(const Model& m, Formula f);
bool holds(const Model& m, std::string_view world, Formula f);
bool holds(const Model& m, int world, Formula f);
bool valid_in_model(const Model& m, Formula f);

// Exhaustive valuation sweep in canonical order; returns the first refuting
// (valuation, world) or nothing when f is valid in the frame.
struct FrameRefutation {
  std::map<std::string, WorldMask> valuation;
  int world = 0;
};
std::optional<FrameRefutation> refute_in_frame(const Frame& fr, Formula f);
bool valid_in_frame(const Frame& fr, Formula f);

// ── structural frame conditions ─────────────────────────────────────────────
enum class FrameProperty {
  Base,    // the frame invariants themselves
  J1,      // w R x implies x S_w x
  J2plus,  // J4plus and every S_w transitive
  J4plus,  // S_w confined to R-successors of w on both sides
  J5,      // w R x and x R y imply x S_w y
};

bool check_frame_property(const Frame& fr, FrameProperty p);

// Restriction of m to w plus its R-successors, preserving world order.
// Requires the J4plus condition so that the S relations survive restriction.
Model generated_submodel(const Model& m, int world);
Model generated_submodel(const Model& m, std::string_view world);

}  // namespace veltman
