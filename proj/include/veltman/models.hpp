#pragma once
// Built-in model families.
//
// Four families, addressed by the same numbers the command line uses
// (--figure 2..5).  Family 2 is a fixed three-world model witnessing
// failure of uniqueness of fixed points.  Families 3..5 are finite
// truncations of infinite models that carry no fixed point of a given
// shape; their R and S edges only ever reach strictly smaller indices (plus
// the R-isolated extra world of family 4), so truth at a world does not
// depend on the truncation size once the world is included.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "veltman/formula.hpp"
#include "veltman/frame.hpp"
#include "veltman/logic.hpp"

namespace veltman {

enum class Family { Figure2, Figure3, Figure4, Figure5 };

class FamilyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Worlds:
//   Figure2: w, x, y (size ignored)
//   Figure3: x0, y0, .., xN, yN with q true exactly on the x chain
//   Figure4: 0 .. N plus the R-isolated v, with q true exactly at v
//   Figure5: 0 .. N, empty valuation
Model build_family(Family fam, int size);

// The logic whose frame class the family's members inhabit.
const Logic& family_logic(Family fam);

// True when the named world satisfies f in the size-n truncation exactly
// when it does in the size-(n+1) truncation.
bool truncation_sound(Family fam, int size, Formula f, std::string_view world);

// ── fixed-point shape scans ────────────────────────────────────────────────
// Shape of the defining equation attacked by the scan: p <-> p |> q for
// families 3 and 4, p <-> true |> ~p for family 5.
enum class FpShape { ARhdQ, TopRhdNotA };

struct ScanCandidate {
  Formula a{0};
  std::optional<std::string> fail_world;  // first world (index order) refuting the equation
  bool tail_stable = false;               // truth of a constant per chain on [N/2, N-1]
};

struct ScanReport {
  Family family{};
  FpShape shape{};
  int size = 0;
  int max_depth = 0;
  std::uint64_t raw_candidates = 0;  // before semantic deduplication
  std::vector<ScanCandidate> candidates;
  int survivors = 0;  // candidates with no refuting world of index <= size-1
};

// Enumerates candidate formulas up to max_depth over the family's variable
// alphabet ({q} for families 3 and 4, none for family 5), deduplicates them
// by truth profile on the class frames with at most two worlds plus the
// size-4 truncation, and looks for a world of index <= size-1 refuting the
// fixed-point equation of each candidate.
ScanReport no_fixed_point_scan(Family fam, FpShape shape, int size, int max_depth);

}  // namespace veltman
