#pragma once
// Exhaustive generation of frames on a fixed number of worlds.
//
// Worlds are 0..n-1 and R is kept compatible with the numeric order
// (i R j only when i > j), which fixes one representative per R-shape and
// keeps the stream canonical: R skeletons are enumerated by ascending edge
// set, then for each world the admissible S_w relations (pre-filtered by
// the logic's structural conditions) are swept with an odometer whose last
// world varies fastest.  Every frame of the logic's class on n worlds with
// numerically ordered R appears exactly once, in a deterministic order.

#include <cstdint>
#include <functional>
#include <vector>

#include "veltman/frame.hpp"
#include "veltman/logic.hpp"

namespace veltman {

// All transitive R relations within {(i,j) : i > j}, ascending by edge set.
std::vector<std::vector<WorldMask>> r_skeletons(int n);

// Per-world admissible S_w candidates for one skeleton under a logic's
// structural conditions.  Candidate k for world w occupies row masks
// [k*n, (k+1)*n) of choices[w].
struct SkeletonChoices {
  int n = 0;
  std::vector<WorldMask> r;
  std::vector<std::vector<WorldMask>> choices;
  std::vector<std::size_t> counts;
  std::uint64_t frame_count() const;
};
SkeletonChoices admissible_choices(int n, const std::vector<WorldMask>& r, const Logic& l);

// Visits every frame of the class on exactly n worlds; the visitor returns
// false to stop early.  Returns the number of frames visited.  The Frame
// reference is reused between calls; copy it to keep it.
std::uint64_t for_each_frame(int n, const Logic& l,
                             const std::function<bool(const Frame&)>& visit);

std::uint64_t count_frames(int n, const Logic& l);

// Materialised variant for small n.
std::vector<Frame> enumerate_frames(int n, const Logic& l);

}  // namespace veltman
