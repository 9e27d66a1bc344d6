#pragma once
// Bounded countermodel search.
//
// A claim "f is valid in the logic's frame class" is attacked by sweeping
// every frame of the class with 1..max_worlds worlds and every valuation of
// f's variables over each frame.  When a frame's valuation space exceeds
// max_valuations, the sweep for that frame switches to seeded random
// sampling and the report says so.  Outcomes are deterministic for a fixed
// budget: frames in enumeration order, valuations in odometer order, first
// refutation wins.

#include <cstdint>
#include <optional>
#include <string>

#include "veltman/enumeration.hpp"
#include "veltman/formula.hpp"
#include "veltman/frame.hpp"
#include "veltman/logic.hpp"

namespace veltman {

struct SearchBudget {
  int max_worlds = 4;
  std::uint64_t max_valuations = 1u << 20;  // per frame, before sampling kicks in
  std::uint64_t sampling_seed = 2026;
};

struct Witness {
  Model model;
  std::string world;
};

struct Report {
  enum class Status { VerifiedUpTo, Refuted };
  Status status = Status::VerifiedUpTo;
  int bound = 0;                    // number of worlds covered
  std::optional<Witness> witness;   // set when refuted
  std::uint64_t frames_checked = 0;
  bool exhaustive = true;           // false when any frame was sampled
  std::uint64_t seed = 0;           // echoed sampling seed

  bool refuted() const { return status == Status::Refuted; }
};

// Searches for a model of the logic's class refuting f.
Report find_countermodel(const Logic& l, Formula f, const SearchBudget& budget);

}  // namespace veltman
