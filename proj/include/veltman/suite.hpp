#pragma once
// Semantic theorem suite.
//
// A fixed battery of derivable principles, each checked by bounded
// countermodel search over the frames of its logic's class.  Schemata are
// instantiated over a corpus of formulas in p, q, r of modal depth at most
// two, deduplicated semantically and sampled deterministically from the
// budget's seed.  Entries expected Valid must survive every instance;
// entries expected Refutable must produce a countermodel within budget.
// A few entries are checked over a slightly stronger class than the one
// they are stated for, because only the stronger class has a structural
// frame condition; their reports carry a note saying so.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "veltman/search.hpp"

namespace veltman {

class UnknownSuiteEntryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Expected { Valid, Refutable };

struct SuiteResult {
  std::string name;
  std::string logic;
  Expected expected{};
  bool passed = false;
  std::uint64_t instances = 0;       // schema instances checked
  std::uint64_t frames_checked = 0;  // summed over instances
  bool exhaustive = true;            // false when any instance was sampled
  std::string note;                  // class approximations and the like
  std::string failed_instance;       // rendered instance, when a Valid entry broke
  std::optional<Witness> witness;    // refutation: failure evidence or expected countermodel
  double seconds = 0;
};

// Registered entry names, in report order.
std::vector<std::string> suite_entry_names();

// Runs the named entries (all when names is empty).  Unknown names throw.
std::vector<SuiteResult> run_suite(const std::vector<std::string>& names,
                                   const SearchBudget& budget);

// One line per entry: name, logic, status, instances, frames, wall time.
std::string format_suite_results(const std::vector<SuiteResult>& results);

}  // namespace veltman
