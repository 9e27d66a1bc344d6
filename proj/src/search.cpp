#include "veltman/search.hpp"

#include <bit>
#include <random>
#include <vector>

#include "veltman/semantics.hpp"

namespace veltman {

Report find_countermodel(const Logic& l, Formula f, const SearchBudget& budget) {
  Report report;
  report.bound = budget.max_worlds;
  report.seed = budget.sampling_seed;

  EvalProgram prog = compile(f);
  const int k = prog.num_vars();
  std::vector<WorldMask> varMasks(std::max(k, 1), 0);
  std::vector<WorldMask> values(prog.code.size());
  std::mt19937_64 rng(budget.sampling_seed);

  for (int n = 1; n <= budget.max_worlds; ++n) {
    const WorldMask full = (n >= kMaxWorlds) ? ~WorldMask{0} : ((WorldMask{1} << n) - 1);
    std::uint64_t perVar = std::uint64_t{1} << n;
    std::uint64_t total = 1;
    bool overflow = false;
    for (int i = 0; i < k; ++i) {
      if (total > budget.max_valuations / perVar) overflow = true;
      total *= perVar;
    }
    const bool sample = overflow || total > budget.max_valuations;

    std::optional<Witness> found;
    std::uint64_t visited = for_each_frame(n, l, [&](const Frame& fr) {
      auto record = [&](int world) {
        Witness w;
        w.model.frame = fr;
        for (int i = 0; i < k; ++i) w.model.valuation[prog.vars[i]] = varMasks[i];
        w.world = fr.worlds[world];
        found = std::move(w);
      };
      if (!sample) {
        std::fill(varMasks.begin(), varMasks.end(), 0);
        WorldMask root = full_eval(prog, fr, varMasks.data(), values.data());
        for (std::uint64_t step = 0;; ++step) {
          if (root != full) {
            record(std::countr_zero(~root & full));
            return false;
          }
          if (step + 1 >= total) return true;
          int slot = 0;
          while (std::uint64_t{varMasks[slot]} + 1 == perVar) {
            varMasks[slot] = 0;
            ++slot;
          }
          ++varMasks[slot];
          eval_step(prog, fr, varMasks.data(), values.data(), slot);
          root = values[prog.code.size() - 1];
        }
      }
      report.exhaustive = false;
      for (std::uint64_t step = 0; step < budget.max_valuations; ++step) {
        for (int i = 0; i < k; ++i) varMasks[i] = static_cast<WorldMask>(rng()) & full;
        WorldMask root = full_eval(prog, fr, varMasks.data(), values.data());
        if (root != full) {
          record(std::countr_zero(~root & full));
          return false;
        }
      }
      return true;
    });

    report.frames_checked += visited;
    if (found) {
      report.status = Report::Status::Refuted;
      report.witness = std::move(found);
      report.bound = n;
      return report;
    }
  }
  return report;
}

}  // namespace veltman
