#include "veltman/enumeration.hpp"

#include <bit>
#include <stdexcept>

namespace veltman {
namespace {

std::vector<std::pair<int, int>> lower_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i < n; ++i) {
    for (int j = 0; j < i; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

bool transitive(const std::vector<WorldMask>& r, int n) {
  for (int w = 0; w < n; ++w) {
    for (WorldMask t = r[w]; t; t &= t - 1) {
      if (r[std::countr_zero(t)] & ~r[w]) return false;
    }
  }
  return true;
}

bool s_transitive(const std::vector<WorldMask>& rows, const std::vector<int>& ups) {
  for (int x : ups) {
    for (WorldMask t = rows[x]; t; t &= t - 1) {
      int y = std::countr_zero(t);
      if (rows[y] & ~rows[x]) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<std::vector<WorldMask>> r_skeletons(int n) {
  if (n < 1 || n > 16) throw std::invalid_argument("world count out of range for enumeration");
  auto pairs = lower_pairs(n);
  std::vector<std::vector<WorldMask>> out;
  for (std::uint32_t bits = 0; bits < (1u << pairs.size()); ++bits) {
    std::vector<WorldMask> r(n, 0);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (bits >> k & 1) r[pairs[k].first] |= WorldMask{1} << pairs[k].second;
    }
    if (transitive(r, n)) out.push_back(std::move(r));
  }
  return out;
}

std::uint64_t SkeletonChoices::frame_count() const {
  std::uint64_t total = 1;
  for (std::size_t c : counts) total *= c;
  return total;
}

SkeletonChoices admissible_choices(int n, const std::vector<WorldMask>& r, const Logic& l) {
  const bool j1 = l.has(FrameProperty::J1);
  const bool j4p = l.has(FrameProperty::J4plus);
  const bool j2p = l.has(FrameProperty::J2plus);
  const bool j5 = l.has(FrameProperty::J5);
  const WorldMask full = n >= kMaxWorlds ? ~WorldMask{0} : ((WorldMask{1} << n) - 1);

  SkeletonChoices sc;
  sc.n = n;
  sc.r = r;
  sc.choices.resize(n);
  sc.counts.resize(n);
  for (int w = 0; w < n; ++w) {
    std::vector<int> ups;
    for (WorldMask t = r[w]; t; t &= t - 1) ups.push_back(std::countr_zero(t));
    std::vector<WorldMask> required(n, 0), freeBits(n, 0);
    for (int x : ups) {
      WorldMask allowed = j4p ? r[w] : full;
      WorldMask need = 0;
      if (j1) need |= WorldMask{1} << x;
      if (j5) need |= r[x];  // r[x] is within r[w] by transitivity
      required[x] = need;
      freeBits[x] = allowed & ~need;
    }
    // odometer over the rows, last R-successor fastest
    std::vector<WorldMask> rows(required);
    std::vector<WorldMask>& outRows = sc.choices[w];
    std::size_t count = 0;
    while (true) {
      if (!j2p || s_transitive(rows, ups)) {
        outRows.insert(outRows.end(), rows.begin(), rows.end());
        ++count;
      }
      int d = static_cast<int>(ups.size()) - 1;
      while (d >= 0) {
        int x = ups[d];
        // next submask of freeBits[x] in ascending order
        WorldMask sub = rows[x] & freeBits[x];
        if (sub == freeBits[x]) {
          rows[x] = required[x];
          --d;
        } else {
          rows[x] = required[x] | ((sub - freeBits[x]) & freeBits[x]);
          break;
        }
      }
      if (d < 0) break;
    }
    sc.counts[w] = count;
  }
  return sc;
}

std::uint64_t for_each_frame(int n, const Logic& l,
                             const std::function<bool(const Frame&)>& visit) {
  Frame frame;
  for (int i = 0; i < n; ++i) frame.worlds.push_back(std::to_string(i));
  frame.r.assign(n, 0);
  frame.s.assign(static_cast<std::size_t>(n) * n, 0);

  std::uint64_t visited = 0;
  for (const auto& r : r_skeletons(n)) {
    SkeletonChoices sc = admissible_choices(n, r, l);
    bool empty = false;
    for (std::size_t c : sc.counts) empty |= c == 0;
    if (empty) continue;
    frame.r = r;
    std::vector<std::size_t> digit(n, 0);
    for (int w = 0; w < n; ++w) {
      std::copy_n(sc.choices[w].begin(), n, frame.s.begin() + static_cast<std::size_t>(w) * n);
    }
    while (true) {
      ++visited;
      if (!visit(frame)) return visited;
      // advance the odometer, world n-1 fastest
      int w = n - 1;
      while (w >= 0) {
        if (++digit[w] < sc.counts[w]) break;
        digit[w] = 0;
        --w;
      }
      if (w < 0) break;
      for (int u = w; u < n; ++u) {
        std::copy_n(sc.choices[u].begin() + static_cast<std::size_t>(digit[u]) * n, n,
                    frame.s.begin() + static_cast<std::size_t>(u) * n);
      }
    }
  }
  return visited;
}

std::uint64_t count_frames(int n, const Logic& l) {
  std::uint64_t total = 0;
  for (const auto& r : r_skeletons(n)) total += admissible_choices(n, r, l).frame_count();
  return total;
}

std::vector<Frame> enumerate_frames(int n, const Logic& l) {
  std::vector<Frame> out;
  for_each_frame(n, l, [&out](const Frame& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

}  // namespace veltman
