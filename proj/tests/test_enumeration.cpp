#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "veltman/enumeration.hpp"
#include "veltman/frame.hpp"
#include "veltman/logic.hpp"

using namespace veltman;

namespace {

using Rows = std::vector<WorldMask>;

std::string encode(const Rows& r, const Rows& s) {
  std::string out;
  for (WorldMask m : r) out += static_cast<char>(m), out += '/';
  out += '|';
  for (WorldMask m : s) out += static_cast<char>(m), out += '/';
  return out;
}

std::string encode(const Frame& f) {
  return encode(f.r, f.s);
}

// Straight re-derivation of the class definitions, used only to judge
// oracle-generated candidates.
bool oracle_member(int n, const Rows& r, const Rows& s, const Logic& l) {
  auto srow = [&](int w, int x) { return s[static_cast<std::size_t>(w) * n + x]; };
  for (int w = 0; w < n; ++w) {
    for (int x = 0; x < n; ++x) {
      WorldMask row = srow(w, x);
      if (row && !(r[w] >> x & 1)) return false;  // x S_w y needs w R x
      if (l.has(FrameProperty::J4plus) && (row & ~r[w])) return false;
      if (l.has(FrameProperty::J1) && (r[w] >> x & 1) && !(row >> x & 1)) return false;
      if (l.has(FrameProperty::J5) && (r[w] >> x & 1) && (r[x] & ~row)) return false;
      if (l.has(FrameProperty::J2plus)) {
        for (int y = 0; y < n; ++y) {
          if ((row >> y & 1) && (srow(w, y) & ~row)) return false;
        }
      }
    }
  }
  return true;
}

// Every frame of the class with descending-index R, generated by brute force
// over all lower-triangular R and all S assignments.
std::set<std::string> oracle_frames(int n, const Logic& l) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i < n; ++i) {
    for (int j = 0; j < i; ++j) pairs.emplace_back(i, j);
  }
  std::set<std::string> out;
  for (std::uint32_t bits = 0; bits < (1u << pairs.size()); ++bits) {
    Rows r(n, 0);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (bits >> k & 1) r[pairs[k].first] |= WorldMask{1} << pairs[k].second;
    }
    bool trans = true;
    for (int a = 0; a < n && trans; ++a) {
      for (int b = 0; b < n && trans; ++b) {
        if (r[a] >> b & 1) trans = !(r[b] & ~r[a]);
      }
    }
    if (!trans) continue;
    // odometer over the S slots (w, x) with w R x; each row ranges over all
    // 2^n subsets and oracle_member rejects the inadmissible ones
    std::vector<std::pair<int, int>> slots;
    for (int w = 0; w < n; ++w) {
      for (int x = 0; x < n; ++x) {
        if (r[w] >> x & 1) slots.emplace_back(w, x);
      }
    }
    Rows s(static_cast<std::size_t>(n) * n, 0);
    while (true) {
      if (oracle_member(n, r, s, l)) out.insert(encode(r, s));
      int d = static_cast<int>(slots.size()) - 1;
      while (d >= 0) {
        auto [w, x] = slots[d];
        WorldMask& row = s[static_cast<std::size_t>(w) * n + x];
        if (++row < (WorldMask{1} << n)) break;
        row = 0;
        --d;
      }
      if (d < 0) break;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("skeleton stream lists the descending-index transitive relations") {
  CHECK(r_skeletons(1).size() == 1);
  CHECK(r_skeletons(2).size() == 2);
  CHECK(r_skeletons(3).size() == 7);  // of 8 subsets only {(2,1),(1,0)} alone fails
  for (int n = 1; n <= 4; ++n) {
    auto skels = r_skeletons(n);
    std::set<std::string> seen;
    for (const Rows& r : skels) {
      for (int w = 0; w < n; ++w) {
        CHECK((r[w] >> w & 1) == 0);
        CHECK((r[w] & ~((WorldMask{1} << w) - 1)) == 0);  // only lower indices
        for (int x = 0; x < n; ++x) {
          if (r[w] >> x & 1) CHECK((r[x] & ~r[w]) == 0);
        }
      }
      CHECK(seen.insert(encode(r, {})).second);
    }
    // brute-force count of transitive lower-triangular relations
    int edges = n * (n - 1) / 2;
    std::size_t expect = 0;
    for (std::uint32_t bits = 0; bits < (1u << edges); ++bits) {
      Rows r(n, 0);
      std::size_t k = 0;
      for (int i = 1; i < n; ++i) {
        for (int j = 0; j < i; ++j, ++k) {
          if (bits >> k & 1) r[i] |= WorldMask{1} << j;
        }
      }
      bool trans = true;
      for (int a = 0; a < n && trans; ++a) {
        for (int b = 0; b < n && trans; ++b) {
          if (r[a] >> b & 1) trans = !(r[b] & ~r[a]);
        }
      }
      expect += trans;
    }
    CHECK(skels.size() == expect);
  }
}

TEST_CASE("base class counts on one to three worlds") {
  const Logic& base = lookup_logic("IL-");
  CHECK(count_frames(1, base) == 1);
  CHECK(count_frames(2, base) == 5);
  CHECK(count_frames(3, base) == 665);
  CHECK(enumerate_frames(2, base).size() == 5);
}

TEST_CASE("enumeration agrees with brute force for every logic up to three worlds") {
  for (const Logic& l : all_logics()) {
    for (int n = 1; n <= 3; ++n) {
      std::set<std::string> expect = oracle_frames(n, l);
      std::set<std::string> got;
      std::uint64_t visited = for_each_frame(n, l, [&](const Frame& f) {
        CHECK(f.size() == n);
        got.insert(encode(f));
        return true;
      });
      CAPTURE(l.name);
      CAPTURE(n);
      CHECK(visited == expect.size());  // no duplicates either
      CHECK(got == expect);
      CHECK(count_frames(n, l) == expect.size());
    }
  }
}

TEST_CASE("every yielded frame is well formed and in class") {
  for (const Logic& l : all_logics()) {
    for (const Frame& f : enumerate_frames(3, l)) {
      CHECK_NOTHROW(f.validate());
      CHECK(frame_class_check(f, l));
    }
  }
}

TEST_CASE("restricted classes stay small on four worlds") {
  CHECK(count_frames(4, lookup_logic("IL-(J2+,J5)")) == 1732);
  CHECK(count_frames(4, lookup_logic("IL-(J4+,J5)")) == 6449);
  CHECK(count_frames(4, lookup_logic("IL-(J4+)")) == 31569);
  CHECK(count_frames(4, lookup_logic("IL-(J1,J5)")) == 62705);
  CHECK(count_frames(4, lookup_logic("IL-")) == 20429665);
}

TEST_CASE("stream order is deterministic and early stop reports the visit count") {
  const Logic& l = lookup_logic("IL-");
  std::vector<std::string> first, second;
  for_each_frame(3, l, [&](const Frame& f) { first.push_back(encode(f)); return true; });
  for_each_frame(3, l, [&](const Frame& f) { second.push_back(encode(f)); return true; });
  CHECK(first == second);
  std::uint64_t n = for_each_frame(3, l, [count = 0](const Frame&) mutable {
    return ++count < 10;
  });
  CHECK(n == 10);
  // choice tables are internally consistent
  for (const Rows& r : r_skeletons(3)) {
    SkeletonChoices sc = admissible_choices(3, r, l);
    std::uint64_t product = 1;
    for (int w = 0; w < 3; ++w) {
      CHECK(sc.choices[w].size() == sc.counts[w] * 3);
      product *= sc.counts[w];
    }
    CHECK(sc.frame_count() == product);
  }
}
