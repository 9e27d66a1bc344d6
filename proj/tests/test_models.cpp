#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "veltman/analysis.hpp"
#include "veltman/formula.hpp"
#include "veltman/frame.hpp"
#include "veltman/logic.hpp"
#include "veltman/models.hpp"
#include "veltman/semantics.hpp"

using namespace veltman;

namespace {

const Formula p = var("p"), q = var("q");

// Expected frames rebuilt from the definitions with set-of-edges loops,
// deliberately unlike the mask arithmetic in the builders.
struct Edges {
  std::vector<std::pair<int, int>> r;
  std::vector<std::tuple<int, int, int>> s;  // (w, x, y)
};

void check_edges(const Frame& f, const Edges& e) {
  std::vector<WorldMask> r(f.size(), 0), s(static_cast<std::size_t>(f.size()) * f.size(), 0);
  for (auto [a, b] : e.r) r[a] |= WorldMask{1} << b;
  for (auto [w, x, y] : e.s) s[static_cast<std::size_t>(w) * f.size() + x] |= WorldMask{1} << y;
  CHECK(f.r == r);
  CHECK(f.s == s);
}

bool fig4_s(int w, int x, int y, int v) {
  if (y == x) return true;
  if (y < x) return true;  // x R y on the descending chain
  return y == v && x % 2 == 0 && x < w - 1;
}

bool fig5_s(int w, int x, int y) {
  if (x >= w || y >= w) return false;
  return x >= y || (x == 0 && (y % 2 == 0 || y == w - 1));
}

}  // namespace

TEST_CASE("family 2 is the fixed three-world double fixed point witness") {
  Model m = build_family(Family::Figure2, 0);
  REQUIRE(m.frame.worlds == std::vector<std::string>{"w", "x", "y"});
  check_edges(m.frame, Edges{{{0, 1}}, {{0, 1, 1}, {0, 1, 2}}});
  CHECK(m.valuation.at("p") == 0b011);
  CHECK(m.valuation.at("q") == 0b110);
  CHECK(build_family(Family::Figure2, 9).frame.size() == 3);  // size is ignored

  CHECK(check_frame_property(m.frame, FrameProperty::J1));
  CHECK(check_frame_property(m.frame, FrameProperty::J5));
  CHECK_FALSE(check_frame_property(m.frame, FrameProperty::J4plus));
  CHECK(frame_class_check(m.frame, family_logic(Family::Figure2)));

  // within w's cone both p and q satisfy the defining equation of
  // true |> ~p, yet they differ at w itself; q even satisfies it globally,
  // while p fails at the R-unreachable y
  int w = m.frame.world_index("w");
  CHECK(holds(m, w, boxdot(iff(p, rhd(top(), neg(p))))));
  CHECK(holds(m, w, boxdot(iff(q, rhd(top(), neg(q))))));
  CHECK_FALSE(holds(m, w, iff(p, q)));
  CHECK(valid_in_model(m, iff(q, rhd(top(), neg(q)))));
  CHECK(truth_mask(m, iff(p, rhd(top(), neg(p)))) == 0b011);
  CHECK(truth_mask(m, iff(p, q)) == 0b010);  // they agree at x only
}

TEST_CASE("family 3 truncations match their definition") {
  for (int N = 1; N <= 3; ++N) {
    CAPTURE(N);
    Model m = build_family(Family::Figure3, N);
    REQUIRE(m.frame.size() == 2 * (N + 1));
    std::vector<std::string> names;
    for (int i = 0; i <= N; ++i) {
      names.push_back("x" + std::to_string(i));
      names.push_back("y" + std::to_string(i));
    }
    CHECK(m.frame.worlds == names);

    Edges e;
    auto ids = [](int i) { return std::vector<int>{2 * i, 2 * i + 1}; };
    for (int i = 0; i <= N; ++i) {
      for (int j = 0; j <= N; ++j) {
        if (j < i) {
          for (int a : ids(i)) {
            for (int b : ids(j)) e.r.emplace_back(a, b);
          }
        }
      }
    }
    for (int i = 0; i <= N; ++i) {
      for (int w : ids(i)) {
        for (int j = 0; j < i; ++j) {
          for (int a : ids(j)) e.s.emplace_back(w, a, a);
        }
        for (int k = 0; k + 1 < i; k += 2) {
          e.s.emplace_back(w, 2 * k, 2 * (k + 1));
          e.s.emplace_back(w, 2 * k + 1, 2 * (k + 1));
        }
      }
    }
    check_edges(m.frame, e);

    WorldMask xMask = 0;
    for (int i = 0; i <= N; ++i) xMask |= WorldMask{1} << (2 * i);
    CHECK(m.valuation.at("q") == xMask);
    CHECK(m.valuation.size() == 1);
  }
}

TEST_CASE("family 4 truncations match their definition") {
  for (int N = 1; N <= 3; ++N) {
    CAPTURE(N);
    Model m = build_family(Family::Figure4, N);
    const int v = N + 1;
    REQUIRE(m.frame.size() == N + 2);
    CHECK(m.frame.worlds.back() == "v");
    CHECK(m.frame.world_index("0") == 0);

    Edges e;
    for (int x = 0; x <= N; ++x) {
      for (int y = 0; y < x; ++y) e.r.emplace_back(x, y);
    }
    // v has no R edges in either direction
    for (int w = 0; w <= N; ++w) {
      for (int x = 0; x < w; ++x) {
        for (int y = 0; y < m.frame.size(); ++y) {
          if (fig4_s(w, x, y, v)) e.s.emplace_back(w, x, y);
        }
      }
    }
    check_edges(m.frame, e);
    CHECK(m.valuation.at("q") == WorldMask{1} << v);
  }
}

TEST_CASE("family 5 truncations match their definition") {
  for (int N = 1; N <= 4; ++N) {
    CAPTURE(N);
    Model m = build_family(Family::Figure5, N);
    REQUIRE(m.frame.size() == N + 1);
    Edges e;
    for (int x = 0; x <= N; ++x) {
      for (int y = 0; y < x; ++y) e.r.emplace_back(x, y);
    }
    for (int w = 0; w <= N; ++w) {
      for (int x = 0; x <= N; ++x) {
        for (int y = 0; y <= N; ++y) {
          if (x < w && fig5_s(w, x, y)) e.s.emplace_back(w, x, y);
        }
      }
    }
    check_edges(m.frame, e);
    CHECK(m.valuation.empty());
  }
}

TEST_CASE("property signatures across truncation sizes") {
  for (int N = 1; N <= 6; ++N) {
    CAPTURE(N);
    Frame f3 = build_family(Family::Figure3, N).frame;
    CHECK(frame_class_check(f3, lookup_logic("CL")));
    CHECK(check_frame_property(f3, FrameProperty::J5) == (N < 2));

    Frame f4 = build_family(Family::Figure4, N).frame;
    CHECK(frame_class_check(f4, lookup_logic("IL-(J1,J5)")));
    CHECK(check_frame_property(f4, FrameProperty::J4plus) == (N < 2));

    Frame f5 = build_family(Family::Figure5, N).frame;
    CHECK(frame_class_check(f5, lookup_logic("IL-(J1,J4+,J5)")));
    CHECK(check_frame_property(f5, FrameProperty::J2plus) == (N < 3));
  }
  CHECK(family_logic(Family::Figure2).name == "IL-(J1,J5)");
  CHECK(family_logic(Family::Figure3).name == "CL");
  CHECK(family_logic(Family::Figure4).name == "IL-(J1,J5)");
  CHECK(family_logic(Family::Figure5).name == "IL-(J1,J4+,J5)");
}

TEST_CASE("size limits") {
  CHECK_THROWS_AS(build_family(Family::Figure3, 0), FamilyError);
  CHECK_THROWS_AS(build_family(Family::Figure4, -1), FamilyError);
  CHECK_THROWS_AS(build_family(Family::Figure5, 0), FamilyError);
  CHECK(build_family(Family::Figure3, 15).frame.size() == 32);
  CHECK_THROWS_AS(build_family(Family::Figure3, 16), FamilyError);
  CHECK(build_family(Family::Figure4, 30).frame.size() == 32);
  CHECK_THROWS_AS(build_family(Family::Figure4, 31), FamilyError);
  CHECK(build_family(Family::Figure5, 31).frame.size() == 32);
  CHECK_THROWS_AS(build_family(Family::Figure5, 32), FamilyError);
}

TEST_CASE("growing a truncation never changes truth at retained worlds") {
  std::vector<Formula> probes = {
      q, box(q), rhd(q, q), rhd(top(), neg(q)), box(neg(box(q))),
      iff(q, rhd(q, q)), rhd(neg(q), bot()), dia(rhd(top(), q)),
  };
  for (Family fam : {Family::Figure3, Family::Figure4, Family::Figure5}) {
    for (int N : {2, 5}) {
      Model small = build_family(fam, N);
      Model large = build_family(fam, N + 1);
      for (Formula f : probes) {
        for (const std::string& w : small.frame.worlds) {
          CAPTURE(render(f));
          CAPTURE(w);
          CHECK(holds(small, small.frame.world_index(w), f) ==
                holds(large, large.frame.world_index(w), f));
          CHECK(truncation_sound(fam, N, f, w));
        }
      }
    }
  }
  CHECK_THROWS_AS(truncation_sound(Family::Figure2, 2, q, "w"), FamilyError);
}

TEST_CASE("scan rejects mismatched requests") {
  CHECK_THROWS_AS(no_fixed_point_scan(Family::Figure2, FpShape::ARhdQ, 4, 2), FamilyError);
  CHECK_THROWS_AS(no_fixed_point_scan(Family::Figure3, FpShape::TopRhdNotA, 4, 2), FamilyError);
  CHECK_THROWS_AS(no_fixed_point_scan(Family::Figure5, FpShape::ARhdQ, 4, 2), FamilyError);
  CHECK_THROWS_AS(no_fixed_point_scan(Family::Figure4, FpShape::ARhdQ, 1, 2), FamilyError);
}

TEST_CASE("no depth-2 candidate survives the chain scans") {
  for (Family fam : {Family::Figure3, Family::Figure4}) {
    CAPTURE(fam == Family::Figure3 ? 3 : 4);
    ScanReport rep = no_fixed_point_scan(fam, FpShape::ARhdQ, 10, 2);
    CHECK(rep.raw_candidates == 302);
    CHECK(rep.candidates.size() == 26);
    CHECK(rep.survivors == 0);
    for (const ScanCandidate& c : rep.candidates) {
      REQUIRE(c.fail_world.has_value());
      CHECK(c.tail_stable);
      // refuting worlds stay within the index window, so they persist in
      // every larger truncation
      std::string name = *c.fail_world;
      if (fam == Family::Figure3) {
        CHECK((name[0] == 'x' || name[0] == 'y'));
        CHECK(std::stoi(name.substr(1)) <= 9);
      } else {
        CHECK(std::stoi(name) <= 9);
      }
    }
  }

  ScanReport rep5 = no_fixed_point_scan(Family::Figure5, FpShape::TopRhdNotA, 10, 3);
  CHECK(rep5.candidates.size() == 8);
  CHECK(rep5.survivors == 0);
  for (const ScanCandidate& c : rep5.candidates) {
    REQUIRE(c.fail_world.has_value());
    CHECK(c.tail_stable);
    CHECK(std::stoi(*c.fail_world) <= 9);
  }
}

TEST_CASE("hand-checked scan verdicts for simple candidates") {
  // a = q on family 3: at y0 the equation q <-> q |> q has a false left and
  // a vacuously true right side
  ScanReport rep3 = no_fixed_point_scan(Family::Figure3, FpShape::ARhdQ, 4, 1);
  bool sawQ = false;
  for (const ScanCandidate& c : rep3.candidates) {
    if (c.a == q) {
      sawQ = true;
      REQUIRE(c.fail_world.has_value());
      CHECK(*c.fail_world == "y0");
    }
  }
  CHECK(sawQ);
  CHECK(rep3.raw_candidates == 12);  // {false, q} closed once under [], ->, |>
  CHECK(rep3.candidates.size() < rep3.raw_candidates);

  // a = false on family 5: at the R-minimal world 0 the right side is vacuous
  ScanReport rep5 = no_fixed_point_scan(Family::Figure5, FpShape::TopRhdNotA, 4, 1);
  bool sawBot = false;
  for (const ScanCandidate& c : rep5.candidates) {
    if (c.a == bot()) {
      sawBot = true;
      REQUIRE(c.fail_world.has_value());
      CHECK(*c.fail_world == "0");
    }
  }
  CHECK(sawBot);
}
