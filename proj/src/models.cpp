#include "veltman/models.hpp"

#include <algorithm>

#include "veltman/enumeration.hpp"
#include "veltman/semantics.hpp"

namespace veltman {
namespace {

Model build_figure2() {
  Model m;
  m.frame = make_frame(3, {{0, 1}}, {{0, {{1, 1}, {1, 2}}}}, {"w", "x", "y"});
  m.valuation["p"] = 0b011;  // w, x
  m.valuation["q"] = 0b110;  // x, y
  return m;
}

// Worlds x_i, y_i for i <= N; world ids 2i and 2i+1 keep R pointing to
// strictly smaller ids.
Model build_figure3(int N) {
  int n = 2 * (N + 1);
  if (n > kMaxWorlds) throw FamilyError("truncation too large");
  Model m;
  Frame& f = m.frame;
  for (int i = 0; i <= N; ++i) {
    f.worlds.push_back("x" + std::to_string(i));
    f.worlds.push_back("y" + std::to_string(i));
  }
  f.r.assign(n, 0);
  f.s.assign(static_cast<std::size_t>(n) * n, 0);
  auto xw = [](int i) { return 2 * i; };
  auto yw = [](int i) { return 2 * i + 1; };
  for (int i = 0; i <= N; ++i) {
    for (int j = 0; j < i; ++j) {
      f.r[xw(i)] |= (WorldMask{1} << xw(j)) | (WorldMask{1} << yw(j));
      f.r[yw(i)] |= (WorldMask{1} << xw(j)) | (WorldMask{1} << yw(j));
    }
  }
  for (int i = 0; i <= N; ++i) {
    for (int w : {xw(i), yw(i)}) {
      for (int a = 0; a < n; ++a) {
        if (f.r[w] >> a & 1) f.s_row(w, a) |= WorldMask{1} << a;
      }
      for (int k = 0; k + 1 < i; k += 2) {  // even k < i-1
        f.s_row(w, xw(k)) |= WorldMask{1} << xw(k + 1);
        f.s_row(w, yw(k)) |= WorldMask{1} << xw(k + 1);
      }
    }
  }
  WorldMask qMask = 0;
  for (int i = 0; i <= N; ++i) qMask |= WorldMask{1} << xw(i);
  m.valuation["q"] = qMask;
  f.validate();
  return m;
}

// Worlds 0..N plus the R-isolated v.
Model build_figure4(int N) {
  int n = N + 2;
  if (n > kMaxWorlds) throw FamilyError("truncation too large");
  const int v = N + 1;
  Model m;
  Frame& f = m.frame;
  for (int i = 0; i <= N; ++i) f.worlds.push_back(std::to_string(i));
  f.worlds.push_back("v");
  f.r.assign(n, 0);
  f.s.assign(static_cast<std::size_t>(n) * n, 0);
  for (int x = 0; x <= N; ++x) {
    for (int y = 0; y < x; ++y) f.r[x] |= WorldMask{1} << y;
  }
  for (int w = 0; w <= N; ++w) {
    for (int x = 0; x < w; ++x) {
      f.s_row(w, x) |= WorldMask{1} << x;
      for (int y = 0; y < x; ++y) f.s_row(w, x) |= WorldMask{1} << y;
      if (x % 2 == 0 && x < w - 1) f.s_row(w, x) |= WorldMask{1} << v;
    }
  }
  m.valuation["q"] = WorldMask{1} << v;
  f.validate();
  return m;
}

// Worlds 0..N.
Model build_figure5(int N) {
  int n = N + 1;
  if (n > kMaxWorlds) throw FamilyError("truncation too large");
  Model m;
  Frame& f = m.frame;
  for (int i = 0; i <= N; ++i) f.worlds.push_back(std::to_string(i));
  f.r.assign(n, 0);
  f.s.assign(static_cast<std::size_t>(n) * n, 0);
  for (int x = 0; x <= N; ++x) {
    for (int y = 0; y < x; ++y) f.r[x] |= WorldMask{1} << y;
  }
  for (int w = 0; w <= N; ++w) {
    for (int x = 0; x < w; ++x) {
      for (int y = 0; y < w; ++y) {
        if (x >= y || (x == 0 && (y % 2 == 0 || y == w - 1))) {
          f.s_row(w, x) |= WorldMask{1} << y;
        }
      }
    }
  }
  f.validate();
  return m;
}

int min_size(Family fam) { return fam == Family::Figure2 ? 0 : 1; }

}  // namespace

Model build_family(Family fam, int size) {
  if (fam != Family::Figure2 && size < min_size(fam)) {
    throw FamilyError("truncation size must be at least " + std::to_string(min_size(fam)));
  }
  switch (fam) {
    case Family::Figure2: return build_figure2();
    case Family::Figure3: return build_figure3(size);
    case Family::Figure4: return build_figure4(size);
    case Family::Figure5: return build_figure5(size);
  }
  throw FamilyError("unknown family");
}

const Logic& family_logic(Family fam) {
  switch (fam) {
    case Family::Figure2: return lookup_logic("IL-(J1,J5)");
    case Family::Figure3: return lookup_logic("CL");
    case Family::Figure4: return lookup_logic("IL-(J1,J5)");
    case Family::Figure5: return lookup_logic("IL-(J1,J4+,J5)");
  }
  throw FamilyError("unknown family");
}

bool truncation_sound(Family fam, int size, Formula f, std::string_view world) {
  if (fam == Family::Figure2) throw FamilyError("family 2 has no truncations");
  Model small = build_family(fam, size);
  Model large = build_family(fam, size + 1);
  int wSmall = small.frame.world_index(world);
  int wLarge = large.frame.world_index(world);
  return holds(small, wSmall, f) == holds(large, wLarge, f);
}

namespace {

std::vector<Formula> candidate_corpus(const std::vector<std::string>& vars, int maxDepth) {
  std::vector<Formula> atoms{bot()};
  for (const std::string& v : vars) atoms.push_back(var(v));
  std::vector<Formula> cur = atoms;
  for (int d = 0; d < maxDepth; ++d) {
    std::vector<Formula> next = cur;
    auto add = [&next](Formula f) {
      if (std::ranges::find(next, f) == next.end()) next.push_back(f);
    };
    for (Formula a : cur) add(box(a));
    for (Formula a : cur) {
      for (Formula b : cur) {
        add(imp(a, b));
        add(rhd(a, b));
      }
    }
    cur = std::move(next);
  }
  std::sort(cur.begin(), cur.end(), FormulaLess{});
  return cur;
}

// Indexed worlds of a truncation, in index order; each entry may list the
// two chain worlds sharing the index.
std::vector<std::vector<int>> indexed_worlds(Family fam, const Model& m, int upTo) {
  std::vector<std::vector<int>> out;
  for (int i = 0; i <= upTo; ++i) {
    std::vector<int> ids;
    if (fam == Family::Figure3) {
      ids = {2 * i, 2 * i + 1};
    } else {
      ids = {m.frame.world_index(std::to_string(i))};
    }
    out.push_back(std::move(ids));
  }
  return out;
}

}  // namespace

ScanReport no_fixed_point_scan(Family fam, FpShape shape, int size, int maxDepth) {
  const bool wantsQ = fam == Family::Figure3 || fam == Family::Figure4;
  if (fam == Family::Figure2) throw FamilyError("family 2 is not a scan family");
  if (wantsQ != (shape == FpShape::ARhdQ)) {
    throw FamilyError("shape does not match family (families 3 and 4 use p <-> p |> q, family 5 uses p <-> true |> ~p)");
  }
  if (size < 2) throw FamilyError("scan needs a truncation of size at least 2");

  ScanReport report;
  report.family = fam;
  report.shape = shape;
  report.size = size;
  report.max_depth = maxDepth;

  std::vector<std::string> vars;
  if (wantsQ) vars.push_back("q");
  std::vector<Formula> corpus = candidate_corpus(vars, maxDepth);
  report.raw_candidates = corpus.size();

  // probe set for semantic deduplication: class frames on <= 2 worlds under
  // every valuation of the alphabet, plus the size-4 truncation
  std::vector<Model> probes;
  for (int n = 1; n <= 2; ++n) {
    for (const Frame& fr : enumerate_frames(n, family_logic(fam))) {
      std::uint64_t count = std::uint64_t{1} << (n * vars.size());
      for (std::uint64_t bits = 0; bits < count; ++bits) {
        Model m;
        m.frame = fr;
        for (std::size_t i = 0; i < vars.size(); ++i) {
          m.valuation[vars[i]] = static_cast<WorldMask>(bits >> (i * n)) & fr.all_worlds();
        }
        probes.push_back(std::move(m));
      }
    }
  }
  probes.push_back(build_family(fam, 4));

  std::vector<Formula> dedup;
  {
    std::vector<std::vector<WorldMask>> seen;
    for (Formula a : corpus) {
      std::vector<WorldMask> profile;
      for (const Model& m : probes) profile.push_back(truth_mask(m, a));
      if (std::ranges::find(seen, profile) == seen.end()) {
        seen.push_back(std::move(profile));
        dedup.push_back(a);
      }
    }
  }

  Model trunc = build_family(fam, size);
  auto byIndex = indexed_worlds(fam, trunc, size - 1);
  for (Formula a : dedup) {
    Formula equation = shape == FpShape::ARhdQ ? iff(a, rhd(a, var("q")))
                                               : iff(a, rhd(top(), neg(a)));
    WorldMask mask = truth_mask(trunc, equation);
    ScanCandidate cand;
    cand.a = a;
    for (const auto& ids : byIndex) {
      for (int w : ids) {
        if (!(mask >> w & 1)) {
          cand.fail_world = trunc.frame.worlds[w];
          break;
        }
      }
      if (cand.fail_world) break;
    }
    // tail stability of the candidate itself on indices [size/2, size-1]
    WorldMask truth = truth_mask(trunc, a);
    cand.tail_stable = true;
    int lo = size / 2;
    std::vector<std::vector<bool>> chains(fam == Family::Figure3 ? 2 : 1);
    for (int i = lo; i <= size - 1; ++i) {
      for (std::size_t c = 0; c < chains.size(); ++c) {
        chains[c].push_back(truth >> byIndex[i][c] & 1);
      }
    }
    for (const auto& chain : chains) {
      for (bool b : chain) {
        if (b != chain.front()) cand.tail_stable = false;
      }
    }
    if (!cand.fail_world) ++report.survivors;
    report.candidates.push_back(std::move(cand));
  }
  return report;
}

}  // namespace veltman
