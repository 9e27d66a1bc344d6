#include "veltman/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <unordered_set>

#include "veltman/analysis.hpp"
#include "veltman/fixedpoint.hpp"
#include "veltman/logic.hpp"
#include "veltman/semantics.hpp"

namespace veltman {
namespace {

// ── instantiation corpus ────────────────────────────────────────────────────
// All core formulas over p, q, r of modal depth at most two, reduced to one
// representative per truth profile on the base-class frames with at most two
// worlds under every valuation.  Canonical order, smallest representatives
// kept, so prefixes of the corpus are the cheapest instances.

std::vector<Model> probe_models() {
  std::vector<Model> probes;
  const std::vector<std::string> vars{"p", "q", "r"};
  for (int n = 1; n <= 2; ++n) {
    for (const Frame& fr : enumerate_frames(n, lookup_logic("IL-"))) {
      std::uint64_t count = std::uint64_t{1} << (3 * n);
      for (std::uint64_t bits = 0; bits < count; ++bits) {
        Model m;
        m.frame = fr;
        for (int i = 0; i < 3; ++i) {
          m.valuation[vars[i]] = static_cast<WorldMask>(bits >> (i * n)) & fr.all_worlds();
        }
        probes.push_back(std::move(m));
      }
    }
  }
  return probes;
}

std::vector<Formula> build_corpus() {
  std::vector<Formula> cur{bot(), var("p"), var("q"), var("r")};
  for (int d = 0; d < 2; ++d) {
    std::unordered_set<Formula, FormulaHash> seen(cur.begin(), cur.end());
    std::vector<Formula> next = cur;
    auto add = [&](Formula f) {
      if (seen.insert(f).second) next.push_back(f);
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

  std::vector<Model> probes = probe_models();
  std::vector<Formula> out;
  std::set<std::vector<WorldMask>> profiles;
  for (Formula f : cur) {
    std::vector<WorldMask> profile;
    profile.reserve(probes.size());
    for (const Model& m : probes) profile.push_back(truth_mask(m, f));
    if (profiles.insert(std::move(profile)).second) out.push_back(f);
  }
  return out;
}

const std::vector<Formula>& corpus() {
  static const std::vector<Formula> c = build_corpus();
  return c;
}

// Deterministic pick: the top of the corpus plus seeded draws from the rest.
std::vector<Formula> singles(std::size_t top, std::size_t extra, std::mt19937_64& rng) {
  const std::vector<Formula>& c = corpus();
  top = std::min(top, c.size());
  std::vector<Formula> out(c.begin(), c.begin() + top);
  if (top < c.size()) {
    std::uniform_int_distribution<std::size_t> pick(top, c.size() - 1);
    std::set<std::size_t> chosen;
    while (chosen.size() < extra && chosen.size() < c.size() - top) chosen.insert(pick(rng));
    for (std::size_t i : chosen) out.push_back(c[i]);
  }
  return out;
}

using Pair = std::pair<Formula, Formula>;
using Triple = std::array<Formula, 3>;

std::vector<Pair> pairs(std::size_t top, std::size_t extra, std::mt19937_64& rng) {
  const std::vector<Formula>& c = corpus();
  top = std::min(top, c.size());
  std::vector<Pair> out;
  for (std::size_t i = 0; i < top; ++i) {
    for (std::size_t j = 0; j < top; ++j) out.emplace_back(c[i], c[j]);
  }
  std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
  for (std::size_t k = 0; k < extra; ++k) out.emplace_back(c[pick(rng)], c[pick(rng)]);
  return out;
}

std::vector<Triple> triples(std::size_t top, std::size_t extra, std::mt19937_64& rng) {
  const std::vector<Formula>& c = corpus();
  top = std::min(top, c.size());
  std::vector<Triple> out;
  for (std::size_t i = 0; i < top; ++i) {
    for (std::size_t j = 0; j < top; ++j) {
      for (std::size_t k = 0; k < top; ++k) out.push_back({c[i], c[j], c[k]});
    }
  }
  std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
  for (std::size_t k = 0; k < extra; ++k) out.push_back({c[pick(rng)], c[pick(rng)], c[pick(rng)]});
  return out;
}

// ── substitution contexts ───────────────────────────────────────────────────
// Formulas with the variable p acting as the hole.

std::vector<Formula> contexts_unrestricted() {
  Formula p = var("p"), q = var("q"), r = var("r");
  return {p,          neg(p),        box(p),           dia(p),
          rhd(p, q),  rhd(q, p),     imp(p, q),        conj(p, q),
          box(imp(p, q)),            rhd(conj(p, r), q)};
}

// No occurrence of the hole on the right of a |>.
std::vector<Formula> contexts_left_safe() {
  Formula p = var("p"), q = var("q"), r = var("r");
  return {p,         neg(p),         box(p),    dia(p),
          rhd(p, q), imp(p, q),      conj(p, q),
          box(imp(p, q)),            rhd(conj(p, r), q)};
}

// Hole always under a modal operator and never on the right of a |>.
std::vector<Formula> contexts_left_modalized() {
  Formula p = var("p"), q = var("q"), r = var("r");
  return {box(p),          dia(p),         rhd(p, q),
          conj(box(p), q), box(imp(p, q)), rhd(conj(p, r), q),
          imp(dia(p), box(p))};
}

std::vector<Formula> contexts_modalized() {
  std::vector<Formula> out = contexts_left_modalized();
  Formula p = var("p"), q = var("q"), r = var("r");
  out.push_back(rhd(q, p));
  out.push_back(rhd(q, conj(p, r)));
  return out;
}

Formula plug(Formula ctx, Formula x) { return substitute(ctx, "p", x); }

// ── entry table ─────────────────────────────────────────────────────────────

struct Check {
  Formula f{0};
  const Logic* logic = nullptr;
  int group = -1;  // checks sharing a group must agree on refutability
};

struct Entry {
  std::string name;
  const Logic* logic;
  Expected expected;
  std::string note;
  std::function<std::vector<Check>(std::mt19937_64&)> gen;
};

const std::vector<Entry>& entry_table() {
  static const std::vector<Entry> table = [] {
    const Logic* base = &lookup_logic("IL-");
    const Logic* j1 = &lookup_logic("IL-(J1)");
    const Logic* j2p = &lookup_logic("IL-(J2+)");
    const Logic* j4p = &lookup_logic("IL-(J4+)");
    const Logic* j2p5 = &lookup_logic("IL-(J2+,J5)");
    const Logic* j4p5 = &lookup_logic("IL-(J4+,J5)");
    const Logic* j1j5 = &lookup_logic("IL-(J1,J5)");
    const Logic* il = &lookup_logic("IL");

    std::vector<Entry> t;
    auto valid = [&t](std::string name, const Logic* l, std::string note,
                      std::function<std::vector<Formula>(std::mt19937_64&)> gen) {
      t.push_back({std::move(name), l, Expected::Valid, std::move(note),
                   [l, gen = std::move(gen)](std::mt19937_64& rng) {
                     std::vector<Check> cs;
                     for (Formula f : gen(rng)) cs.push_back({f, l, -1});
                     return cs;
                   }});
    };
    auto refutable = [&t](std::string name, const Logic* l, Formula f) {
      t.push_back({std::move(name), l, Expected::Refutable, "",
                   [l, f](std::mt19937_64&) { return std::vector<Check>{{f, l, -1}}; }});
    };

    valid("impossible-antecedent", base, "", [](std::mt19937_64& rng) {
      std::vector<Formula> out;
      for (auto& [a, b] : pairs(10, 20, rng)) out.push_back(imp(box(neg(a)), rhd(a, b)));
      return out;
    });
    valid("left-strengthening", base, "", [](std::mt19937_64& rng) {
      std::vector<Formula> out;
      for (auto& [a, b, c] : triples(5, 25, rng)) {
        out.push_back(imp(box(imp(a, b)), imp(rhd(b, c), rhd(a, c))));
      }
      return out;
    });
    valid("case-analysis", base, "", [](std::mt19937_64& rng) {
      std::vector<Formula> out;
      for (auto& [a, b, c] : triples(5, 25, rng)) {
        out.push_back(imp(rhd(conj(neg(a), b), c), imp(rhd(a, c), rhd(b, c))));
      }
      return out;
    });
    valid("final-occurrence", base, "", [](std::mt19937_64& rng) {
      std::vector<Formula> out;
      for (Formula a : singles(60, 40, rng)) {
        Formula fin = conj(a, box(neg(a)));
        out.push_back(iff(disj(a, dia(a)), disj(fin, dia(fin))));
      }
      return out;
    });
    valid("final-occurrence-transfer", base,
          "rule checked as one implication with the hypothesis boxdotted",
          [](std::mt19937_64& rng) {
            std::vector<Formula> out;
            for (auto& [a, b] : pairs(10, 20, rng)) {
              Formula hyp = imp(box(neg(a)), iff(a, b));
              Formula con = iff(conj(a, box(neg(a))), conj(b, box(neg(b))));
              out.push_back(imp(boxdot(hyp), con));
            }
            return out;
          });
    valid("substitution-boxdot-leftsafe", base, "", [](std::mt19937_64& rng) {
      std::vector<Formula> out;
      for (auto& [a, b] : pairs(5, 7, rng)) {
        for (Formula ctx : contexts_left_safe()) {
          out.push_back(imp(boxdot(iff(a, b)), iff(plug(ctx, a), plug(ctx, b))));
        }
      }
      return out;
    });
    valid("substitution-box-leftmodal", base, "", [](std::mt19937_64& rng) {
      std::vector<Formula> out;
      for (auto& [a, b] : pairs(5, 7, rng)) {
        for (Formula ctx : contexts_left_modalized()) {
          out.push_back(imp(box(iff(a, b)), iff(plug(ctx, a), plug(ctx, b))));
        }
      }
      return out;
    });
    valid("j4-from-j4plus", j4p, "", [](std::mt19937_64& rng) {
      std::vector<Formula> out;
      for (auto& [a, b] : pairs(10, 20, rng)) {
        out.push_back(axiom_instance(Schema::J4, std::vector<Formula>{a, b}));
      }
      return out;
    });
    valid("substitution-boxdot", j4p, "", [](std::mt19937_64& rng) {
      std::vector<Formula> out;
      for (auto& [a, b] : pairs(5, 7, rng)) {
        for (Formula ctx : contexts_unrestricted()) {
          out.push_back(imp(boxdot(iff(a, b)), iff(plug(ctx, a), plug(ctx, b))));
        }
      }
      return out;
    });
    valid("substitution-box-modalized", j4p, "", [](std::mt19937_64& rng) {
      std::vector<Formula> out;
      for (auto& [a, b] : pairs(5, 7, rng)) {
        for (Formula ctx : contexts_modalized()) {
          out.push_back(imp(box(iff(a, b)), iff(plug(ctx, a), plug(ctx, b))));
        }
      }
      return out;
    });
    valid("top-vs-rhd-final", j4p, "", [](std::mt19937_64& rng) {
      std::vector<Formula> out;
      std::vector<Formula> cs = singles(20, 20, rng);
      for (Formula ctx : contexts_unrestricted()) {
        Formula at = plug(ctx, top());
        for (Formula c : cs) {
          Formula ax = plug(ctx, rhd(at, c));
          out.push_back(iff(conj(at, box(neg(at))), conj(ax, box(neg(ax)))));
        }
      }
      return out;
    });
    valid("boxneg-vs-rhd-final", j4p, "", [](std::mt19937_64& rng) {
      std::vector<Formula> out;
      std::vector<Formula> cs = singles(20, 20, rng);
      for (Formula ctx : contexts_unrestricted()) {
        for (Formula c : cs) {
          Formula bn = plug(ctx, box(neg(c)));
          Formula by = plug(ctx, rhd(c, bn));
          out.push_back(iff(conj(bn, box(neg(bn))), conj(by, box(neg(by)))));
        }
      }
      return out;
    });
    valid("j2-and-j4plus-from-j2plus", j2p, "", [](std::mt19937_64& rng) {
      std::vector<Formula> out;
      for (auto& [a, b, c] : triples(5, 25, rng)) {
        out.push_back(conj(axiom_instance(Schema::J2, std::vector<Formula>{a, b, c}),
                           axiom_instance(Schema::J4plus, std::vector<Formula>{a, b, c})));
      }
      return out;
    });
    valid("chain-residue", j2p, "", [](std::mt19937_64& rng) {
      std::vector<Formula> out;
      for (auto& [a, b, c] : triples(5, 25, rng)) {
        out.push_back(imp(conj(rhd(a, b), rhd(conj(b, neg(c)), c)), rhd(a, c)));
      }
      return out;
    });
    valid("rhd-reflexivity", j1, "", [](std::mt19937_64& rng) {
      std::vector<Formula> out;
      for (Formula a : singles(60, 40, rng)) out.push_back(rhd(a, a));
      return out;
    });
    valid("final-left-collapse", j2p5,
          "stated for the J2 fragment; checked over the J2+ class from above",
          [](std::mt19937_64& rng) {
            std::vector<Formula> out;
            for (auto& [a, c] : pairs(10, 20, rng)) {
              out.push_back(iff(rhd(conj(a, box(neg(a))), c), rhd(a, c)));
            }
            return out;
          });
    valid("final-right-collapse", j2p5, "", [](std::mt19937_64& rng) {
      std::vector<Formula> out;
      for (auto& [a, c] : pairs(10, 20, rng)) {
        out.push_back(iff(rhd(c, conj(a, box(neg(a)))), rhd(c, a)));
      }
      return out;
    });
    valid("top-vs-rhd-left", j2p5,
          "stated for the J2 + J4+ fragment; checked over the J2+ class from above",
          [](std::mt19937_64& rng) {
            std::vector<Formula> out;
            std::vector<Pair> cds = pairs(4, 6, rng);
            for (Formula ctx : contexts_unrestricted()) {
              Formula at = plug(ctx, top());
              for (auto& [c, d] : cds) {
                out.push_back(iff(rhd(at, d), rhd(plug(ctx, rhd(at, c)), d)));
              }
            }
            return out;
          });
    valid("boxneg-vs-rhd-right", j2p5, "", [](std::mt19937_64& rng) {
      std::vector<Formula> out;
      std::vector<Pair> cds = pairs(4, 6, rng);
      for (Formula ctx : contexts_unrestricted()) {
        for (auto& [c, d] : cds) {
          Formula bn = plug(ctx, box(neg(c)));
          out.push_back(iff(rhd(d, bn), rhd(d, plug(ctx, rhd(c, bn)))));
        }
      }
      return out;
    });
    valid("rhd-fixpoint-step", j4p5,
          "stated for the J4 fragment; checked over the J4+ class from above",
          [](std::mt19937_64& rng) {
            std::vector<Formula> out;
            std::vector<Formula> bs = singles(15, 15, rng);
            for (Formula ctx : contexts_left_safe()) {
              Formula x1 = plug(ctx, box(neg(ctx)));
              for (Formula b : bs) {
                Formula x2 = plug(ctx, rhd(ctx, b));
                out.push_back(iff(rhd(x1, b), rhd(x2, b)));
              }
            }
            return out;
          });

    // validity of A |> B and of A -> <>B stand or fall together
    t.push_back({"rhd-diamond-agreement", j2p5, Expected::Valid, "",
                 [j2p5](std::mt19937_64& rng) {
                   std::vector<Check> cs;
                   int group = 0;
                   for (auto& [a, b] : pairs(10, 20, rng)) {
                     cs.push_back({rhd(a, b), j2p5, group});
                     cs.push_back({imp(a, dia(b)), j2p5, group});
                     ++group;
                   }
                   return cs;
                 }});
    // validity over the IL class agrees with validity of the embedded
    // formula over the J2+/J5 class
    t.push_back({"il-embedding-agreement", il, Expected::Valid,
                 "embedded side checked over IL-(J2+,J5)",
                 [il, j2p5](std::mt19937_64& rng) {
                   std::vector<Check> cs;
                   int group = 0;
                   for (Formula a : singles(40, 30, rng)) {
                     cs.push_back({a, il, group});
                     cs.push_back({embed_il(a), j2p5, group});
                     ++group;
                   }
                   return cs;
                 }});

    Formula p = var("p"), q = var("q"), r = var("r");
    refutable("rhd-reflexivity-needs-j1", base, rhd(p, p));
    refutable("diamond-rhd-needs-j5", base,
              axiom_instance(Schema::J5, std::vector<Formula>{p}));
    refutable("j4plus-needs-its-frames", j1j5,
              axiom_instance(Schema::J4plus, std::vector<Formula>{p, q, r}));
    refutable("unique-fixpoint-needs-j4plus", j1j5,
              ufp_formula(rhd(top(), neg(p)), "p"));
    return t;
  }();
  return table;
}

}  // namespace

std::vector<std::string> suite_entry_names() {
  std::vector<std::string> names;
  for (const Entry& e : entry_table()) names.push_back(e.name);
  return names;
}

std::vector<SuiteResult> run_suite(const std::vector<std::string>& names,
                                   const SearchBudget& budget) {
  const std::vector<Entry>& table = entry_table();
  std::vector<std::size_t> chosen;
  if (names.empty()) {
    for (std::size_t i = 0; i < table.size(); ++i) chosen.push_back(i);
  } else {
    for (const std::string& n : names) {
      auto it = std::ranges::find(table, n, &Entry::name);
      if (it == table.end()) throw UnknownSuiteEntryError("unknown suite entry: " + n);
      chosen.push_back(static_cast<std::size_t>(it - table.begin()));
    }
  }

  std::vector<SuiteResult> results;
  for (std::size_t idx : chosen) {
    const Entry& e = table[idx];
    SuiteResult res;
    res.name = e.name;
    res.logic = e.logic->name;
    res.expected = e.expected;
    res.note = e.note;
    auto start = std::chrono::steady_clock::now();

    // entry-local stream: stable under entry selection
    std::mt19937_64 rng(budget.sampling_seed * 1000003u + idx);
    std::vector<Check> checks = e.gen(rng);
    res.instances = checks.size();
    res.passed = true;

    std::map<int, std::pair<bool, bool>> groups;  // group -> (first refuted, seen)
    for (const Check& c : checks) {
      Report rep = find_countermodel(*c.logic, c.f, budget);
      res.frames_checked += rep.frames_checked;
      res.exhaustive = res.exhaustive && rep.exhaustive;
      if (e.expected == Expected::Refutable) {
        res.passed = rep.refuted();
        if (rep.refuted()) res.witness = rep.witness;
        continue;
      }
      if (c.group < 0) {
        if (rep.refuted()) {
          res.passed = false;
          if (res.failed_instance.empty()) {
            res.failed_instance = render(c.f);
            res.witness = rep.witness;
          }
        }
      } else {
        auto [it, fresh] = groups.try_emplace(c.group, rep.refuted(), true);
        if (!fresh && it->second.first != rep.refuted()) {
          res.passed = false;
          if (res.failed_instance.empty()) {
            res.failed_instance = render(c.f);
            if (rep.witness) res.witness = rep.witness;
          }
        }
      }
    }
    res.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(res));
  }
  return results;
}

std::string format_suite_results(const std::vector<SuiteResult>& results) {
  std::string out;
  char line[256];
  for (const SuiteResult& r : results) {
    const char* status = r.passed ? (r.expected == Expected::Valid ? "valid" : "refuted")
                                  : "FAILED";
    std::snprintf(line, sizeof line, "%-32s %-14s %-8s %6llu instances %12llu frames %7.2fs",
                  r.name.c_str(), r.logic.c_str(), status,
                  static_cast<unsigned long long>(r.instances),
                  static_cast<unsigned long long>(r.frames_checked), r.seconds);
    out += line;
    if (!r.exhaustive) out += "  [sampled]";
    if (!r.note.empty()) out += "  [" + r.note + "]";
    out += '\n';
    if (!r.passed && !r.failed_instance.empty()) {
      out += "    failing instance: " + r.failed_instance + "\n";
    }
  }
  return out;
}

}  // namespace veltman
