#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "veltman/analysis.hpp"
#include "veltman/formula.hpp"
#include "veltman/parser.hpp"

using namespace veltman;

namespace {

Formula random_formula(std::mt19937_64& rng, int depth) {
  static const std::vector<std::string> names{"p", "q", "r", "s1", "longName"};
  std::uniform_int_distribution<int> atom(0, 5);
  std::uniform_int_distribution<int> any(0, 9);
  if (depth == 0 || any(rng) < 2) {
    int a = atom(rng);
    return a == 5 ? bot() : var(names[a % names.size()]);
  }
  switch (any(rng)) {
    case 0:
    case 1: return box(random_formula(rng, depth - 1));
    case 2:
    case 3:
    case 4:
      return imp(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    default:
      return rhd(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("interning gives structural equality through handles") {
  CHECK(imp(var("p"), bot()) == imp(var("p"), bot()));
  CHECK(rhd(var("p"), var("q")) == rhd(var("p"), var("q")));
  CHECK(var("p") != var("q"));
  CHECK(box(bot()) != bot());
  CHECK(bot() == bot());
}

TEST_CASE("sugar expands into the five-constructor core") {
  Formula p = var("p"), q = var("q");
  CHECK(top() == imp(bot(), bot()));
  CHECK(neg(p) == imp(p, bot()));
  CHECK(dia(p) == imp(box(imp(p, bot())), bot()));
  CHECK(conj(p, q) == imp(imp(p, imp(q, bot())), bot()));
  CHECK(disj(p, q) == imp(imp(p, bot()), q));
  CHECK(iff(p, q) == conj(imp(p, q), imp(q, p)));
  CHECK(boxdot(p) == conj(p, box(p)));
}

TEST_CASE("node access and tree size") {
  Formula f = rhd(var("p"), imp(var("q"), bot()));
  CHECK(op_of(f) == Op::Rhd);
  CHECK(lhs(f) == var("p"));
  CHECK(op_of(rhs(f)) == Op::Imp);
  CHECK(var_name(var("p")) == "p");
  CHECK(tree_size(bot()) == 1);
  CHECK(tree_size(var("p")) == 1);
  CHECK(tree_size(f) == 5);
  CHECK(tree_size(box(f)) == 6);
}

TEST_CASE("parsing precedence and associativity") {
  Formula p = var("p"), q = var("q"), r = var("r");
  CHECK(parse("p |> q") == rhd(p, q));
  CHECK(parse("<> p") == dia(p));
  CHECK(parse("[]p -> p |> false") == imp(box(p), rhd(p, bot())));
  CHECK(parse("p -> q -> r") == imp(p, imp(q, r)));
  CHECK(parse("p & q | r") == disj(conj(p, q), r));
  CHECK(parse("p | q & r") == disj(p, conj(q, r)));
  CHECK(parse("~[]p") == neg(box(p)));
  CHECK(parse("!p") == neg(p));
  CHECK(parse("p <-> q <-> r") == iff(iff(p, q), r));
  CHECK(parse("p & q |> r") == conj(p, rhd(q, r)));
  CHECK(parse("[]p|>q") == rhd(box(p), q));
  CHECK(parse(" true ") == top());
  CHECK(parse("false") == bot());
  CHECK(parse("trueish") == var("trueish"));
  CHECK(parse("p_1") == var("p_1"));
  CHECK(parse("(p -> q) -> r") == imp(imp(p, q), r));
}

TEST_CASE("parse errors carry offsets and expectations") {
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("p ->"), ParseError);
  CHECK_THROWS_AS(parse("(p"), ParseError);
  CHECK_THROWS_AS(parse("p q"), ParseError);
  CHECK_THROWS_AS(parse("_r0"), ParseError);
  CHECK_THROWS_AS(parse("P"), ParseError);
  try {
    parse("p |> q |> r");
    FAIL("chained |> must not parse");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 7);
    CHECK(e.expected().find("non-associative") != std::string::npos);
  }
  try {
    parse("p & ");
    FAIL("dangling & must not parse");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
}

TEST_CASE("render emits parseable core text") {
  CHECK(render(rhd(var("p"), bot())) == "p |> false");
  CHECK(render(bot()) == "false");
  CHECK(render(top()) == "true");
  CHECK(render(imp(var("p"), imp(var("q"), bot()))) == "p -> q -> false");
  CHECK(render(imp(imp(var("p"), var("q")), bot())) == "(p -> q) -> false");
  CHECK(render(box(imp(var("p"), var("q")))) == "[](p -> q)");
  CHECK(render(rhd(top(), neg(var("p")))) == "true |> (p -> false)");
}

TEST_CASE("parse after render is the identity on random formulas") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    Formula f = random_formula(rng, 5);
    CAPTURE(render(f));
    CHECK(parse(render(f)) == f);
  }
}

TEST_CASE("canonical order is total and size-major") {
  CHECK(compare(bot(), bot()) == 0);
  CHECK(compare(bot(), var("p")) < 0);
  CHECK(compare(var("p"), box(var("p"))) < 0);
  CHECK(compare(var("p"), var("q")) < 0);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    Formula a = random_formula(rng, 4), b = random_formula(rng, 4);
    CHECK(compare(a, b) == -compare(b, a));
    if (compare(a, b) == 0) CHECK(a == b);
    if (tree_size(a) < tree_size(b)) CHECK(compare(a, b) < 0);
  }
}

TEST_CASE("variables and containment") {
  CHECK(variables(rhd(var("p"), var("q"))) == std::vector<std::string>{"p", "q"});
  CHECK(variables(rhd(bot(), bot())).empty());
  CHECK(variables(boxdot(iff(var("p"), rhd(top(), neg(var("p")))))) ==
        std::vector<std::string>{"p"});
  CHECK(contains_var(box(var("p")), "p"));
  CHECK_FALSE(contains_var(box(var("p")), "q"));
}

TEST_CASE("subformulas with and without the formula itself") {
  Formula f = rhd(var("p"), var("q"));
  auto sub = subformulas(f);
  CHECK(sub == std::vector<Formula>{var("p"), var("q"), f});
  auto psub = subformulas(f, /*proper=*/true);
  CHECK(psub == std::vector<Formula>{var("p"), var("q")});
  CHECK(subformulas(bot()) == std::vector<Formula>{bot()});
  Formula g = imp(var("p"), var("p"));
  CHECK(subformulas(g).size() == 2);  // shared child counted once
}

TEST_CASE("substitution replaces every occurrence and nothing else") {
  Formula p = var("p"), q = var("q");
  CHECK(substitute(rhd(p, q), "p", top()) == rhd(top(), q));
  CHECK(substitute(box(neg(p)), "p", top()) == box(neg(top())));
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    Formula a = random_formula(rng, 4);
    CHECK(substitute(a, "p", p) == a);
    CHECK(substitute(a, "zz", q) == a);  // absent variable: no change
  }
  // all occurrences go at once, including inside the replacement's siblings
  Formula both = imp(p, box(p));
  CHECK(substitute(both, "p", q) == imp(q, box(q)));
}

TEST_CASE("replace_subformula swaps a designated subtree") {
  Formula p = var("p"), q = var("q");
  Formula f = imp(box(rhd(p, q)), rhd(p, q));
  CHECK(replace_subformula(f, rhd(p, q), var("r")) == imp(box(var("r")), var("r")));
  CHECK(replace_subformula(f, var("zz"), q) == f);
}

TEST_CASE("modalized and left-modalized predicates") {
  Formula p = var("p"), q = var("q");
  CHECK(is_modalized(rhd(top(), neg(p)), "p"));
  CHECK(is_modalized(rhd(p, q), "p", /*left_only=*/true));
  CHECK(is_modalized(rhd(q, p), "p"));
  CHECK_FALSE(is_modalized(rhd(q, p), "p", /*left_only=*/true));
  CHECK_FALSE(is_modalized(p, "p"));
  CHECK_FALSE(is_modalized(imp(p, box(p)), "p"));
  CHECK(is_modalized(box(imp(p, box(p))), "p"));
  CHECK(is_modalized(q, "p"));
  CHECK(is_modalized(q, "p", true));
  // nesting: p under a box inside a |>-right side is still a right-side occurrence
  CHECK_FALSE(is_modalized(rhd(q, box(p)), "p", true));
  CHECK(is_modalized(imp(box(p), rhd(p, q)), "p", true));
  std::mt19937_64 rng(10);
  for (int i = 0; i < 200; ++i) {
    Formula f = random_formula(rng, 4);
    if (is_modalized(f, "p", true)) CHECK(is_modalized(f, "p"));
  }
}

TEST_CASE("neg_tilde strips exactly one encoded negation") {
  Formula p = var("p");
  CHECK(neg_tilde(neg(p)) == p);
  CHECK(neg_tilde(p) == neg(p));
  CHECK(neg_tilde(bot()) == neg(bot()));
  CHECK(neg_tilde(imp(p, var("q"))) == neg(imp(p, var("q"))));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    Formula f = random_formula(rng, 4);
    Formula twice = neg_tilde(neg_tilde(f));
    CHECK((twice == f || twice == neg(neg(f))));
  }
}

TEST_CASE("boxdot expansion") {
  Formula p = var("p");
  CHECK(boxdot(p) == conj(p, box(p)));
  CHECK(variables(boxdot(rhd(p, var("q")))) == variables(rhd(p, var("q"))));
  auto sub = subformulas(boxdot(bot()));
  CHECK(std::ranges::find(sub, box(bot())) != sub.end());
}

// Independent saturation oracle for the closure: grow a set by rescanning
// all four conditions until nothing changes.  Deliberately dumb.
namespace {

std::set<Formula, FormulaLess> closure_oracle(const std::vector<Formula>& xs) {
  std::set<Formula, FormulaLess> phi(xs.begin(), xs.end());
  bool changed = true;
  while (changed) {
    changed = false;
    std::set<Formula, FormulaLess> next = phi;
    for (Formula f : phi) {
      for (Formula g : subformulas(f)) next.insert(g);
      next.insert(neg_tilde(f));
    }
    std::set<Formula, FormulaLess> comps;
    for (Formula f : next) {
      if (op_of(f) == Op::Rhd) {
        comps.insert(lhs(f));
        comps.insert(rhs(f));
      }
    }
    if (!comps.count(bot())) {
      next.insert(rhd(bot(), bot()));
      comps.insert(bot());
    }
    for (Formula a : comps) {
      for (Formula b : comps) next.insert(rhd(a, b));
      next.insert(box(neg_tilde(a)));
    }
    if (next != phi) {
      phi = std::move(next);
      changed = true;
    }
  }
  return phi;
}

}  // namespace

TEST_CASE("adequate closure matches the saturation oracle") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 60; ++i) {
    std::vector<Formula> xs;
    int count = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < count; ++k) xs.push_back(random_formula(rng, 3));
    std::vector<Formula> got = adequate_closure(xs);
    std::set<Formula, FormulaLess> expect = closure_oracle(xs);
    CHECK(std::set<Formula, FormulaLess>(got.begin(), got.end()) == expect);
    CHECK(std::is_sorted(got.begin(), got.end(), FormulaLess{}));
  }
}

TEST_CASE("closure contains the forced members") {
  Formula p = var("p"), q = var("q");
  std::vector<Formula> phi = adequate_closure({p});
  auto has = [&phi](Formula f) { return std::ranges::find(phi, f) != phi.end(); };
  CHECK(has(p));
  CHECK(has(rhd(bot(), bot())));
  CHECK(has(box(neg(bot()))));

  phi = adequate_closure({rhd(p, q)});
  auto has2 = [&phi](Formula f) { return std::ranges::find(phi, f) != phi.end(); };
  for (Formula a : {p, q, bot()}) {
    for (Formula b : {p, q, bot()}) CHECK(has2(rhd(a, b)));
  }
}

TEST_CASE("closure is idempotent, monotone, and contains its input") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 40; ++i) {
    std::vector<Formula> xs{random_formula(rng, 3), random_formula(rng, 3)};
    std::vector<Formula> phi = adequate_closure(xs);
    for (Formula f : xs) CHECK(std::ranges::find(phi, f) != phi.end());
    CHECK(adequate_closure(phi) == phi);
    std::vector<Formula> smaller{xs[0]};
    std::vector<Formula> sub = adequate_closure(smaller);
    for (Formula f : sub) CHECK(std::ranges::find(phi, f) != phi.end());
  }
}
