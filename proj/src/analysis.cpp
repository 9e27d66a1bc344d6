#include "veltman/analysis.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace veltman {
namespace {

void collect_vars(Formula f, std::unordered_set<std::uint32_t>& seen, std::set<std::string>& out) {
  if (!seen.insert(f.id).second) return;
  switch (op_of(f)) {
    case Op::Bot: return;
    case Op::Var: out.insert(var_name(f)); return;
    case Op::Box: collect_vars(lhs(f), seen, out); return;
    case Op::Imp:
    case Op::Rhd:
      collect_vars(lhs(f), seen, out);
      collect_vars(rhs(f), seen, out);
      return;
  }
}

void collect_subs(Formula f, std::unordered_set<std::uint32_t>& seen, std::vector<Formula>& out) {
  if (!seen.insert(f.id).second) return;
  out.push_back(f);
  switch (op_of(f)) {
    case Op::Bot:
    case Op::Var:
      return;
    case Op::Box:
      collect_subs(lhs(f), seen, out);
      return;
    case Op::Imp:
    case Op::Rhd:
      collect_subs(lhs(f), seen, out);
      collect_subs(rhs(f), seen, out);
      return;
  }
}

}  // namespace

std::vector<std::string> variables(Formula f) {
  std::unordered_set<std::uint32_t> seen;
  std::set<std::string> out;
  collect_vars(f, seen, out);
  return {out.begin(), out.end()};
}

bool contains_var(Formula f, std::string_view p) {
  switch (op_of(f)) {
    case Op::Bot: return false;
    case Op::Var: return var_name(f) == p;
    case Op::Box: return contains_var(lhs(f), p);
    case Op::Imp:
    case Op::Rhd:
      return contains_var(lhs(f), p) || contains_var(rhs(f), p);
  }
  return false;
}

std::vector<Formula> subformulas(Formula f, bool proper) {
  std::unordered_set<std::uint32_t> seen;
  std::vector<Formula> out;
  collect_subs(f, seen, out);
  if (proper) std::erase(out, f);
  std::sort(out.begin(), out.end(), FormulaLess{});
  return out;
}

namespace {

Formula replace_rec(Formula f, Formula target, Formula g,
                    std::unordered_map<std::uint32_t, Formula>& memo) {
  if (f == target) return g;
  auto it = memo.find(f.id);
  if (it != memo.end()) return it->second;
  Formula out = f;
  switch (op_of(f)) {
    case Op::Bot:
    case Op::Var:
      break;
    case Op::Box:
      out = box(replace_rec(lhs(f), target, g, memo));
      break;
    case Op::Imp:
      out = imp(replace_rec(lhs(f), target, g, memo), replace_rec(rhs(f), target, g, memo));
      break;
    case Op::Rhd:
      out = rhd(replace_rec(lhs(f), target, g, memo), replace_rec(rhs(f), target, g, memo));
      break;
  }
  memo.emplace(f.id, out);
  return out;
}

}  // namespace

Formula substitute(Formula f, std::string_view p, Formula g) {
  std::unordered_map<std::uint32_t, Formula> memo;
  return replace_rec(f, var(p), g, memo);
}

Formula replace_subformula(Formula f, Formula d, Formula g) {
  std::unordered_map<std::uint32_t, Formula> memo;
  return replace_rec(f, d, g, memo);
}

namespace {

// Occurrences of p outside any modal scope.  Children of Box/Rhd are inside
// a modal scope, so the walk stops there.
bool no_exposed_occurrence(Formula f, std::string_view p) {
  switch (op_of(f)) {
    case Op::Bot: return true;
    case Op::Var: return var_name(f) != p;
    case Op::Box:
    case Op::Rhd:
      return true;
    case Op::Imp:
      return no_exposed_occurrence(lhs(f), p) && no_exposed_occurrence(rhs(f), p);
  }
  return true;
}

bool rhd_right_sides_avoid(Formula f, std::string_view p,
                           std::unordered_set<std::uint32_t>& seen) {
  if (!seen.insert(f.id).second) return true;
  switch (op_of(f)) {
    case Op::Bot:
    case Op::Var:
      return true;
    case Op::Box:
      return rhd_right_sides_avoid(lhs(f), p, seen);
    case Op::Imp:
      return rhd_right_sides_avoid(lhs(f), p, seen) && rhd_right_sides_avoid(rhs(f), p, seen);
    case Op::Rhd:
      if (contains_var(rhs(f), p)) return false;
      return rhd_right_sides_avoid(lhs(f), p, seen) && rhd_right_sides_avoid(rhs(f), p, seen);
  }
  return true;
}

}  // namespace

bool is_modalized(Formula f, std::string_view p, bool left_only) {
  if (!no_exposed_occurrence(f, p)) return false;
  if (!left_only) return true;
  std::unordered_set<std::uint32_t> seen;
  return rhd_right_sides_avoid(f, p, seen);
}

Formula neg_tilde(Formula f) {
  if (op_of(f) == Op::Imp && rhs(f) == bot()) return lhs(f);
  return imp(f, bot());
}

Formula boxdot(Formula f) { return conj(f, box(f)); }

std::vector<Formula> adequate_closure(const std::vector<Formula>& xs) {
  std::set<Formula, FormulaLess> phi(xs.begin(), xs.end());
  std::set<Formula, FormulaLess> arrowComponents;  // formulas on either side of a |> member

  auto scan_components = [&arrowComponents](Formula f) {
    if (op_of(f) == Op::Rhd) {
      arrowComponents.insert(lhs(f));
      arrowComponents.insert(rhs(f));
    }
  };

  bool changed = true;
  while (changed) {
    changed = false;
    // subformula and neg_tilde closure; track |>-components as members appear
    std::vector<Formula> members(phi.begin(), phi.end());
    for (Formula f : members) {
      scan_components(f);
      for (Formula s : subformulas(f)) changed |= phi.insert(s).second;
      changed |= phi.insert(neg_tilde(f)).second;
    }
    // falsum must occur among the |>-components
    if (!arrowComponents.contains(bot())) {
      changed |= phi.insert(rhd(bot(), bot())).second;
      arrowComponents.insert(bot());
    }
    // pairwise |> combinations and guarded negations of components
    std::vector<Formula> comps(arrowComponents.begin(), arrowComponents.end());
    for (Formula a : comps) {
      for (Formula b : comps) changed |= phi.insert(rhd(a, b)).second;
      changed |= phi.insert(box(neg_tilde(a))).second;
    }
  }
  return {phi.begin(), phi.end()};
}

}  // namespace veltman
