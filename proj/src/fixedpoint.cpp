#include "veltman/fixedpoint.hpp"

#include <algorithm>
#include <bit>

#include "veltman/analysis.hpp"
#include "veltman/semantics.hpp"

namespace veltman {
namespace {

void require_modalized(Formula a, std::string_view p) {
  if (!is_modalized(a, p, false)) {
    throw FixedPointError("formula is not modalized in " + std::string(p));
  }
}

// Maximal p-containing subformulas with a modal root, canonical order.
void maximal_modal_subs(Formula a, std::string_view p, std::vector<Formula>& out) {
  if (!contains_var(a, p)) return;
  switch (op_of(a)) {
    case Op::Box:
    case Op::Rhd:
      if (std::ranges::find(out, a) == out.end()) out.push_back(a);
      return;
    case Op::Imp:
      maximal_modal_subs(lhs(a), p, out);
      maximal_modal_subs(rhs(a), p, out);
      return;
    case Op::Bot:
    case Op::Var:
      return;  // a == p cannot occur for modalized input
  }
}

struct Synth {
  const Logic& logic;
  std::string p;
  bool generalRoute;  // logic covers J2+ and J5
  bool leftRoute;     // logic covers J4+ and J5 and input stays left-modalized
  int freshCounter = 0;
  FixedPointResult result;

  Formula fresh_var(Formula a) {
    while (true) {
      std::string name = "_r" + std::to_string(freshCounter++);
      if (!contains_var(a, name)) return var(name);
    }
  }

  Formula primitive(Formula a, std::string_view v) {
    if (op_of(a) == Op::Box) {
      Formula f = box(substitute(lhs(a), v, top()));
      result.trace.emplace_back(a, "box");
      return f;
    }
    // modal root |>
    Formula c = lhs(a), d = rhs(a);
    if (generalRoute) {
      Formula cTop = substitute(c, v, top());
      Formula f = rhd(cTop, substitute(d, v, box(neg(cTop))));
      result.trace.emplace_back(a, "arrow");
      return f;
    }
    // left route: d is v-free because the input is left-modalized
    Formula f = rhd(substitute(c, v, box(neg(substitute(c, v, top())))), d);
    result.trace.emplace_back(a, "arrow-left");
    return f;
  }

  Formula solve(Formula a, std::string_view v) {
    if (!contains_var(a, v)) {
      result.trace.emplace_back(a, "constant");
      return a;
    }
    if (op_of(a) == Op::Box || op_of(a) == Op::Rhd) return primitive(a, v);
    // abstract the canonically last maximal modal v-subformula
    std::vector<Formula> subs;
    maximal_modal_subs(a, v, subs);
    std::sort(subs.begin(), subs.end(), FormulaLess{});
    Formula d = subs.back();
    Formula r = fresh_var(a);
    Formula abstracted = replace_subformula(a, d, r);
    result.trace.emplace_back(a, "compose");
    Formula f1 = solve(abstracted, v);
    Formula g = primitive(substitute(d, v, f1), var_name(r));
    return substitute(f1, var_name(r), g);
  }
};

}  // namespace

Formula fp_primitive_box(Formula a, std::string_view p) {
  if (!is_modalized(box(a), p, true)) {
    throw FixedPointError("[]A must be left-modalized in " + std::string(p));
  }
  return box(substitute(a, p, top()));
}

Formula fp_primitive_rhd(Formula a, Formula b, std::string_view p) {
  Formula aTop = substitute(a, p, top());
  return rhd(aTop, substitute(b, p, box(neg(aTop))));
}

Formula fp_primitive_left(Formula a, Formula b, std::string_view p) {
  if (contains_var(b, p)) {
    throw FixedPointError("right side must not mention " + std::string(p));
  }
  if (!is_modalized(rhd(a, b), p, true)) {
    throw FixedPointError("A |> B must be left-modalized in " + std::string(p));
  }
  return rhd(substitute(a, p, box(neg(substitute(a, p, top())))), b);
}

FixedPointResult fixed_point(const Logic& l, Formula a, std::string_view p) {
  require_modalized(a, p);
  const Logic& general = lookup_logic("IL-(J2+,J5)");
  const Logic& left = lookup_logic("IL-(J4+,J5)");
  Synth synth{l, std::string(p), extends(general, l), false, 0, {}};
  if (!synth.generalRoute) {
    if (extends(left, l) && is_modalized(a, p, true)) {
      synth.leftRoute = true;
    } else {
      throw FixedPointError("logic " + l.name + " is too weak for this fixed point" +
                            (extends(left, l) ? " (input is not left-modalized)" : ""));
    }
  }
  synth.result.input = a;
  synth.result.variable = p;
  Formula f = synth.solve(a, p);
  synth.result.fixpoint = f;
  // internal consistency: the output may not mention p or any new variable
  auto va = variables(a);
  for (const std::string& v : variables(f)) {
    if (v == p || std::ranges::find(va, v) == va.end()) {
      throw FixedPointError("internal error: fixed point mentions " + v);
    }
  }
  return synth.result;
}

Report verify_fixed_point(const Logic& l, Formula a, std::string_view p, Formula f,
                          const SearchBudget& budget, std::span<const Model> extras) {
  auto va = variables(a);
  for (const std::string& v : variables(f)) {
    if (v == p) throw VariableConditionError("candidate fixed point mentions " + std::string(p));
    if (std::ranges::find(va, v) == va.end()) {
      throw VariableConditionError("candidate fixed point mentions foreign variable " + v);
    }
  }
  Formula claim = iff(f, substitute(a, p, f));
  for (const Model& m : extras) {
    WorldMask mask = truth_mask(m, claim);
    WorldMask full = m.frame.all_worlds();
    if (mask != full) {
      Report r;
      r.status = Report::Status::Refuted;
      r.bound = m.frame.size();
      r.frames_checked = 1;
      int world = std::countr_zero(~mask & full);
      r.witness = Witness{m, m.frame.worlds[world]};
      return r;
    }
  }
  Report r = find_countermodel(l, claim, budget);
  r.frames_checked += extras.size();
  return r;
}

Formula ufp_formula(Formula a, std::string_view p) {
  std::string q = "q";
  for (int i = 0; q == p || contains_var(a, q); ++i) q = "q" + std::to_string(i);
  Formula pv = var(p), qv = var(q);
  return imp(conj(boxdot(iff(pv, a)), boxdot(iff(qv, substitute(a, p, qv)))), iff(pv, qv));
}

Report ufp_check(const Logic& l, Formula a, std::string_view p, const SearchBudget& budget) {
  require_modalized(a, p);
  return find_countermodel(l, ufp_formula(a, p), budget);
}

}  // namespace veltman
