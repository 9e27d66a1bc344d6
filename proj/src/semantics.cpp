#include "veltman/semantics.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "veltman/analysis.hpp"

namespace veltman {

EvalProgram compile(Formula f) {
  EvalProgram p;
  p.source = f;
  p.vars = variables(f);

  std::unordered_map<std::uint32_t, std::uint16_t> slotOf;  // formula id -> code index
  // post-order emission over the subformula DAG
  struct Item {
    Formula f;
    bool expanded;
  };
  std::vector<Item> stack{{f, false}};
  while (!stack.empty()) {
    auto [g, expanded] = stack.back();
    stack.pop_back();
    if (slotOf.contains(g.id)) continue;
    if (!expanded) {
      stack.push_back({g, true});
      switch (op_of(g)) {
        case Op::Bot:
        case Op::Var:
          break;
        case Op::Box:
          stack.push_back({lhs(g), false});
          break;
        case Op::Imp:
        case Op::Rhd:
          stack.push_back({rhs(g), false});
          stack.push_back({lhs(g), false});
          break;
      }
      continue;
    }
    EvalProgram::Ins ins;
    ins.op = op_of(g);
    ins.minSlot = EvalProgram::kNoVar;
    switch (ins.op) {
      case Op::Bot:
        break;
      case Op::Var: {
        auto it = std::find(p.vars.begin(), p.vars.end(), var_name(g));
        ins.a = static_cast<std::uint16_t>(it - p.vars.begin());
        ins.minSlot = static_cast<std::uint8_t>(ins.a);
        break;
      }
      case Op::Box: {
        ins.a = slotOf.at(lhs(g).id);
        ins.minSlot = p.code[ins.a].minSlot;
        break;
      }
      case Op::Imp:
      case Op::Rhd: {
        ins.a = slotOf.at(lhs(g).id);
        ins.b = slotOf.at(rhs(g).id);
        ins.minSlot = std::min(p.code[ins.a].minSlot, p.code[ins.b].minSlot);
        break;
      }
    }
    slotOf.emplace(g.id, static_cast<std::uint16_t>(p.code.size()));
    p.code.push_back(ins);
  }
  return p;
}

void eval_step(const EvalProgram& p, const Frame& fr, const WorldMask* varMasks,
               WorldMask* values, int changedSlot) {
  const int n = fr.size();
  const WorldMask full = fr.all_worlds();
  const WorldMask* rr = fr.r.data();
  const WorldMask* ss = fr.s.data();
  const std::size_t count = p.code.size();
  for (std::size_t i = 0; i < count; ++i) {
    const auto& ins = p.code[i];
    if (ins.minSlot > changedSlot) continue;
    switch (ins.op) {
      case Op::Bot:
        values[i] = 0;
        break;
      case Op::Var:
        values[i] = varMasks[ins.a];
        break;
      case Op::Imp:
        values[i] = (~values[ins.a] | values[ins.b]) & full;
        break;
      case Op::Box: {
        WorldMask va = values[ins.a], out = 0;
        for (int w = 0; w < n; ++w) out |= WorldMask{(rr[w] & ~va) == 0} << w;
        values[i] = out;
        break;
      }
      case Op::Rhd: {
        WorldMask va = values[ins.a], vb = values[ins.b], out = 0;
        for (int w = 0; w < n; ++w) {
          WorldMask t = rr[w] & va;
          bool ok = true;
          const WorldMask* row = ss + static_cast<std::size_t>(w) * n;
          while (t) {
            int x = std::countr_zero(t);
            t &= t - 1;
            if ((row[x] & vb) == 0) {
              ok = false;
              break;
            }
          }
          out |= WorldMask{ok} << w;
        }
        values[i] = out;
        break;
      }
    }
  }
}

WorldMask full_eval(const EvalProgram& p, const Frame& fr, const WorldMask* varMasks,
                    WorldMask* values) {
  eval_step(p, fr, varMasks, values, EvalProgram::kNoVar);
  return values[p.code.size() - 1];
}

WorldMask truth_mask(const Model& m, Formula f) {
  EvalProgram p = compile(f);
  std::vector<WorldMask> varMasks(p.vars.size());
  for (std::size_t i = 0; i < p.vars.size(); ++i) {
    auto it = m.valuation.find(p.vars[i]);
    varMasks[i] = it == m.valuation.end() ? 0 : it->second;
  }
  std::vector<WorldMask> values(p.code.size());
  return full_eval(p, m.frame, varMasks.data(), values.data());
}

bool holds(const Model& m, int world, Formula f) {
  if (world < 0 || world >= m.frame.size()) throw FrameError("world index out of range");
  return truth_mask(m, f) >> world & 1;
}

bool holds(const Model& m, std::string_view world, Formula f) {
  return holds(m, m.frame.world_index(world), f);
}

bool valid_in_model(const Model& m, Formula f) {
  return truth_mask(m, f) == m.frame.all_worlds();
}

std::optional<FrameRefutation> refute_in_frame(const Frame& fr, Formula f) {
  EvalProgram p = compile(f);
  const int k = p.num_vars();
  const int n = fr.size();
  const WorldMask full = fr.all_worlds();
  std::vector<WorldMask> varMasks(k, 0);
  std::vector<WorldMask> values(p.code.size());
  const std::uint64_t perVar = std::uint64_t{1} << n;

  WorldMask root = full_eval(p, fr, varMasks.data(), values.data());
  std::uint64_t total = 1;
  for (int i = 0; i < k; ++i) total *= perVar;
  for (std::uint64_t step = 0;; ++step) {
    if (root != full) {
      FrameRefutation ref;
      for (int i = 0; i < k; ++i) ref.valuation[p.vars[i]] = varMasks[i];
      ref.world = std::countr_zero(~root & full);
      return ref;
    }
    if (step + 1 >= total) return std::nullopt;
    // odometer: slot 0 fastest
    int slot = 0;
    while (std::uint64_t{varMasks[slot]} + 1 == perVar) {
      varMasks[slot] = 0;
      ++slot;
    }
    ++varMasks[slot];
    eval_step(p, fr, varMasks.data(), values.data(), slot);
    root = values[p.code.size() - 1];
  }
}

bool valid_in_frame(const Frame& fr, Formula f) { return !refute_in_frame(fr, f).has_value(); }

bool check_frame_property(const Frame& fr, FrameProperty p) {
  const int n = fr.size();
  switch (p) {
    case FrameProperty::Base:
      try {
        fr.validate();
      } catch (const FrameError&) {
        return false;
      }
      return true;
    case FrameProperty::J1:
      for (int w = 0; w < n; ++w) {
        for (WorldMask t = fr.r[w]; t; t &= t - 1) {
          int x = std::countr_zero(t);
          if (!(fr.s_row(w, x) >> x & 1)) return false;
        }
      }
      return true;
    case FrameProperty::J4plus:
      for (int w = 0; w < n; ++w) {
        for (int x = 0; x < n; ++x) {
          if (fr.s_row(w, x) & ~fr.r[w]) return false;
        }
      }
      return true;
    case FrameProperty::J2plus: {
      if (!check_frame_property(fr, FrameProperty::J4plus)) return false;
      for (int w = 0; w < n; ++w) {
        for (int x = 0; x < n; ++x) {
          for (WorldMask t = fr.s_row(w, x); t; t &= t - 1) {
            int y = std::countr_zero(t);
            if (fr.s_row(w, y) & ~fr.s_row(w, x)) return false;
          }
        }
      }
      return true;
    }
    case FrameProperty::J5:
      for (int w = 0; w < n; ++w) {
        for (WorldMask t = fr.r[w]; t; t &= t - 1) {
          int x = std::countr_zero(t);
          if (fr.r[x] & ~fr.s_row(w, x)) return false;
        }
      }
      return true;
  }
  return false;
}

Model generated_submodel(const Model& m, int world) {
  const Frame& fr = m.frame;
  if (world < 0 || world >= fr.size()) throw FrameError("world index out of range");
  if (!check_frame_property(fr, FrameProperty::J4plus)) {
    throw FrameError("generated submodel requires S confined to R-successors");
  }
  WorldMask keep = fr.r[world] | (WorldMask{1} << world);
  std::vector<int> newIndex(fr.size(), -1);
  Model out;
  for (int w = 0; w < fr.size(); ++w) {
    if (keep >> w & 1) {
      newIndex[w] = out.frame.size();
      out.frame.worlds.push_back(fr.worlds[w]);
    }
  }
  int n = out.frame.size();
  auto remap = [&](WorldMask mask) {
    WorldMask r = 0;
    for (WorldMask t = mask & keep; t; t &= t - 1) {
      r |= WorldMask{1} << newIndex[std::countr_zero(t)];
    }
    return r;
  };
  out.frame.r.assign(n, 0);
  out.frame.s.assign(static_cast<std::size_t>(n) * n, 0);
  for (int w = 0; w < fr.size(); ++w) {
    if (newIndex[w] < 0) continue;
    out.frame.r[newIndex[w]] = remap(fr.r[w]);
    for (int x = 0; x < fr.size(); ++x) {
      if (newIndex[x] < 0) continue;
      out.frame.s_row(newIndex[w], newIndex[x]) = remap(fr.s_row(w, x));
    }
  }
  for (const auto& [v, mask] : m.valuation) out.valuation[v] = remap(mask);
  out.validate();
  return out;
}

Model generated_submodel(const Model& m, std::string_view world) {
  return generated_submodel(m, m.frame.world_index(world));
}

}  // namespace veltman
