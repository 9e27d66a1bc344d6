#include "veltman/logic.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "veltman/analysis.hpp"

namespace veltman {
namespace {

// Schemata carried by a logic, encoded as bits in canonical J1/J2+/J4+/J5 order.
enum : unsigned { kJ1 = 1, kJ2plus = 2, kJ4plus = 4, kJ5 = 8 };

unsigned close_axioms(unsigned bits) {
  if (bits & kJ2plus) bits |= kJ4plus;
  return bits;
}

std::string canonical_name(unsigned bits) {
  bits = close_axioms(bits);
  if (bits == (kJ1 | kJ2plus | kJ4plus)) return "CL";
  if (bits == (kJ1 | kJ2plus | kJ4plus | kJ5)) return "IL";
  std::string parts;
  auto add = [&parts](std::string_view s) {
    if (!parts.empty()) parts += ",";
    parts += s;
  };
  if (bits & kJ1) add("J1");
  if (bits & kJ2plus) add("J2+");
  else if (bits & kJ4plus) add("J4+");  // implicit under J2+
  if (bits & kJ5) add("J5");
  return parts.empty() ? "IL-" : "IL-(" + parts + ")";
}

Logic make_logic(unsigned bits) {
  bits = close_axioms(bits);
  Logic l;
  l.name = canonical_name(bits);
  if (bits & kJ1) l.properties.push_back(FrameProperty::J1);
  if (bits & kJ2plus) l.properties.push_back(FrameProperty::J2plus);
  else if (bits & kJ4plus) l.properties.push_back(FrameProperty::J4plus);
  if (bits & kJ5) l.properties.push_back(FrameProperty::J5);
  return l;
}

unsigned bits_of(const Logic& l) {
  unsigned bits = 0;
  for (FrameProperty p : l.properties) {
    switch (p) {
      case FrameProperty::J1: bits |= kJ1; break;
      case FrameProperty::J2plus: bits |= kJ2plus | kJ4plus; break;
      case FrameProperty::J4plus: bits |= kJ4plus; break;
      case FrameProperty::J5: bits |= kJ5; break;
      case FrameProperty::Base: break;
    }
  }
  return bits;
}

}  // namespace

bool Logic::has(FrameProperty p) const {
  if (p == FrameProperty::Base) return true;
  if (p == FrameProperty::J4plus && std::ranges::count(properties, FrameProperty::J2plus)) return true;
  return std::ranges::count(properties, p) > 0;
}

const std::vector<Logic>& all_logics() {
  static const std::vector<Logic> logics = [] {
    // every closed subset of {J1, J2+, J4+, J5}, weakest first
    const std::array<unsigned, 12> order{
        0,
        kJ1,
        kJ5,
        kJ1 | kJ5,
        kJ4plus,
        kJ1 | kJ4plus,
        kJ2plus,
        kJ1 | kJ2plus,  // CL
        kJ4plus | kJ5,
        kJ1 | kJ4plus | kJ5,
        kJ2plus | kJ5,
        kJ1 | kJ2plus | kJ5,  // IL
    };
    std::vector<Logic> out;
    for (unsigned bits : order) out.push_back(make_logic(bits));
    return out;
  }();
  return logics;
}

const Logic& lookup_logic(std::string_view name) {
  unsigned bits = 0;
  if (name == "CL") {
    bits = kJ1 | kJ2plus;
  } else if (name == "IL") {
    bits = kJ1 | kJ2plus | kJ5;
  } else if (name == "IL-") {
    bits = 0;
  } else if (name.starts_with("IL-(") && name.ends_with(")")) {
    std::string_view body = name.substr(4, name.size() - 5);
    while (!body.empty()) {
      std::size_t comma = body.find(',');
      std::string_view tok = body.substr(0, comma);
      if (tok == "J1") bits |= kJ1;
      else if (tok == "J2+") bits |= kJ2plus;
      else if (tok == "J4+") bits |= kJ4plus;
      else if (tok == "J5") bits |= kJ5;
      else throw UnknownLogicError("unknown schema '" + std::string(tok) + "' in logic name");
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
  } else {
    throw UnknownLogicError("unknown logic: " + std::string(name) +
                            " (expected IL-, IL-(J1|J2+|J4+|J5 list), CL, or IL)");
  }
  std::string canonical = canonical_name(bits);
  for (const Logic& l : all_logics()) {
    if (l.name == canonical) return l;
  }
  throw UnknownLogicError("unknown logic: " + std::string(name));
}

bool frame_class_check(const Frame& fr, const Logic& l) {
  if (!check_frame_property(fr, FrameProperty::Base)) return false;
  for (FrameProperty p : l.properties) {
    if (!check_frame_property(fr, p)) return false;
  }
  return true;
}

bool extends(const Logic& weaker, const Logic& stronger) {
  unsigned a = close_axioms(bits_of(weaker));
  unsigned b = close_axioms(bits_of(stronger));
  return (a & ~b) == 0;
}

int schema_arity(Schema s) {
  switch (s) {
    case Schema::J1: return 2;
    case Schema::J2: return 3;
    case Schema::J2plus: return 3;
    case Schema::J3: return 3;
    case Schema::J4: return 2;
    case Schema::J4plus: return 3;
    case Schema::J5: return 1;
    case Schema::J6: return 1;
    case Schema::G2: return 2;
    case Schema::G3: return 1;
  }
  return 0;
}

std::string_view schema_name(Schema s) {
  switch (s) {
    case Schema::J1: return "J1";
    case Schema::J2: return "J2";
    case Schema::J2plus: return "J2+";
    case Schema::J3: return "J3";
    case Schema::J4: return "J4";
    case Schema::J4plus: return "J4+";
    case Schema::J5: return "J5";
    case Schema::J6: return "J6";
    case Schema::G2: return "G2";
    case Schema::G3: return "G3";
  }
  return "?";
}

Formula axiom_instance(Schema s, std::span<const Formula> args) {
  if (static_cast<int>(args.size()) != schema_arity(s)) {
    throw ArityError(std::string(schema_name(s)) + " takes " + std::to_string(schema_arity(s)) +
                     " formulas, got " + std::to_string(args.size()));
  }
  switch (s) {
    case Schema::J1:
      return imp(box(imp(args[0], args[1])), rhd(args[0], args[1]));
    case Schema::J2:
      return imp(conj(rhd(args[0], args[1]), rhd(args[1], args[2])), rhd(args[0], args[2]));
    case Schema::J2plus:
      return imp(conj(rhd(args[0], disj(args[1], args[2])), rhd(args[1], args[2])),
                 rhd(args[0], args[2]));
    case Schema::J3:
      return imp(conj(rhd(args[0], args[2]), rhd(args[1], args[2])),
                 rhd(disj(args[0], args[1]), args[2]));
    case Schema::J4:
      return imp(rhd(args[0], args[1]), imp(dia(args[0]), dia(args[1])));
    case Schema::J4plus:
      return imp(box(imp(args[0], args[1])), imp(rhd(args[2], args[0]), rhd(args[2], args[1])));
    case Schema::J5:
      return rhd(dia(args[0]), args[0]);
    case Schema::J6:
      return iff(box(args[0]), rhd(neg(args[0]), bot()));
    case Schema::G2:
      return imp(box(imp(args[0], args[1])), imp(box(args[0]), box(args[1])));
    case Schema::G3:
      return imp(box(imp(box(args[0]), args[0])), box(args[0]));
  }
  throw ArityError("unknown schema");
}

Formula embed_il(Formula a) {
  std::vector<Formula> proper = subformulas(a, /*proper=*/true);
  Formula body = top();
  bool first = true;
  // canonical order, folded from the right
  for (auto it = proper.rbegin(); it != proper.rend(); ++it) {
    Formula clause = rhd(*it, *it);
    body = first ? clause : conj(clause, body);
    first = false;
  }
  return imp(boxdot(body), a);
}

}  // namespace veltman
