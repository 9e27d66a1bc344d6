#include "veltman/formula.hpp"

#include <deque>
#include <limits>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace veltman {
namespace {

struct NodeRec {
  Op op;
  std::uint32_t var = 0;  // symbol index for Var nodes
  Formula l{0}, r{0};
  std::uint32_t size = 1;
};

struct NodeKey {
  Op op;
  std::uint32_t var;
  std::uint32_t l, r;
  friend bool operator==(const NodeKey&, const NodeKey&) = default;
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(k.op);
    for (std::uint64_t part : {std::uint64_t{k.var}, std::uint64_t{k.l}, std::uint64_t{k.r}}) {
      h ^= part + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

// Process-wide arena.  Node storage is a deque so existing records stay put
// while new ones are interned; a shared mutex makes reads cheap and creation
// safe from concurrent contexts.
class Arena {
 public:
  static Arena& get() {
    static Arena a;
    return a;
  }

  Formula intern(Op op, std::uint32_t varIdx, Formula l, Formula r) {
    NodeKey key{op, varIdx, l.id, r.id};
    {
      std::shared_lock lock(mu_);
      auto it = index_.find(key);
      if (it != index_.end()) return Formula{it->second};
    }
    std::unique_lock lock(mu_);
    auto it = index_.find(key);
    if (it != index_.end()) return Formula{it->second};
    NodeRec rec{op, varIdx, l, r, 1};
    if (op == Op::Imp || op == Op::Rhd) {
      rec.size = sat_add(sat_add(nodes_[l.id].size, nodes_[r.id].size), 1);
    } else if (op == Op::Box) {
      rec.size = sat_add(nodes_[l.id].size, 1);
    }
    std::uint32_t id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back(rec);
    index_.emplace(key, id);
    return Formula{id};
  }

  std::uint32_t symbol(std::string_view name) {
    if (name.empty()) throw std::invalid_argument("empty variable name");
    {
      std::shared_lock lock(mu_);
      auto it = symIndex_.find(std::string(name));
      if (it != symIndex_.end()) return it->second;
    }
    std::unique_lock lock(mu_);
    auto it = symIndex_.find(std::string(name));
    if (it != symIndex_.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(symbols_.size());
    symbols_.emplace_back(name);
    symIndex_.emplace(symbols_.back(), id);
    return id;
  }

  NodeRec node(Formula f) const {
    std::shared_lock lock(mu_);
    return nodes_.at(f.id);
  }

  std::string symbol_name(std::uint32_t idx) const {
    std::shared_lock lock(mu_);
    return symbols_.at(idx);
  }

 private:
  Arena() {
    nodes_.push_back(NodeRec{Op::Bot, 0, Formula{0}, Formula{0}, 1});
    index_.emplace(NodeKey{Op::Bot, 0, 0, 0}, 0u);
  }

  static std::uint32_t sat_add(std::uint32_t a, std::uint32_t b) {
    std::uint64_t s = std::uint64_t{a} + b;
    return s > std::numeric_limits<std::uint32_t>::max()
               ? std::numeric_limits<std::uint32_t>::max()
               : static_cast<std::uint32_t>(s);
  }

  mutable std::shared_mutex mu_;
  std::deque<NodeRec> nodes_;
  std::unordered_map<NodeKey, std::uint32_t, NodeKeyHash> index_;
  std::deque<std::string> symbols_;
  std::unordered_map<std::string, std::uint32_t> symIndex_;
};

int op_rank(Op op) {
  switch (op) {
    case Op::Bot: return 0;
    case Op::Var: return 1;
    case Op::Box: return 2;
    case Op::Imp: return 3;
    case Op::Rhd: return 4;
  }
  return 5;
}

}  // namespace

Formula bot() { return Formula{0}; }

Formula var(std::string_view name) {
  Arena& a = Arena::get();
  return a.intern(Op::Var, a.symbol(name), Formula{0}, Formula{0});
}

Formula imp(Formula x, Formula y) { return Arena::get().intern(Op::Imp, 0, x, y); }
Formula box(Formula x) { return Arena::get().intern(Op::Box, 0, x, Formula{0}); }
Formula rhd(Formula x, Formula y) { return Arena::get().intern(Op::Rhd, 0, x, y); }

Formula top() { return imp(bot(), bot()); }
Formula neg(Formula a) { return imp(a, bot()); }
Formula dia(Formula a) { return neg(box(neg(a))); }
Formula conj(Formula a, Formula b) { return neg(imp(a, neg(b))); }
Formula disj(Formula a, Formula b) { return imp(neg(a), b); }
Formula iff(Formula a, Formula b) { return conj(imp(a, b), imp(b, a)); }

Op op_of(Formula f) { return Arena::get().node(f).op; }
Formula lhs(Formula f) { return Arena::get().node(f).l; }
Formula rhs(Formula f) { return Arena::get().node(f).r; }

std::string var_name(Formula f) {
  NodeRec rec = Arena::get().node(f);
  if (rec.op != Op::Var) throw std::logic_error("var_name: not a variable");
  return Arena::get().symbol_name(rec.var);
}

std::uint32_t tree_size(Formula f) { return Arena::get().node(f).size; }

int compare(Formula a, Formula b) {
  if (a == b) return 0;
  NodeRec na = Arena::get().node(a);
  NodeRec nb = Arena::get().node(b);
  if (na.size != nb.size) return na.size < nb.size ? -1 : 1;
  if (na.op != nb.op) return op_rank(na.op) < op_rank(nb.op) ? -1 : 1;
  switch (na.op) {
    case Op::Bot: return 0;
    case Op::Var: {
      std::string sa = Arena::get().symbol_name(na.var);
      std::string sb = Arena::get().symbol_name(nb.var);
      return sa.compare(sb) < 0 ? -1 : 1;
    }
    case Op::Box: return compare(na.l, nb.l);
    case Op::Imp:
    case Op::Rhd: {
      int c = compare(na.l, nb.l);
      if (c != 0) return c;
      return compare(na.r, nb.r);
    }
  }
  return 0;
}

namespace {

// Surface precedence levels used for bracketing: -> at 1, |> at 2, []/atoms at 3+.
// |> is non-associative, so both of its children get brackets unless atomic or boxed.
// The verum node renders as "true", which the parser interns right back.
void render_into(Formula f, std::string& out) {
  if (f == top()) {
    out += "true";
    return;
  }
  NodeRec rec = Arena::get().node(f);
  auto bracketed = [&out](Formula g) {
    Op op = op_of(g);
    bool need = (op == Op::Imp || op == Op::Rhd) && g != top();
    if (need) out.push_back('(');
    render_into(g, out);
    if (need) out.push_back(')');
  };
  switch (rec.op) {
    case Op::Bot:
      out += "false";
      break;
    case Op::Var:
      out += Arena::get().symbol_name(rec.var);
      break;
    case Op::Box:
      out += "[]";
      bracketed(rec.l);
      break;
    case Op::Imp: {
      // right-associative: only the left child of an implication needs brackets
      if (op_of(rec.l) == Op::Imp && rec.l != top()) {
        out.push_back('(');
        render_into(rec.l, out);
        out.push_back(')');
      } else {
        render_into(rec.l, out);
      }
      out += " -> ";
      render_into(rec.r, out);
      break;
    }
    case Op::Rhd:
      bracketed(rec.l);
      out += " |> ";
      bracketed(rec.r);
      break;
  }
}

}  // namespace

std::string render(Formula f) {
  std::string out;
  render_into(f, out);
  return out;
}

}  // namespace veltman
