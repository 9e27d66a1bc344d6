#include "veltman/frame.hpp"

#include <bit>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace veltman {

int Frame::world_index(std::string_view name) const {
  for (int i = 0; i < size(); ++i) {
    if (worlds[i] == name) return i;
  }
  throw FrameError("unknown world: " + std::string(name));
}

void Frame::validate() const {
  int n = size();
  if (n < 1) throw FrameError("frame needs at least one world");
  if (n > kMaxWorlds) throw FrameError("frame exceeds " + std::to_string(kMaxWorlds) + " worlds");
  if (static_cast<int>(r.size()) != n || s.size() != static_cast<std::size_t>(n) * n) {
    throw FrameError("relation tables do not match world count");
  }
  WorldMask full = all_worlds();
  for (int w = 0; w < n; ++w) {
    if (r[w] & ~full) throw FrameError("R successor out of range");
    if (r[w] >> w & 1) throw FrameError("R must be irreflexive (world " + worlds[w] + ")");
    for (WorldMask t = r[w]; t; t &= t - 1) {
      int x = std::countr_zero(t);
      if (r[x] & ~r[w]) {
        throw FrameError("R must be transitive (via " + worlds[w] + " -> " + worlds[x] + ")");
      }
    }
  }
  for (int w = 0; w < n; ++w) {
    for (int x = 0; x < n; ++x) {
      WorldMask row = s_row(w, x);
      if (row & ~full) throw FrameError("S successor out of range");
      if (row && !(r[w] >> x & 1)) {
        throw FrameError("S_" + worlds[w] + " relates " + worlds[x] + " which is not R-accessible from " + worlds[w]);
      }
    }
  }
}

Frame make_frame(int n, const std::vector<std::pair<int, int>>& rEdges,
                 const std::map<int, std::vector<std::pair<int, int>>>& sEdges,
                 std::vector<std::string> names) {
  Frame f;
  if (names.empty()) {
    for (int i = 0; i < n; ++i) names.push_back("w" + std::to_string(i));
  }
  f.worlds = std::move(names);
  f.r.assign(n, 0);
  f.s.assign(static_cast<std::size_t>(n) * n, 0);
  for (auto [a, b] : rEdges) f.r[a] |= WorldMask{1} << b;
  for (const auto& [w, edges] : sEdges) {
    for (auto [x, y] : edges) f.s_row(w, x) |= WorldMask{1} << y;
  }
  f.validate();
  return f;
}

void Model::validate() const {
  frame.validate();
  WorldMask full = frame.all_worlds();
  for (const auto& [v, mask] : valuation) {
    if (v.empty()) throw FrameError("empty variable name in valuation");
    if (mask & ~full) throw FrameError("valuation of " + v + " mentions an out-of-range world");
  }
}

namespace {

using nlohmann::json;

Frame frame_from(const json& j) {
  if (!j.is_object()) throw FrameError("expected a JSON object");
  if (!j.contains("worlds") || !j["worlds"].is_array()) throw FrameError("missing \"worlds\" list");
  Frame f;
  for (const auto& w : j["worlds"]) {
    if (!w.is_string()) throw FrameError("world names must be strings");
    f.worlds.push_back(w.get<std::string>());
  }
  int n = f.size();
  if (n < 1) throw FrameError("frame needs at least one world");
  if (n > kMaxWorlds) throw FrameError("frame exceeds " + std::to_string(kMaxWorlds) + " worlds");
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      if (f.worlds[i] == f.worlds[k]) throw FrameError("duplicate world name: " + f.worlds[i]);
    }
  }
  f.r.assign(n, 0);
  f.s.assign(static_cast<std::size_t>(n) * n, 0);
  auto pair_of = [&f](const json& e, const char* where) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
      throw FrameError(std::string("each ") + where + " edge must be a [from, to] name pair");
    }
    return std::pair<int, int>{f.world_index(e[0].get<std::string>()),
                               f.world_index(e[1].get<std::string>())};
  };
  if (j.contains("R")) {
    if (!j["R"].is_array()) throw FrameError("\"R\" must be a list of edges");
    for (const auto& e : j["R"]) {
      auto [a, b] = pair_of(e, "R");
      f.r[a] |= WorldMask{1} << b;
    }
  }
  if (j.contains("S")) {
    if (!j["S"].is_object()) throw FrameError("\"S\" must map world names to edge lists");
    for (const auto& [wName, edges] : j["S"].items()) {
      int w = f.world_index(wName);
      if (!edges.is_array()) throw FrameError("S entries must be edge lists");
      for (const auto& e : edges) {
        auto [x, y] = pair_of(e, "S");
        f.s_row(w, x) |= WorldMask{1} << y;
      }
    }
  }
  f.validate();
  return f;
}

json frame_to(const Frame& f) {
  json j;
  j["worlds"] = f.worlds;
  json r = json::array();
  for (int w = 0; w < f.size(); ++w) {
    for (WorldMask t = f.r[w]; t; t &= t - 1) {
      r.push_back({f.worlds[w], f.worlds[std::countr_zero(t)]});
    }
  }
  j["R"] = std::move(r);
  json s = json::object();
  for (int w = 0; w < f.size(); ++w) {
    json edges = json::array();
    for (int x = 0; x < f.size(); ++x) {
      for (WorldMask t = f.s_row(w, x); t; t &= t - 1) {
        edges.push_back({f.worlds[x], f.worlds[std::countr_zero(t)]});
      }
    }
    if (!edges.empty()) s[f.worlds[w]] = std::move(edges);
  }
  j["S"] = std::move(s);
  return j;
}

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw FrameError("malformed JSON");
  return j;
}

}  // namespace

Model model_from_json(const std::string& text) {
  json j = parse_json(text);
  Model m;
  m.frame = frame_from(j);
  if (j.contains("valuation")) {
    if (!j["valuation"].is_object()) throw FrameError("\"valuation\" must map variables to world lists");
    for (const auto& [v, wl] : j["valuation"].items()) {
      if (!wl.is_array()) throw FrameError("valuation entries must be world lists");
      WorldMask mask = 0;
      for (const auto& w : wl) {
        if (!w.is_string()) throw FrameError("valuation world names must be strings");
        mask |= WorldMask{1} << m.frame.world_index(w.get<std::string>());
      }
      m.valuation[v] = mask;
    }
  }
  m.validate();
  return m;
}

Frame frame_from_json(const std::string& text) { return frame_from(parse_json(text)); }

std::string model_to_json(const Model& m) {
  json j = frame_to(m.frame);
  json val = json::object();
  for (const auto& [v, mask] : m.valuation) {
    json wl = json::array();
    for (WorldMask t = mask; t; t &= t - 1) wl.push_back(m.frame.worlds[std::countr_zero(t)]);
    val[v] = std::move(wl);
  }
  j["valuation"] = std::move(val);
  return j.dump(2);
}

std::string frame_to_json(const Frame& f) { return frame_to(f).dump(2); }

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FrameError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string dot_of(const Frame& f, const std::map<std::string, WorldMask>* valuation) {
  std::ostringstream out;
  out << "digraph frame {\n  rankdir=BT;\n  node [shape=circle];\n";
  for (int w = 0; w < f.size(); ++w) {
    out << "  n" << w << " [label=\"" << f.worlds[w];
    if (valuation) {
      std::string trueVars;
      for (const auto& [v, mask] : *valuation) {
        if (mask >> w & 1) trueVars += (trueVars.empty() ? "" : ",") + v;
      }
      if (!trueVars.empty()) out << "\\n" << trueVars;
    }
    out << "\"];\n";
  }
  for (int w = 0; w < f.size(); ++w) {
    for (WorldMask t = f.r[w]; t; t &= t - 1) {
      out << "  n" << w << " -> n" << std::countr_zero(t) << ";\n";
    }
  }
  for (int w = 0; w < f.size(); ++w) {
    for (int x = 0; x < f.size(); ++x) {
      for (WorldMask t = f.s_row(w, x); t; t &= t - 1) {
        out << "  n" << x << " -> n" << std::countr_zero(t)
            << " [style=dashed, label=\"" << f.worlds[w] << "\"];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace

Model load_model(const std::string& path) { return model_from_json(slurp(path)); }
Frame load_frame(const std::string& path) { return frame_from_json(slurp(path)); }

std::string to_dot(const Model& m) { return dot_of(m.frame, &m.valuation); }
std::string to_dot(const Frame& f) { return dot_of(f, nullptr); }

}  // namespace veltman
