#pragma once
// Frames and models.
//
// A frame has worlds 0..n-1 (each carrying a display name), an accessibility
// relation R that is transitive and irreflexive, and one auxiliary relation
// S_w per world w with x S_w y only when w R x.  Relations are stored as
// per-world successor bitmasks, which caps the world count at 32; that is
// ample for both exhaustive enumeration and the bundled model families.
//
// A model adds a valuation: variable name -> set of worlds.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace veltman {

using WorldMask = std::uint32_t;
inline constexpr int kMaxWorlds = 32;

class FrameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Frame {
  std::vector<std::string> worlds;  // display names, index = world id
  std::vector<WorldMask> r;         // r[w] = R-successors of w
  std::vector<WorldMask> s;         // s[w*n + x] = S_w-successors of x

  int size() const { return static_cast<int>(worlds.size()); }
  WorldMask all_worlds() const {
    int n = size();
    return n >= kMaxWorlds ? ~WorldMask{0} : ((WorldMask{1} << n) - 1);
  }
  WorldMask s_row(int w, int x) const { return s[static_cast<std::size_t>(w) * worlds.size() + x]; }
  WorldMask& s_row(int w, int x) { return s[static_cast<std::size_t>(w) * worlds.size() + x]; }

  // World index for a display name; throws FrameError when absent.
  int world_index(std::string_view name) const;

  // Enforces the structural invariants; throws FrameError on violation.
  void validate() const;
};

// Convenience constructor from edge lists (worlds named w0..w{n-1} unless
// names are given).
Frame make_frame(int n, const std::vector<std::pair<int, int>>& rEdges,
                 const std::map<int, std::vector<std::pair<int, int>>>& sEdges,
                 std::vector<std::string> names = {});

struct Model {
  Frame frame;
  std::map<std::string, WorldMask> valuation;

  void validate() const;
};

// ── file format ─────────────────────────────────────────────────────────────
// JSON object with keys: worlds (list of names), R (list of [from,to] name
// pairs), S (map from world name to list of [x,y] name pairs), and, for
// models, valuation (map from variable name to list of world names).
Model model_from_json(const std::string& text);
Frame frame_from_json(const std::string& text);  // valuation, if present, is ignored
std::string model_to_json(const Model& m);
std::string frame_to_json(const Frame& f);
Model load_model(const std::string& path);
Frame load_frame(const std::string& path);

// Graphviz rendering: R solid, S_w dashed and labelled with w; variables
// true at a world are listed in its node label.
std::string to_dot(const Model& m);
std::string to_dot(const Frame& f);

}  // namespace veltman
