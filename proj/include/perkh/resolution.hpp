#pragma once

#include <map>
#include <vector>

#include "perkh/diagram.hpp"

namespace perkh {

// A circle of a resolution. The id is the minimal edge id the circle
// contains, so labelings are comparable across operations. Crossingless free
// loops get synthetic edge ids above every real edge id.
struct Circle {
  int id = 0;
  std::vector<int> edges;  // sorted
  bool trivial = true;
};

// Surgery arc at a 0-resolved crossing; names the circle(s) it touches.
struct Arc {
  int crossing = 0;
  int circle_a = 0;
  int circle_b = 0;  // == circle_a when both feet are on one circle
};

struct ResolutionConfig {
  AnnularDiagram diagram;
  std::vector<int> v;
  std::vector<Circle> circles;
  std::vector<Arc> arcs;

  const Circle& circle(int id) const;
};

ResolutionConfig resolve(const AnnularDiagram& d, const std::vector<int>& v);

// Image of a circle of src under an edge relabeling into dst; -1 for circles
// carried by free loops (which have no real edges).
int map_circle_id(const ResolutionConfig& src, int circle_id, const std::map<int, int>& edge_perm,
                  const ResolutionConfig& dst);

struct LabeledGenerator {
  std::vector<int> v;
  std::vector<std::pair<int, int>> labels;  // (circle id, +1/-1), ascending ids
  int i = 0;
  int q = 0;
  int k = 0;
};

// Grading formulas: i = |v| - n_-, q = (#+ - #-) + |v| + n_+ - 2 n_-,
// k = #(nontrivial +) - #(nontrivial -).
void assign_gradings(const AnnularDiagram& d, const ResolutionConfig& r, LabeledGenerator& g);

// All 2^n * 2^{#circles} labeled generators in deterministic order:
// v lexicographic, then labels lexicographic on ascending circle ids (+ < -).
std::vector<LabeledGenerator> generators(const AnnularDiagram& d);

struct SurfaceComponent {
  int genus = 0;
  std::vector<int> bottom;  // circle ids of the starting resolution
  std::vector<int> top;     // circle ids of the final resolution
  std::vector<int> arcs;    // indices into the order argument's arc list
};

struct SurgerySurface {
  std::vector<SurfaceComponent> components;
  std::vector<int> order;
};

// Trace of the first `upto` surgeries of cfg performed in the given order
// (order is a permutation of arc indices). Per component,
// 2 - 2 genus - #boundary = chi = -#arcs.
SurgerySurface surgery_surface(const ResolutionConfig& cfg, const std::vector<int>& order, int upto);

}  // namespace perkh
