#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace perkh {

// One crossing of a planar diagram. The four edge ids are listed
// counterclockwise starting at the incoming under-strand. The 0-smoothing
// joins tuple positions (1,2) and (3,4); the 1-smoothing joins (1,4) and (2,3).
struct Crossing {
  std::array<int, 4> edges;
  int sign = 1;  // +1 or -1
};

struct PeriodicSymmetry {
  int order = 2;
  std::vector<int> crossing_perm;  // image of each crossing index
  std::map<int, int> edge_perm;    // image of each edge id
};

struct OrbitMaps {
  std::map<int, int> crossing_rep;  // lift crossing index -> quotient crossing index
  std::map<int, int> edge_rep;      // lift edge id -> quotient edge id
};

// An annular link diagram: a PD code plus, per edge and per crossingless free
// loop, the mod-2 count of intersections with a fixed ray from the annulus
// axis to infinity.
struct AnnularDiagram {
  std::vector<Crossing> crossings;
  std::vector<int> free_loop_parity;
  std::map<int, int> ray_parity;  // edge id -> 0/1
  std::optional<PeriodicSymmetry> symmetry;

  int n() const { return static_cast<int>(crossings.size()); }
  int n_plus() const;
  int n_minus() const;
  std::vector<int> edge_ids() const;

  // Checks 4-valence (every edge id occurs exactly twice), sign values and
  // ray-parity coverage; throws std::invalid_argument on violation.
  void validate() const;
};

AnnularDiagram parse_diagram(const std::string& text);
std::string diagram_to_json(const AnnularDiagram& d, bool pretty = false);

// Checks that s is a free, sign- and incidence-preserving automorphism of d of
// the stated order, and that it preserves triviality classes of resolution
// circles (all 2^n resolutions when n <= sample_bound, else the extreme ones).
void validate_symmetry(const AnnularDiagram& d, const PeriodicSymmetry& s, int sample_bound = 12);

std::pair<AnnularDiagram, OrbitMaps> quotient_diagram(const AnnularDiagram& d,
                                                      const PeriodicSymmetry& s);

std::pair<AnnularDiagram, PeriodicSymmetry> lift_diagram(const AnnularDiagram& d, int p);

// True if the diagrams are related by a relabeling of crossings and edges that
// preserves tuples, signs, ray parities and free loops.
bool isomorphic(const AnnularDiagram& a, const AnnularDiagram& b);

// Closure of a braid word on `strands` strands around the annulus axis:
// generator i (1-based, positive = sigma_i, negative = sigma_i^{-1}).
// The closure arcs carry ray parity 1. Convenience constructor used by the
// bundled corpus and the randomized test harness.
AnnularDiagram braid_closure(int strands, const std::vector<int>& word);

// p-periodic closure of word repeated p times, with the rotation symmetry.
std::pair<AnnularDiagram, PeriodicSymmetry> periodic_braid_closure(int strands,
                                                                   const std::vector<int>& word,
                                                                   int p);

}  // namespace perkh
