#include "perkh/resolution.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace perkh {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

const Circle& ResolutionConfig::circle(int id) const {
  for (const auto& c : circles) {
    if (c.id == id) return c;
  }
  throw std::out_of_range("no circle with id " + std::to_string(id));
}

ResolutionConfig resolve(const AnnularDiagram& d, const std::vector<int>& v) {
  if (static_cast<int>(v.size()) != d.n()) {
    throw std::invalid_argument("resolution vector length must equal the crossing count");
  }
  ResolutionConfig cfg;
  cfg.diagram = d;
  cfg.v = v;

  const int n = d.n();
  // Union-find on crossing slots 4c+j; the two occurrences of an edge are
  // joined, and each smoothing joins slots within its crossing.
  UnionFind uf(4 * n);
  std::map<int, std::pair<int, int>> occurrences;  // edge -> its two slots
  for (int c = 0; c < n; ++c) {
    for (int j = 0; j < 4; ++j) {
      int e = d.crossings[c].edges[j];
      auto it = occurrences.find(e);
      if (it == occurrences.end()) {
        occurrences[e] = {4 * c + j, -1};
      } else {
        it->second.second = 4 * c + j;
      }
    }
  }
  for (const auto& [e, slots] : occurrences) uf.unite(slots.first, slots.second);
  for (int c = 0; c < n; ++c) {
    if (v[c] == 0) {
      uf.unite(4 * c + 0, 4 * c + 1);  // 0-smoothing joins tuple positions (1,2) and (3,4)
      uf.unite(4 * c + 2, 4 * c + 3);
    } else {
      uf.unite(4 * c + 0, 4 * c + 3);  // 1-smoothing joins (1,4) and (2,3)
      uf.unite(4 * c + 1, 4 * c + 2);
    }
  }

  std::map<int, std::set<int>> component_edges;  // uf root -> edges
  for (const auto& [e, slots] : occurrences) component_edges[uf.find(slots.first)].insert(e);
  std::map<int, int> root_to_circle;  // uf root -> circle id
  for (const auto& [root, edges] : component_edges) {
    Circle circ;
    circ.id = *edges.begin();
    circ.edges.assign(edges.begin(), edges.end());
    int parity = 0;
    for (int e : circ.edges) parity ^= d.ray_parity.at(e);
    circ.trivial = (parity == 0);
    root_to_circle[root] = circ.id;
    cfg.circles.push_back(circ);
  }
  // Free loops become circles carried by synthetic edges above all real ids.
  int next_synthetic = occurrences.empty() ? 0 : occurrences.rbegin()->first + 1;
  for (int par : d.free_loop_parity) {
    Circle circ;
    circ.id = next_synthetic;
    circ.edges = {next_synthetic};
    circ.trivial = (par == 0);
    cfg.circles.push_back(circ);
    ++next_synthetic;
  }
  std::sort(cfg.circles.begin(), cfg.circles.end(),
            [](const Circle& a, const Circle& b) { return a.id < b.id; });

  for (int c = 0; c < n; ++c) {
    if (v[c] != 0) continue;
    Arc arc;
    arc.crossing = c;
    int ca = root_to_circle.at(uf.find(4 * c + 0));
    int cb = root_to_circle.at(uf.find(4 * c + 2));
    arc.circle_a = std::min(ca, cb);
    arc.circle_b = std::max(ca, cb);
    cfg.arcs.push_back(arc);
  }
  return cfg;
}

int map_circle_id(const ResolutionConfig& src, int circle_id, const std::map<int, int>& edge_perm,
                  const ResolutionConfig& dst) {
  const Circle& c = src.circle(circle_id);
  for (int e : c.edges) {
    auto it = edge_perm.find(e);
    if (it == edge_perm.end()) continue;  // synthetic free-loop edge
    for (const auto& circ : dst.circles) {
      if (std::binary_search(circ.edges.begin(), circ.edges.end(), it->second)) return circ.id;
    }
    throw std::logic_error("edge image not found in target resolution");
  }
  return -1;
}

void assign_gradings(const AnnularDiagram& d, const ResolutionConfig& r, LabeledGenerator& g) {
  int weight = 0;
  for (int b : g.v) weight += b;
  g.i = weight - d.n_minus();
  int label_sum = 0;
  int annular = 0;
  for (const auto& [id, label] : g.labels) {
    label_sum += label;
    if (!r.circle(id).trivial) annular += label;
  }
  g.q = label_sum + weight + d.n_plus() - 2 * d.n_minus();
  g.k = annular;
}

std::vector<LabeledGenerator> generators(const AnnularDiagram& d) {
  const int n = d.n();
  std::vector<LabeledGenerator> out;
  std::vector<int> v(n, 0);
  for (long long mask = 0; mask < (1LL << n); ++mask) {
    // v lexicographic with v[0] most significant.
    for (int c = 0; c < n; ++c) v[c] = (mask >> (n - 1 - c)) & 1;
    ResolutionConfig r = resolve(d, v);
    const int nc = static_cast<int>(r.circles.size());
    for (long long lmask = 0; lmask < (1LL << nc); ++lmask) {
      LabeledGenerator g;
      g.v = v;
      g.labels.reserve(nc);
      for (int ci = 0; ci < nc; ++ci) {
        // + < - lexicographically, so bit 0 means +.
        int label = ((lmask >> (nc - 1 - ci)) & 1) ? -1 : +1;
        g.labels.emplace_back(r.circles[ci].id, label);
      }
      assign_gradings(d, r, g);
      out.push_back(std::move(g));
    }
  }
  return out;
}

SurgerySurface surgery_surface(const ResolutionConfig& cfg, const std::vector<int>& order,
                               int upto) {
  const int total = static_cast<int>(cfg.arcs.size());
  if (static_cast<int>(order.size()) != total) {
    throw std::invalid_argument("surgery order must be a permutation of all arcs");
  }
  {
    std::vector<bool> seen(total, false);
    for (int a : order) {
      if (a < 0 || a >= total || seen[a]) {
        throw std::invalid_argument("surgery order must be a permutation of all arcs");
      }
      seen[a] = true;
    }
  }
  if (upto < 0 || upto > total) throw std::invalid_argument("upto out of range");

  // Resolutions along the surgery sequence.
  std::vector<ResolutionConfig> steps;
  steps.push_back(cfg);
  std::vector<int> v = cfg.v;
  for (int s = 0; s < upto; ++s) {
    int crossing = cfg.arcs[order[s]].crossing;
    if (v[crossing] != 0) throw std::logic_error("arc crossing already surgered");
    v[crossing] = 1;
    steps.push_back(resolve(cfg.diagram, v));
  }

  // Union-find over (step, circle) instances; consecutive resolutions are
  // glued along shared edges, which also routes each band into its component.
  std::map<std::pair<int, int>, int> node;
  int next = 0;
  for (int s = 0; s <= upto; ++s) {
    for (const auto& c : steps[s].circles) node[{s, c.id}] = next++;
  }
  UnionFind uf(next);
  for (int s = 0; s < upto; ++s) {
    for (const auto& after : steps[s + 1].circles) {
      for (const auto& before : steps[s].circles) {
        bool shares = false;
        for (int e : after.edges) {
          if (std::binary_search(before.edges.begin(), before.edges.end(), e)) {
            shares = true;
            break;
          }
        }
        if (shares) uf.unite(node.at({s, before.id}), node.at({s + 1, after.id}));
      }
    }
  }

  std::map<int, SurfaceComponent> comps;
  for (const auto& c : steps[0].circles) {
    comps[uf.find(node.at({0, c.id}))].bottom.push_back(c.id);
  }
  for (const auto& c : steps[upto].circles) {
    comps[uf.find(node.at({upto, c.id}))].top.push_back(c.id);
  }
  for (int s = 0; s < upto; ++s) {
    // The band of step s lies on the circle(s) through the surgered crossing.
    int crossing = cfg.arcs[order[s]].crossing;
    int probe_edge = cfg.diagram.crossings[crossing].edges[0];
    for (const auto& c : steps[s].circles) {
      if (std::binary_search(c.edges.begin(), c.edges.end(), probe_edge)) {
        comps[uf.find(node.at({s, c.id}))].arcs.push_back(order[s]);
        break;
      }
    }
  }

  SurgerySurface surf;
  surf.order = order;
  for (auto& [root, comp] : comps) {
    int chi = -static_cast<int>(comp.arcs.size());
    int boundary = static_cast<int>(comp.bottom.size() + comp.top.size());
    int twice_genus = 2 - chi - boundary;
    if (twice_genus < 0 || twice_genus % 2 != 0) {
      throw std::logic_error("inconsistent surface component data");
    }
    comp.genus = twice_genus / 2;
    surf.components.push_back(comp);
  }
  return surf;
}

}  // namespace perkh
