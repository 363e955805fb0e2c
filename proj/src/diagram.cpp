#include "perkh/diagram.hpp"

#include <algorithm>
#include <json.hpp>
#include <numeric>
#include <set>
#include <stdexcept>

#include "perkh/resolution.hpp"

namespace perkh {

using nlohmann::json;

int AnnularDiagram::n_plus() const {
  return static_cast<int>(
      std::count_if(crossings.begin(), crossings.end(), [](const Crossing& c) { return c.sign > 0; }));
}

int AnnularDiagram::n_minus() const { return n() - n_plus(); }

std::vector<int> AnnularDiagram::edge_ids() const {
  std::set<int> ids;
  for (const auto& c : crossings) ids.insert(c.edges.begin(), c.edges.end());
  return std::vector<int>(ids.begin(), ids.end());
}

void AnnularDiagram::validate() const {
  std::map<int, int> occurrences;
  for (const auto& c : crossings) {
    if (c.sign != 1 && c.sign != -1) throw std::invalid_argument("crossing sign must be +1 or -1");
    for (int e : c.edges) {
      if (e < 0) throw std::invalid_argument("edge ids must be non-negative");
      ++occurrences[e];
    }
  }
  for (const auto& [e, cnt] : occurrences) {
    if (cnt != 2) {
      throw std::invalid_argument("edge " + std::to_string(e) + " occurs " + std::to_string(cnt) +
                                  " times; a 4-valent closed diagram needs exactly 2");
    }
    auto it = ray_parity.find(e);
    if (it == ray_parity.end()) {
      throw std::invalid_argument("missing ray parity for edge " + std::to_string(e));
    }
    if (it->second != 0 && it->second != 1) {
      throw std::invalid_argument("ray parity must be 0 or 1");
    }
  }
  for (const auto& [e, par] : ray_parity) {
    if (!occurrences.count(e)) {
      throw std::invalid_argument("ray parity given for unknown edge " + std::to_string(e));
    }
  }
  for (int par : free_loop_parity) {
    if (par != 0 && par != 1) throw std::invalid_argument("free loop parity must be 0 or 1");
  }
}

AnnularDiagram parse_diagram(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed diagram JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("diagram JSON must be an object");
  AnnularDiagram d;
  for (const auto& jc : j.value("crossings", json::array())) {
    Crossing c;
    auto edges = jc.at("edges");
    if (!edges.is_array() || edges.size() != 4) {
      throw std::invalid_argument("crossing edges must be a 4-tuple");
    }
    for (int i = 0; i < 4; ++i) c.edges[i] = edges[i].get<int>();
    c.sign = jc.at("sign").get<int>();
    d.crossings.push_back(c);
  }
  for (const auto& jl : j.value("free_loops", json::array())) {
    d.free_loop_parity.push_back(jl.at("parity").get<int>());
  }
  const json ray = j.value("ray_parity", json::object());
  for (const auto& [key, val] : ray.items()) {
    d.ray_parity[std::stoi(key)] = val.get<int>();
  }
  if (j.contains("symmetry")) {
    PeriodicSymmetry s;
    const auto& js = j["symmetry"];
    s.order = js.at("order").get<int>();
    s.crossing_perm = js.at("crossing_perm").get<std::vector<int>>();
    for (const auto& [key, val] : js.at("edge_perm").items()) {
      s.edge_perm[std::stoi(key)] = val.get<int>();
    }
    d.symmetry = s;
  }
  d.validate();
  return d;
}

std::string diagram_to_json(const AnnularDiagram& d, bool pretty) {
  json j;
  j["crossings"] = json::array();
  for (const auto& c : d.crossings) {
    j["crossings"].push_back({{"edges", c.edges}, {"sign", c.sign}});
  }
  j["free_loops"] = json::array();
  for (int par : d.free_loop_parity) j["free_loops"].push_back({{"parity", par}});
  j["ray_parity"] = json::object();
  for (const auto& [e, par] : d.ray_parity) j["ray_parity"][std::to_string(e)] = par;
  if (d.symmetry) {
    json js;
    js["order"] = d.symmetry->order;
    js["crossing_perm"] = d.symmetry->crossing_perm;
    js["edge_perm"] = json::object();
    for (const auto& [e, img] : d.symmetry->edge_perm) js["edge_perm"][std::to_string(e)] = img;
    j["symmetry"] = js;
  }
  return pretty ? j.dump(2) : j.dump();
}

namespace {

std::vector<int> apply_cube_perm(const PeriodicSymmetry& s, const std::vector<int>& v) {
  std::vector<int> out(v.size());
  for (size_t c = 0; c < v.size(); ++c) out[s.crossing_perm[c]] = v[c];
  return out;
}

}  // namespace

void validate_symmetry(const AnnularDiagram& d, const PeriodicSymmetry& s, int sample_bound) {
  const int n = d.n();
  const int m = s.order;
  if (m < 2) throw std::invalid_argument("symmetry order must be at least 2");
  if (static_cast<int>(s.crossing_perm.size()) != n) {
    throw std::invalid_argument("crossing_perm size does not match crossing count");
  }
  {
    std::vector<int> seen(n, 0);
    for (int img : s.crossing_perm) {
      if (img < 0 || img >= n || seen[img]++) {
        throw std::invalid_argument("crossing_perm is not a permutation");
      }
    }
  }
  auto edges = d.edge_ids();
  if (s.edge_perm.size() != edges.size()) {
    throw std::invalid_argument("edge_perm size does not match edge count");
  }
  {
    std::set<int> image;
    std::set<int> domain(edges.begin(), edges.end());
    for (const auto& [e, img] : s.edge_perm) {
      if (!domain.count(e) || !domain.count(img)) {
        throw std::invalid_argument("edge_perm mentions unknown edge");
      }
      image.insert(img);
    }
    if (image.size() != edges.size()) throw std::invalid_argument("edge_perm is not a permutation");
  }
  // Order and freeness: sigma^m = id and no fixed point of any nontrivial power.
  // A crossingless diagram records nothing the rotation can move (free loops
  // around the axis are invariant), so the order check is vacuous.
  if (n > 0) {
    std::vector<int> cp(n);
    std::iota(cp.begin(), cp.end(), 0);
    std::map<int, int> ep;
    for (int e : edges) ep[e] = e;
    for (int power = 1; power <= m; ++power) {
      for (int c = 0; c < n; ++c) cp[c] = s.crossing_perm[cp[c]];
      for (int e : edges) ep[e] = s.edge_perm.at(ep[e]);
      bool is_id = true;
      for (int c = 0; c < n && is_id; ++c) is_id = (cp[c] == c);
      for (int e : edges) {
        if (ep[e] != e) {
          is_id = false;
          break;
        }
      }
      if (power < m) {
        if (is_id) throw std::invalid_argument("symmetry order is smaller than declared");
        for (int c = 0; c < n; ++c) {
          if (cp[c] == c) throw std::invalid_argument("crossing fixed by a nontrivial power");
        }
        for (int e : edges) {
          if (ep.at(e) == e) throw std::invalid_argument("edge fixed by a nontrivial power");
        }
      } else if (!is_id) {
        throw std::invalid_argument("symmetry does not have the declared order");
      }
    }
  }
  // Automorphism of the incidence structure.
  for (int c = 0; c < n; ++c) {
    const Crossing& src = d.crossings[c];
    const Crossing& dst = d.crossings[s.crossing_perm[c]];
    if (src.sign != dst.sign) throw std::invalid_argument("symmetry does not preserve crossing signs");
    for (int j = 0; j < 4; ++j) {
      if (s.edge_perm.at(src.edges[j]) != dst.edges[j]) {
        throw std::invalid_argument("symmetry is not an automorphism of the diagram");
      }
    }
  }
  // Triviality classes of resolution circles must be preserved.
  auto check_resolution = [&](const std::vector<int>& v) {
    ResolutionConfig r = resolve(d, v);
    ResolutionConfig ri = resolve(d, apply_cube_perm(s, v));
    std::map<int, bool> image_trivial;
    for (const auto& circ : ri.circles) image_trivial[circ.id] = circ.trivial;
    for (const auto& circ : r.circles) {
      int image_id = map_circle_id(r, circ.id, s.edge_perm, ri);
      if (image_id < 0) continue;  // free-loop circle: its own image
      if (image_trivial.at(image_id) != circ.trivial) {
        throw std::invalid_argument("symmetry does not preserve circle triviality classes");
      }
    }
  };
  if (n <= sample_bound) {
    std::vector<int> v(n, 0);
    for (long long mask = 0; mask < (1LL << n); ++mask) {
      for (int c = 0; c < n; ++c) v[c] = (mask >> c) & 1;
      check_resolution(v);
    }
  } else {
    check_resolution(std::vector<int>(n, 0));
    check_resolution(std::vector<int>(n, 1));
  }
}

std::pair<AnnularDiagram, OrbitMaps> quotient_diagram(const AnnularDiagram& d,
                                                      const PeriodicSymmetry& s) {
  validate_symmetry(d, s);
  const int m = s.order;
  {
    // m must be a prime power.
    int x = m;
    int p = 0;
    for (int q = 2; q * q <= x; ++q) {
      if (x % q == 0) {
        p = q;
        while (x % q == 0) x /= q;
        break;
      }
    }
    if (p == 0) p = x, x = 1;
    if (x != 1) throw std::invalid_argument("quotient requires a prime-power symmetry order");
  }

  OrbitMaps maps;
  // Crossing orbits, represented by their minimal member.
  for (int c = 0; c < d.n(); ++c) {
    if (maps.crossing_rep.count(c)) continue;
    int rep = c;
    int cur = c;
    do {
      cur = s.crossing_perm[cur];
      rep = std::min(rep, cur);
    } while (cur != c);
    cur = c;
    do {
      maps.crossing_rep[cur] = rep;
      cur = s.crossing_perm[cur];
    } while (cur != c);
  }
  // Edge orbits and quotient parities (orbit parity sums).
  std::map<int, int> orbit_parity;
  for (int e : d.edge_ids()) {
    if (maps.edge_rep.count(e)) continue;
    int rep = e;
    int cur = e;
    int parity = 0;
    do {
      parity ^= d.ray_parity.at(cur);
      cur = s.edge_perm.at(cur);
      rep = std::min(rep, cur);
    } while (cur != e);
    cur = e;
    do {
      maps.edge_rep[cur] = rep;
      cur = s.edge_perm.at(cur);
    } while (cur != e);
    orbit_parity[rep] = parity;
  }

  AnnularDiagram q;
  for (int c = 0; c < d.n(); ++c) {
    if (maps.crossing_rep.at(c) != c) continue;
    Crossing qc;
    qc.sign = d.crossings[c].sign;
    for (int j = 0; j < 4; ++j) qc.edges[j] = maps.edge_rep.at(d.crossings[c].edges[j]);
    q.crossings.push_back(qc);
  }
  // Renumber quotient crossings densely in representative order.
  q.ray_parity = orbit_parity;
  int trivial_loops = 0;
  for (int par : d.free_loop_parity) {
    if (par == 1) {
      q.free_loop_parity.push_back(1);  // a nontrivial loop is rotation invariant
    } else {
      ++trivial_loops;
    }
  }
  if (trivial_loops % m != 0) {
    throw std::invalid_argument("trivial free loops do not form full orbits");
  }
  for (int i = 0; i < trivial_loops / m; ++i) q.free_loop_parity.push_back(0);
  q.validate();
  return {q, maps};
}

namespace {

// Outgoing tuple positions of a crossing: the under-strand exits at position 2;
// the over-strand exits at 1 for a positive crossing and at 3 for a negative one.
bool is_outgoing(const Crossing& c, int pos) {
  if (pos == 2) return true;
  if (pos == 0) return false;
  return c.sign > 0 ? pos == 1 : pos == 3;
}

}  // namespace

std::pair<AnnularDiagram, PeriodicSymmetry> lift_diagram(const AnnularDiagram& d, int p) {
  d.validate();
  if (p < 2) throw std::invalid_argument("lift order must be at least 2");
  auto edges = d.edge_ids();
  const int ne = static_cast<int>(edges.size());
  std::map<int, int> edge_index;
  for (int i = 0; i < ne; ++i) edge_index[edges[i]] = i;

  // Each edge must have exactly one outgoing and one incoming occurrence, so
  // the diagram is coherently oriented; the lift of an edge crossing the axis
  // ray ascends one sheet along its orientation.
  std::map<int, int> tail_slot;  // edge -> 4*crossing+pos of its outgoing occurrence
  std::map<int, int> head_slot;
  for (int c = 0; c < d.n(); ++c) {
    for (int j = 0; j < 4; ++j) {
      int e = d.crossings[c].edges[j];
      auto& slot_map = is_outgoing(d.crossings[c], j) ? tail_slot : head_slot;
      if (slot_map.count(e)) {
        throw std::invalid_argument("diagram is not coherently oriented; cannot lift");
      }
      slot_map[e] = 4 * c + j;
    }
  }
  for (int e : edges) {
    if (!tail_slot.count(e) || !head_slot.count(e)) {
      throw std::invalid_argument("diagram is not coherently oriented; cannot lift");
    }
  }

  auto lifted_edge = [&](int sheet, int e) { return sheet * ne + edge_index.at(e); };

  AnnularDiagram lift;
  for (int t = 0; t < p; ++t) {
    for (int c = 0; c < d.n(); ++c) {
      Crossing lc;
      lc.sign = d.crossings[c].sign;
      for (int j = 0; j < 4; ++j) {
        int e = d.crossings[c].edges[j];
        if (d.ray_parity.at(e) == 0) {
          lc.edges[j] = lifted_edge(t, e);
        } else if (is_outgoing(d.crossings[c], j)) {
          lc.edges[j] = lifted_edge(t, e);  // instance labeled by its tail sheet
        } else {
          lc.edges[j] = lifted_edge((t + p - 1) % p, e);
        }
      }
      lift.crossings.push_back(lc);
    }
  }
  for (int t = 0; t < p; ++t) {
    for (int e : edges) {
      lift.ray_parity[lifted_edge(t, e)] = (d.ray_parity.at(e) == 1 && t == p - 1) ? 1 : 0;
    }
  }
  for (int par : d.free_loop_parity) {
    if (par == 1) {
      lift.free_loop_parity.push_back(1);  // covers the core circle once
    } else {
      for (int t = 0; t < p; ++t) lift.free_loop_parity.push_back(0);
    }
  }

  PeriodicSymmetry sym;
  sym.order = p;
  sym.crossing_perm.resize(lift.n());
  for (int t = 0; t < p; ++t) {
    for (int c = 0; c < d.n(); ++c) {
      sym.crossing_perm[t * d.n() + c] = ((t + 1) % p) * d.n() + c;
    }
  }
  for (int t = 0; t < p; ++t) {
    for (int e : edges) sym.edge_perm[lifted_edge(t, e)] = lifted_edge((t + 1) % p, e);
  }
  lift.validate();
  lift.symmetry = sym;
  if (lift.n() > 0) validate_symmetry(lift, sym);
  return {lift, sym};
}

namespace {

bool try_isomorphism(const AnnularDiagram& a, const AnnularDiagram& b, std::vector<int>& cmap,
                     std::map<int, int>& emap, std::set<int>& used_crossings,
                     std::set<int>& used_edges, int next) {
  const int n = a.n();
  if (next == n) return true;
  for (int cand = 0; cand < n; ++cand) {
    if (used_crossings.count(cand)) continue;
    if (a.crossings[next].sign != b.crossings[cand].sign) continue;
    std::vector<std::pair<int, int>> added;
    bool ok = true;
    for (int j = 0; j < 4 && ok; ++j) {
      int ea = a.crossings[next].edges[j];
      int eb = b.crossings[cand].edges[j];
      auto it = emap.find(ea);
      if (it != emap.end()) {
        ok = (it->second == eb);
      } else if (used_edges.count(eb)) {
        ok = false;
      } else if (a.ray_parity.at(ea) != b.ray_parity.at(eb)) {
        ok = false;
      } else {
        emap[ea] = eb;
        used_edges.insert(eb);
        added.emplace_back(ea, eb);
      }
    }
    if (ok) {
      cmap[next] = cand;
      used_crossings.insert(cand);
      if (try_isomorphism(a, b, cmap, emap, used_crossings, used_edges, next + 1)) return true;
      used_crossings.erase(cand);
    }
    for (const auto& [ea, eb] : added) {
      emap.erase(ea);
      used_edges.erase(eb);
    }
  }
  return false;
}

}  // namespace

bool isomorphic(const AnnularDiagram& a, const AnnularDiagram& b) {
  if (a.n() != b.n()) return false;
  std::multiset<int> la(a.free_loop_parity.begin(), a.free_loop_parity.end());
  std::multiset<int> lb(b.free_loop_parity.begin(), b.free_loop_parity.end());
  if (la != lb) return false;
  if (a.edge_ids().size() != b.edge_ids().size()) return false;
  std::vector<int> cmap(a.n(), -1);
  std::map<int, int> emap;
  std::set<int> used_crossings, used_edges;
  return try_isomorphism(a, b, cmap, emap, used_crossings, used_edges, 0);
}

AnnularDiagram braid_closure(int strands, const std::vector<int>& word) {
  if (strands < 1) throw std::invalid_argument("braid needs at least one strand");
  AnnularDiagram d;
  int next_edge = 0;
  std::vector<int> bottom(strands);   // closure edges, one per strand position
  std::vector<int> current(strands);  // edge currently occupying each position
  for (int s = 0; s < strands; ++s) bottom[s] = current[s] = next_edge++;
  std::vector<bool> touched(strands, false);
  for (int letter : word) {
    int i = std::abs(letter);
    if (i < 1 || i >= strands) throw std::invalid_argument("braid letter out of range");
    int a = current[i - 1];
    int b = current[i];
    int c = next_edge++;  // outgoing left
    int e = next_edge++;  // outgoing right
    Crossing cr;
    if (letter > 0) {
      cr.edges = {b, e, c, a};  // incoming under at bottom right
      cr.sign = 1;
    } else {
      cr.edges = {a, b, e, c};  // incoming under at bottom left
      cr.sign = -1;
    }
    d.crossings.push_back(cr);
    current[i - 1] = c;
    current[i] = e;
    touched[i - 1] = touched[i] = true;
  }
  // Close up: identify the top occupant of each touched position with its
  // closure edge; untouched positions are crossingless nontrivial loops.
  std::map<int, int> rename;
  for (int s = 0; s < strands; ++s) {
    if (touched[s]) {
      rename[current[s]] = bottom[s];
    } else {
      d.free_loop_parity.push_back(1);
    }
  }
  for (auto& cr : d.crossings) {
    for (int& e : cr.edges) {
      auto it = rename.find(e);
      if (it != rename.end()) e = it->second;
    }
  }
  for (const auto& cr : d.crossings) {
    for (int e : cr.edges) {
      if (!d.ray_parity.count(e)) {
        d.ray_parity[e] = (e < strands) ? 1 : 0;  // closure arcs cross the axis ray once
      }
    }
  }
  d.validate();
  return d;
}

std::pair<AnnularDiagram, PeriodicSymmetry> periodic_braid_closure(int strands,
                                                                   const std::vector<int>& word,
                                                                   int p) {
  return lift_diagram(braid_closure(strands, word), p);
}

}  // namespace perkh
