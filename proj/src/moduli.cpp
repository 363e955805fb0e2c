#include "perkh/moduli.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace perkh {

namespace {

// Allowed label moves across one surgery. merged/split circle labels follow
// the Khovanov TQFT support: merge ++ -> +, +-/-+ -> -, split + -> +- and -+,
// split - -> --.
struct Move {
  std::map<int, int> labels;
};

std::vector<std::map<int, int>> label_successors(const ResolutionConfig& before,
                                                 const ResolutionConfig& after, int crossing,
                                                 const std::map<int, int>& labels) {
  const auto& cr = before.diagram.crossings[crossing];
  auto contains = [](const Circle& c, int e) {
    return std::binary_search(c.edges.begin(), c.edges.end(), e);
  };
  std::vector<const Circle*> src_inv, dst_inv;
  for (const auto& c : before.circles) {
    for (int e : cr.edges) {
      if (contains(c, e)) {
        src_inv.push_back(&c);
        break;
      }
    }
  }
  for (const auto& c : after.circles) {
    for (int e : cr.edges) {
      if (contains(c, e)) {
        dst_inv.push_back(&c);
        break;
      }
    }
  }
  std::map<int, int> base = labels;
  for (const auto* c : src_inv) base.erase(c->id);
  std::vector<std::map<int, int>> out;
  if (src_inv.size() == 2 && dst_inv.size() == 1) {
    int a = labels.at(src_inv[0]->id);
    int b = labels.at(src_inv[1]->id);
    if (a == 1 && b == 1) {
      base[dst_inv[0]->id] = 1;
      out.push_back(base);
    } else if (a != b) {
      base[dst_inv[0]->id] = -1;
      out.push_back(base);
    }
  } else if (src_inv.size() == 1 && dst_inv.size() == 2) {
    int a = labels.at(src_inv[0]->id);
    if (a == 1) {
      base[dst_inv[0]->id] = 1;
      base[dst_inv[1]->id] = -1;
      out.push_back(base);
      base[dst_inv[0]->id] = -1;
      base[dst_inv[1]->id] = 1;
      out.push_back(base);
    } else {
      base[dst_inv[0]->id] = -1;
      base[dst_inv[1]->id] = -1;
      out.push_back(base);
    }
  } else {
    throw std::logic_error("surgery is neither a merge nor a split");
  }
  return out;
}

}  // namespace

std::vector<int> DecoratedConfig::v_end() const {
  std::vector<int> v = v_start;
  for (int c : arcs) v[c] = 1;
  return v;
}

void DecoratedConfig::validate() const {
  if (static_cast<int>(v_start.size()) != d.n()) {
    throw std::invalid_argument("v_start length must equal the crossing count");
  }
  std::set<int> seen;
  for (int c : arcs) {
    if (c < 0 || c >= d.n() || v_start[c] != 0 || !seen.insert(c).second) {
      throw std::invalid_argument("arcs must be distinct 0-resolved crossings");
    }
  }
  ResolutionConfig bottom = resolve(d, v_start);
  ResolutionConfig top = resolve(d, v_end());
  auto check_labels = [](const ResolutionConfig& r, const std::map<int, int>& labels,
                         const char* which) {
    if (labels.size() != r.circles.size()) {
      throw std::invalid_argument(std::string(which) + " labeling size mismatch");
    }
    for (const auto& c : r.circles) {
      auto it = labels.find(c.id);
      if (it == labels.end() || (it->second != 1 && it->second != -1)) {
        throw std::invalid_argument(std::string(which) + " labeling must give each circle +1/-1");
      }
    }
  };
  check_labels(bottom, y, "bottom");
  check_labels(top, x, "top");
}

ConfigPoset build_poset(const DecoratedConfig& dc, int index_bound) {
  dc.validate();
  const int idx = dc.index();
  if (idx > index_bound) throw std::invalid_argument("configuration index exceeds the bound");

  // Resolutions for every arc subset.
  std::vector<ResolutionConfig> res(1u << idx);
  std::vector<int> v = dc.v_start;
  for (uint32_t mask = 0; mask < (1u << idx); ++mask) {
    std::vector<int> vm = dc.v_start;
    for (int a = 0; a < idx; ++a) {
      if (mask & (1u << a)) vm[dc.arcs[a]] = 1;
    }
    res[mask] = resolve(dc.d, vm);
  }

  using State = std::pair<uint32_t, std::map<int, int>>;
  std::set<State> forward;
  std::vector<State> frontier{{0u, dc.y}};
  forward.insert(frontier[0]);
  std::vector<std::pair<State, State>> edges;
  while (!frontier.empty()) {
    std::vector<State> next;
    for (const auto& st : frontier) {
      for (int a = 0; a < idx; ++a) {
        if (st.first & (1u << a)) continue;
        uint32_t nm = st.first | (1u << a);
        for (auto& labels : label_successors(res[st.first], res[nm], dc.arcs[a], st.second)) {
          State ns{nm, std::move(labels)};
          edges.emplace_back(st, ns);
          if (forward.insert(ns).second) next.push_back(ns);
        }
      }
    }
    frontier = std::move(next);
  }

  State top{(idx == 32 ? ~0u : (1u << idx) - 1), dc.x};
  std::set<State> alive;
  if (forward.count(top)) {
    // Backward prune to states on a full chain.
    std::multimap<State, State> rev;
    for (const auto& [lo, hi] : edges) rev.emplace(hi, lo);
    std::vector<State> stack{top};
    alive.insert(top);
    while (!stack.empty()) {
      State cur = stack.back();
      stack.pop_back();
      auto [lo, hi] = rev.equal_range(cur);
      for (auto it = lo; it != hi; ++it) {
        if (alive.insert(it->second).second) stack.push_back(it->second);
      }
    }
  }

  ConfigPoset poset;
  std::map<State, int> number;
  for (const auto& st : alive) {
    number[st] = static_cast<int>(poset.elements.size());
    poset.elements.push_back({st.first, st.second});
  }
  for (const auto& [lo, hi] : edges) {
    if (alive.count(lo) && alive.count(hi)) {
      poset.covers.emplace_back(number.at(lo), number.at(hi));
    }
  }
  std::sort(poset.covers.begin(), poset.covers.end());
  poset.covers.erase(std::unique(poset.covers.begin(), poset.covers.end()), poset.covers.end());
  State bottom{0u, dc.y};
  if (alive.count(bottom)) poset.min_element = number.at(bottom);
  if (alive.count(top)) poset.max_element = number.at(top);
  return poset;
}

namespace {

long long count_chains_for_order(const DecoratedConfig& dc, const std::vector<int>& z,
                                 const std::vector<ResolutionConfig>& res) {
  const int idx = dc.index();
  std::map<std::map<int, int>, long long> current{{dc.y, 1}};
  uint32_t mask = 0;
  for (int step = 0; step < idx; ++step) {
    int a = z[step];
    uint32_t nm = mask | (1u << a);
    std::map<std::map<int, int>, long long> next;
    for (const auto& [labels, count] : current) {
      for (auto& nl : label_successors(res[mask], res[nm], dc.arcs[a], labels)) {
        next[nl] += count;
      }
    }
    current = std::move(next);
    mask = nm;
  }
  auto it = current.find(dc.x);
  return it == current.end() ? 0 : it->second;
}

}  // namespace

long long count_pi0_chains(const DecoratedConfig& dc, const std::vector<int>& z) {
  dc.validate();
  const int idx = dc.index();
  if (static_cast<int>(z.size()) != idx) {
    throw std::invalid_argument("surgery order length must equal the index");
  }
  {
    std::vector<bool> seen(idx, false);
    for (int a : z) {
      if (a < 0 || a >= idx || seen[a]) {
        throw std::invalid_argument("surgery order must be a permutation");
      }
      seen[a] = true;
    }
  }
  std::vector<ResolutionConfig> res(1u << idx);
  for (uint32_t mask = 0; mask < (1u << idx); ++mask) {
    std::vector<int> vm = dc.v_start;
    for (int a = 0; a < idx; ++a) {
      if (mask & (1u << a)) vm[dc.arcs[a]] = 1;
    }
    res[mask] = resolve(dc.d, vm);
  }
  long long result = count_chains_for_order(dc, z, res);
  if (idx >= 2 && idx <= 5) {
    // Order independence (the chain count equals pi0 of the moduli space for
    // every permutohedron vertex): assert it exhaustively at small index.
    std::vector<int> perm(idx);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      if (count_chains_for_order(dc, perm, res) != result) {
        throw std::logic_error("chain count depends on the surgery order");
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return result;
}

long long theta(const DecoratedConfig& dc) {
  dc.validate();
  ResolutionConfig cfg = resolve(dc.d, dc.v_start);
  // Restrict the surgery to the decorated arcs.
  std::vector<Arc> kept;
  for (const Arc& arc : cfg.arcs) {
    if (std::find(dc.arcs.begin(), dc.arcs.end(), arc.crossing) != dc.arcs.end()) {
      kept.push_back(arc);
    }
  }
  cfg.arcs = kept;
  std::vector<int> order(cfg.arcs.size());
  std::iota(order.begin(), order.end(), 0);
  SurgerySurface surf = surgery_surface(cfg, order, static_cast<int>(order.size()));

  long long value = 1;
  for (const auto& comp : surf.components) {
    int dots = 0;
    for (int id : comp.bottom) {
      if (dc.y.at(id) < 0) ++dots;  // dotted cap
    }
    for (int id : comp.top) {
      if (dc.x.at(id) > 0) ++dots;  // dotted cocap (duality flips the dot)
    }
    long long factor = 0;
    if (comp.genus == 0 && dots == 1) {
      factor = 1;
    } else if (comp.genus == 1 && dots == 0) {
      factor = 2;
    }
    value *= factor;
    if (value == 0) return 0;
  }
  return value;
}

long long annular_theta(const DecoratedConfig& dc) {
  dc.validate();
  ResolutionConfig bottom = resolve(dc.d, dc.v_start);
  ResolutionConfig top = resolve(dc.d, dc.v_end());
  auto annular_grading = [](const ResolutionConfig& r, const std::map<int, int>& labels) {
    int k = 0;
    for (const auto& c : r.circles) {
      if (!c.trivial) k += labels.at(c.id);
    }
    return k;
  };
  if (annular_grading(bottom, dc.y) != annular_grading(top, dc.x)) return 0;
  return theta(dc);
}

}  // namespace perkh
