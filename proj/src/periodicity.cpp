#include "perkh/periodicity.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "json.hpp"

#include "perkh/linalg.hpp"

namespace perkh {

void LaurentPoly2::add(int t, int q, long long v) {
  if (v == 0) return;
  auto key = std::make_pair(t, q);
  auto it = coef.find(key);
  if (it == coef.end()) {
    coef.emplace(key, v);
  } else {
    it->second += v;
    if (it->second == 0) coef.erase(it);
  }
}

long long LaurentPoly2::at(int t, int q) const {
  auto it = coef.find({t, q});
  return it == coef.end() ? 0 : it->second;
}

bool LaurentPoly2::nonnegative() const {
  for (const auto& [key, v] : coef)
    if (v < 0) return false;
  return true;
}

long long LaurentPoly2::mass() const {
  long long m = 0;
  for (const auto& [key, v] : coef) m += v;
  return m;
}

LaurentPoly2 LaurentPoly2::plus(const LaurentPoly2& o, long long scale) const {
  LaurentPoly2 out = *this;
  for (const auto& [key, v] : o.coef) out.add(key.first, key.second, v * scale);
  return out;
}

std::map<int, long long> LaurentPoly2::at_t_minus_one() const {
  std::map<int, long long> out;
  for (const auto& [key, v] : coef) {
    long long c = (key.first % 2 != 0) ? -v : v;
    out[key.second] += c;
    if (out[key.second] == 0) out.erase(key.second);
  }
  return out;
}

LaurentPoly2 parse_poly(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  LaurentPoly2 p;
  if (!j.is_array()) throw std::invalid_argument("polynomial must be a JSON list");
  for (const auto& term : j)
    p.add(term.at("t").get<int>(), term.at("q").get<int>(), term.at("coef").get<long long>());
  return p;
}

std::vector<LaurentPoly2> parse_poly_list(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_array()) throw std::invalid_argument("expected a JSON list of polynomials");
  std::vector<LaurentPoly2> out;
  for (const auto& entry : j) out.push_back(parse_poly(entry.dump()));
  return out;
}

std::string poly_to_json(const LaurentPoly2& p, bool pretty) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [key, v] : p.coef)
    j.push_back({{"t", key.first}, {"q", key.second}, {"coef", v}});
  return pretty ? j.dump(2) : j.dump();
}

std::string poly_to_string(const LaurentPoly2& p) {
  if (p.coef.empty()) return "0";
  std::string out;
  for (const auto& [key, v] : p.coef) {
    auto [t, q] = key;
    if (!out.empty()) out += v >= 0 ? " + " : " - ";
    else if (v < 0) out += "-";
    long long av = v < 0 ? -v : v;
    std::string term;
    if (t != 0) term += "t" + (t == 1 ? std::string() : "^" + std::to_string(t));
    if (q != 0) {
      if (!term.empty()) term += " ";
      term += "q" + (q == 1 ? std::string() : "^" + std::to_string(q));
    }
    if (av != 1 || term.empty()) {
      out += std::to_string(av);
      if (!term.empty()) out += " ";
    }
    out += term;
  }
  return out;
}

void CriterionInstance::validate() const {
  if (!khp.nonnegative()) throw std::invalid_argument("khp must have non-negative coefficients");
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (c != 1 && c != 2) throw std::invalid_argument("c must be 1 or 2");
  if (w < 0) throw std::invalid_argument("width must be non-negative");
  if (!blocks.empty()) {
    LaurentPoly2 sum;
    for (const auto& b : blocks) {
      if (!b.nonnegative()) throw std::invalid_argument("blocks must have non-negative coefficients");
      sum = sum.plus(b);
    }
    if (!(sum == khp)) throw std::invalid_argument("blocks must sum to khp");
  }
}

namespace {

std::vector<long long> level_weights(int p, int n) {
  std::vector<long long> w(n + 1, 1);
  long long pk = 1;
  for (int k = 1; k <= n; ++k) {
    w[k] = pk * (p - 1);  // p^k - p^{k-1}
    pk *= p;
  }
  return w;
}

// Largest monomial by (q, then t); only called on non-zero polynomials.
std::pair<int, int> top_monomial(const LaurentPoly2& p) {
  auto best = p.coef.begin()->first;
  for (const auto& [key, v] : p.coef)
    if (key.second > best.second || (key.second == best.second && key.first > best.first))
      best = key;
  return best;
}

// Whether rem (non-negative) splits as a sum of pairs t^a q^b + t^{a+1} q^{b+2cj}
// with 1 <= j <= jmax. Failed remainders are memoized.
bool pair_decomposable(const LaurentPoly2& rem, int c, int jmax,
                       std::set<std::map<std::pair<int, int>, long long>>& failed) {
  if (rem.is_zero()) return true;
  if (failed.count(rem.coef)) return false;
  auto [t, q] = top_monomial(rem);  // must be the head of some pair
  for (int j = 1; j <= jmax; ++j) {
    if (rem.at(t - 1, q - 2 * c * j) < 1) continue;
    LaurentPoly2 next = rem;
    next.add(t, q, -1);
    next.add(t - 1, q - 2 * c * j, -1);
    if (pair_decomposable(next, c, jmax, failed)) return true;
  }
  failed.insert(rem.coef);
  return false;
}

long long pow_ll(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Condition (3): (dP_k - dP_{k+1})(-1, q) is symmetric mod q^M - q^{-M},
// i.e. the residue-class sums mod 2M of R(q) - R(q^{-1}) all vanish.
bool congruence_holds(const LaurentPoly2& a, const LaurentPoly2& b, long long M) {
  std::map<int, long long> r = a.plus(b, -1).at_t_minus_one();
  std::map<long long, long long> residue;
  for (const auto& [e, v] : r) {
    residue[mod_pos(e, 2 * M)] += v;
    residue[mod_pos(-e, 2 * M)] -= v;
  }
  for (const auto& [res, v] : residue)
    if (v != 0) return false;
  return true;
}

// Optional refinement: each part must be an exact subset-sum of blocks.
bool subset_sum(const std::vector<LaurentPoly2>& blocks, size_t from, const LaurentPoly2& target) {
  if (target.is_zero()) return true;
  if (!target.nonnegative() || from >= blocks.size()) return false;
  if (subset_sum(blocks, from + 1, target.plus(blocks[from], -1))) return true;
  return subset_sum(blocks, from + 1, target);
}

}  // namespace

CheckResult check_decomposition(const CriterionInstance& inst,
                                const std::vector<LaurentPoly2>& parts) {
  inst.validate();
  CheckResult out;
  if (static_cast<int>(parts.size()) != inst.n + 1) {
    out.violations.push_back("expected n+1 parts");
    return out;
  }

  std::vector<long long> w = level_weights(inst.p, inst.n);
  LaurentPoly2 sum = parts[0];
  for (int k = 1; k <= inst.n; ++k) sum = sum.plus(parts[k], w[k]);
  if (!(sum == inst.khp)) out.violations.push_back("decomposition sum");

  std::set<std::map<std::pair<int, int>, long long>> failed;
  LaurentPoly2 r0 = parts[0];
  r0.add(0, inst.s + 1, -1);
  r0.add(0, inst.s - 1, -1);
  if (!r0.nonnegative() || !pair_decomposable(r0, inst.c, inst.j_max(), failed))
    out.violations.push_back("condition (1)");
  for (int k = 1; k <= inst.n; ++k)
    if (!parts[k].nonnegative() ||
        !pair_decomposable(parts[k], inst.c, inst.j_max(), failed))
      out.violations.push_back("condition (2) at k=" + std::to_string(k));
  for (int k = 0; k < inst.n; ++k)
    if (!congruence_holds(parts[k], parts[k + 1], pow_ll(inst.p, inst.n - k)))
      out.violations.push_back("condition (3) at k=" + std::to_string(k));

  out.ok = out.violations.empty();
  return out;
}

namespace {

struct Searcher {
  const CriterionInstance& inst;
  int limit;
  long long cap;
  std::vector<long long> weights;
  long long nodes = 0;
  bool inconclusive = false;
  LaurentPoly2 rem;
  std::vector<LaurentPoly2> parts;
  std::set<std::vector<LaurentPoly2>> found;

  Searcher(const CriterionInstance& i, int lim, long long node_cap)
      : inst(i), limit(lim), cap(node_cap), weights(level_weights(i.p, i.n)),
        parts(i.n + 1) {}

  void accept() {
    std::vector<LaurentPoly2> candidate = parts;
    candidate[0].add(0, inst.s + 1, 1);
    candidate[0].add(0, inst.s - 1, 1);
    if (!check_decomposition(inst, candidate).ok) return;
    if (!inst.blocks.empty())
      for (const auto& part : candidate)
        if (!subset_sum(inst.blocks, 0, part)) return;
    found.insert(std::move(candidate));
  }

  // prev: smallest (level, j) branch allowed while the top monomial stays at
  // `head`; forcing non-decreasing branches removes permuted duplicates.
  void dfs(std::pair<int, int> head, std::pair<int, int> prev) {
    if (inconclusive || static_cast<int>(found.size()) >= limit) return;
    if (++nodes > cap) {
      inconclusive = true;
      return;
    }
    if (rem.is_zero()) {
      accept();
      return;
    }
    auto top = top_monomial(rem);
    auto floor = top == head ? prev : std::make_pair(0, 1);
    auto [t, q] = top;
    for (int k = floor.first; k <= inst.n; ++k) {
      int j0 = k == floor.first ? floor.second : 1;
      for (int j = j0; j <= inst.j_max(); ++j) {
        long long wk = weights[k];
        if (rem.at(t, q) < wk || rem.at(t - 1, q - 2 * inst.c * j) < wk) continue;
        rem.add(t, q, -wk);
        rem.add(t - 1, q - 2 * inst.c * j, -wk);
        parts[k].add(t, q, 1);
        parts[k].add(t - 1, q - 2 * inst.c * j, 1);
        dfs(top, {k, j});
        parts[k].add(t, q, -1);
        parts[k].add(t - 1, q - 2 * inst.c * j, -1);
        rem.add(t, q, wk);
        rem.add(t - 1, q - 2 * inst.c * j, wk);
        if (inconclusive || static_cast<int>(found.size()) >= limit) return;
      }
    }
  }
};

}  // namespace

SearchResult search_decompositions(const CriterionInstance& inst, int limit, long long node_cap) {
  inst.validate();
  SearchResult out;
  if (limit < 1) return out;

  Searcher s(inst, limit, node_cap);
  s.rem = inst.khp;
  s.rem.add(0, inst.s + 1, -1);
  s.rem.add(0, inst.s - 1, -1);
  // The anchor q^s(q + q^{-1}) is forced; without it condition (1) fails.
  if (!s.rem.nonnegative()) return out;

  s.dfs({0, 0}, {0, 1});
  out.inconclusive = s.inconclusive;
  out.nodes = s.nodes;
  out.decompositions.assign(s.found.begin(), s.found.end());
  return out;
}

std::string search_result_to_json(const CriterionInstance& inst, const SearchResult& r,
                                  bool pretty) {
  nlohmann::json j;
  j["p"] = inst.p;
  j["n"] = inst.n;
  j["s"] = inst.s;
  j["c"] = inst.c;
  j["width"] = inst.w;
  j["nodes"] = r.nodes;
  j["inconclusive"] = r.inconclusive;
  j["count"] = r.decompositions.size();
  j["decompositions"] = nlohmann::json::array();
  for (const auto& parts : r.decompositions) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& part : parts) arr.push_back(nlohmann::json::parse(poly_to_json(part)));
    j["decompositions"].push_back(arr);
  }
  return pretty ? j.dump(2) : j.dump();
}

}  // namespace perkh
