#include "perkh/permutohedra.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace perkh {

namespace {

void check_increasing(const std::vector<long long>& S) {
  if (S.empty()) throw std::invalid_argument("S must be non-empty");
  for (size_t i = 1; i < S.size(); ++i)
    if (S[i] <= S[i - 1]) throw std::invalid_argument("S must be strictly increasing");
}

}  // namespace

int OrderedPartition::ground_size() const {
  int r = 0;
  for (const auto& b : blocks) r += static_cast<int>(b.size());
  return r;
}

void OrderedPartition::validate(int r) const {
  std::vector<char> seen(r + 1, 0);
  for (const auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("empty block");
    if (!std::is_sorted(b.begin(), b.end())) throw std::invalid_argument("block not sorted");
    for (int e : b) {
      if (e < 1 || e > r || seen[e]) throw std::invalid_argument("blocks must partition {1..r}");
      seen[e] = 1;
    }
  }
  if (ground_size() != r) throw std::invalid_argument("blocks must cover {1..r}");
}

bool OrderedPartition::refines(const OrderedPartition& other) const {
  size_t i = 0;
  for (const auto& coarse : other.blocks) {
    std::set<int> want(coarse.begin(), coarse.end());
    std::set<int> got;
    while (got.size() < want.size()) {
      if (i >= blocks.size()) return false;
      got.insert(blocks[i].begin(), blocks[i].end());
      ++i;
    }
    if (got != want) return false;
  }
  return i == blocks.size();
}

std::vector<std::vector<long long>> vertices(const std::vector<long long>& S) {
  check_increasing(S);
  const int r = static_cast<int>(S.size());
  std::vector<int> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<long long>> out;
  do {
    std::vector<long long> x(r);
    for (int i = 0; i < r; ++i) x[i] = S[perm[i]];
    out.push_back(std::move(x));
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end());
  return out;
}

PermutohedronFace face(const std::vector<long long>& S, const OrderedPartition& p) {
  check_increasing(S);
  const int r = static_cast<int>(S.size());
  p.validate(r);

  PermutohedronFace f;
  f.partition = p;
  f.dim = r - static_cast<int>(p.blocks.size());

  // Values S[next..next+|P_j|) are distributed over block P_j in every order.
  std::vector<std::vector<long long>> acc = {std::vector<long long>(r, 0)};
  int next = 0;
  for (const auto& block : p.blocks) {
    const int b = static_cast<int>(block.size());
    std::vector<int> idx(b);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<std::vector<long long>> grown;
    do {
      for (const auto& base : acc) {
        std::vector<long long> x = base;
        for (int t = 0; t < b; ++t) x[block[t] - 1] = S[next + idx[t]];
        grown.push_back(std::move(x));
      }
    } while (std::next_permutation(idx.begin(), idx.end()));
    acc = std::move(grown);
    next += b;
  }
  std::sort(acc.begin(), acc.end());
  f.vertices = std::move(acc);
  return f;
}

OrderedPartition reduce(const OrderedPartition& p, int b) {
  const int r = p.ground_size();
  p.validate(r);
  if (b < 1 || b > r) throw std::invalid_argument("element out of range");
  OrderedPartition q;
  for (const auto& block : p.blocks) {
    std::vector<int> nb;
    for (int e : block) {
      if (e == b) continue;
      nb.push_back(e > b ? e - 1 : e);
    }
    if (nb.empty()) throw std::invalid_argument("reduction would empty a block");
    q.blocks.push_back(std::move(nb));
  }
  return q;
}

std::vector<OrderedPartition> all_ordered_partitions(int r) {
  // Grow element by element: element e joins an existing block or starts a
  // new block in any position.
  std::vector<OrderedPartition> acc;
  acc.push_back(OrderedPartition{});
  for (int e = 1; e <= r; ++e) {
    std::vector<OrderedPartition> grown;
    for (const auto& p : acc) {
      for (size_t j = 0; j < p.blocks.size(); ++j) {
        OrderedPartition q = p;
        q.blocks[j].push_back(e);
        grown.push_back(std::move(q));
      }
      for (size_t j = 0; j <= p.blocks.size(); ++j) {
        OrderedPartition q = p;
        q.blocks.insert(q.blocks.begin() + j, std::vector<int>{e});
        grown.push_back(std::move(q));
      }
    }
    acc = std::move(grown);
  }
  std::sort(acc.begin(), acc.end());
  return acc;
}

HyperplaneIntersection intersect_hyperplanes(const std::vector<long long>& S,
                                             const std::vector<std::vector<int>>& groups) {
  check_increasing(S);
  const int r = static_cast<int>(S.size());
  std::vector<char> used(r + 1, 0);
  std::vector<int> removed;  // non-minimal elements of each group
  for (const auto& g : groups) {
    if (g.size() < 2) throw std::invalid_argument("each group needs at least two coordinates");
    int mn = g[0];
    for (int e : g) {
      if (e < 1 || e > r || used[e]) throw std::invalid_argument("groups must be disjoint coordinates in range");
      used[e] = 1;
      mn = std::min(mn, e);
    }
    for (int e : g)
      if (e != mn) removed.push_back(e);
  }
  std::sort(removed.rbegin(), removed.rend());

  HyperplaneIntersection out;
  const int K = static_cast<int>(removed.size());
  out.reduced_S.assign(S.begin(), S.begin() + (r - K));

  for (const auto& p : all_ordered_partitions(r)) {
    // The face survives iff every equality group lies inside one block.
    bool survives = true;
    for (const auto& g : groups) {
      int home = -1;
      for (size_t j = 0; j < p.blocks.size() && survives; ++j) {
        for (int e : p.blocks[j]) {
          if (std::find(g.begin(), g.end(), e) == g.end()) continue;
          if (home < 0) home = static_cast<int>(j);
          if (home != static_cast<int>(j)) survives = false;
        }
      }
      if (!survives) break;
    }
    if (!survives) continue;
    OrderedPartition q = p;
    for (int b : removed) q = reduce(q, b);
    out.face_map.emplace_back(p, std::move(q));
  }
  return out;
}

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

FixedPermutohedron fixed_permutohedron(int n, const std::vector<std::vector<int>>& orbits) {
  std::vector<char> seen(n + 1, 0);
  for (const auto& o : orbits) {
    if (o.empty()) throw std::invalid_argument("empty orbit");
    for (int e : o) {
      if (e < 1 || e > n || seen[e]) throw std::invalid_argument("orbits must partition {1..n}");
      seen[e] = 1;
    }
  }
  int covered = 0;
  for (const auto& o : orbits) covered += static_cast<int>(o.size());
  if (covered != n) throw std::invalid_argument("orbits must cover {1..n}");

  const int s = static_cast<int>(orbits.size());
  FixedPermutohedron out;
  out.s = s;

  // Each vertex w of Pi_{s-1} ranks the orbits; the orbit ranked j-th receives
  // the average of the next |orbit| values of (1..n), so every prefix of the
  // ranking carries the same coordinate sum as the corresponding prefix of a
  // genuine vertex of Pi_{n-1}.
  std::vector<int> w(s);
  std::iota(w.begin(), w.end(), 1);
  do {
    std::vector<int> order(s);  // order[j] = orbit ranked (j+1)-th
    for (int o = 0; o < s; ++o) order[w[o] - 1] = o;
    std::vector<Rational> z(n);
    long long h = 0;
    for (int j = 0; j < s; ++j) {
      const auto& orbit = orbits[order[j]];
      const long long b = static_cast<long long>(orbit.size());
      // Sum of values h+1 .. h+b, split evenly across the orbit.
      Rational c(b * h + b * (b + 1) / 2, b);
      for (int e : orbit) z[e - 1] = c;
      h += b;
    }
    out.vertex_map.emplace_back(w, std::move(z));
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

}  // namespace perkh
