#include "perkh/homology.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <json.hpp>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace perkh {

using nlohmann::json;

uint64_t mask_of(const std::vector<int>& v) {
  uint64_t mask = 0;
  const int n = static_cast<int>(v.size());
  for (int c = 0; c < n; ++c) {
    if (v[c]) mask |= 1ULL << (n - 1 - c);
  }
  return mask;
}

std::vector<int> vector_of(uint64_t mask, int n) {
  std::vector<int> v(n, 0);
  for (int c = 0; c < n; ++c) v[c] = (mask >> (n - 1 - c)) & 1;
  return v;
}

bool SignAssignment::is_cocycle() const {
  // Squares are keyed by a vertex u with bits j1 < j2 clear.
  for (uint64_t u = 0; u < (1ULL << n); ++u) {
    for (int j1 = 0; j1 < n; ++j1) {
      if ((u >> (n - 1 - j1)) & 1) continue;
      for (int j2 = j1 + 1; j2 < n; ++j2) {
        if ((u >> (n - 1 - j2)) & 1) continue;
        uint64_t u1 = u | (1ULL << (n - 1 - j1));
        uint64_t u2 = u | (1ULL << (n - 1 - j2));
        int sum = value(u, j1) + value(u, j2) + value(u1, j2) + value(u2, j1);
        if (sum % 2 != 1) return false;
      }
    }
  }
  return true;
}

SignAssignment standard_sign_assignment(int n) {
  if (n < 0 || n > 30) throw std::invalid_argument("unsupported crossing count");
  SignAssignment s;
  s.n = n;
  if (n == 0) return s;
  s.values.assign(static_cast<size_t>(n) << n, 0);
  for (uint64_t u = 0; u < (1ULL << n); ++u) {
    for (int j = 0; j < n; ++j) {
      int sum = 0;
      for (int t = 0; t < j; ++t) sum += (u >> (n - 1 - t)) & 1;
      s.values[u * n + j] = sum % 2;
    }
  }
  return s;
}

int max_crossings_limit() {
  const char* env = std::getenv("PERKH_MAX_CROSSINGS");
  if (env == nullptr) return 16;
  int limit = std::atoi(env);
  return limit > 0 ? limit : 16;
}

CubeData build_cube(const AnnularDiagram& d) {
  const int n = d.n();
  {
    const int limit = max_crossings_limit();
    if (n > limit) {
      throw std::invalid_argument("diagram exceeds the crossing limit (PERKH_MAX_CROSSINGS)");
    }
  }
  CubeData cube;
  cube.d = d;
  cube.n = n;
  cube.circles.resize(1ULL << n);
  cube.gen_offset.resize(1ULL << n);
  long long offset = 0;
  for (uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    cube.circles[mask] = resolve(d, vector_of(mask, n)).circles;
    cube.gen_offset[mask] = offset;
    offset += 1LL << cube.circles[mask].size();
  }
  cube.total_gens = offset;
  return cube;
}

long long CubeData::generator_index(uint64_t mask, uint64_t lmask) const {
  return gen_offset[mask] + static_cast<long long>(lmask);
}

long long CubeData::generator_index(uint64_t mask, const std::map<int, int>& labels) const {
  const auto& circs = circles[mask];
  const int nc = static_cast<int>(circs.size());
  uint64_t lmask = 0;
  for (int ci = 0; ci < nc; ++ci) {
    if (labels.at(circs[ci].id) < 0) lmask |= 1ULL << (nc - 1 - ci);
  }
  return generator_index(mask, lmask);
}

uint64_t CubeData::mask_of_generator(long long index) const {
  auto it = std::upper_bound(gen_offset.begin(), gen_offset.end(), index);
  return static_cast<uint64_t>(it - gen_offset.begin()) - 1;
}

LabeledGenerator CubeData::generator(long long index) const {
  uint64_t mask = mask_of_generator(index);
  uint64_t lmask = static_cast<uint64_t>(index - gen_offset[mask]);
  const auto& circs = circles[mask];
  const int nc = static_cast<int>(circs.size());
  LabeledGenerator g;
  g.v = vector_of(mask, n);
  for (int ci = 0; ci < nc; ++ci) {
    int label = ((lmask >> (nc - 1 - ci)) & 1) ? -1 : +1;
    g.labels.emplace_back(circs[ci].id, label);
  }
  int weight = 0;
  for (int b : g.v) weight += b;
  g.i = weight - d.n_minus();
  int label_sum = 0, annular = 0;
  for (int ci = 0; ci < nc; ++ci) {
    label_sum += g.labels[ci].second;
    if (!circs[ci].trivial) annular += g.labels[ci].second;
  }
  g.q = label_sum + weight + d.n_plus() - 2 * d.n_minus();
  g.k = annular;
  return g;
}

namespace {

struct Term {
  long long target;
  int coeff;
};

// All differential terms out of one generator: for each 0-resolved crossing,
// the merge/split TQFT rule with the standard sign.
std::vector<Term> differential_terms(const CubeData& cube, const SignAssignment& nu,
                                     long long gen_index) {
  const int n = cube.n;
  uint64_t mask = cube.mask_of_generator(gen_index);
  uint64_t lmask = static_cast<uint64_t>(gen_index - cube.gen_offset[mask]);
  const auto& src = cube.circles[mask];
  const int nc = static_cast<int>(src.size());
  std::map<int, int> labels;
  for (int ci = 0; ci < nc; ++ci) {
    labels[src[ci].id] = ((lmask >> (nc - 1 - ci)) & 1) ? -1 : +1;
  }
  std::vector<Term> out;
  for (int c = 0; c < n; ++c) {
    uint64_t bit = 1ULL << (n - 1 - c);
    if (mask & bit) continue;
    uint64_t umask = mask | bit;
    const auto& dst = cube.circles[umask];
    int sign = nu.value(mask, c) ? -1 : +1;

    // Circles meeting the surgered crossing.
    const auto& cr = cube.d.crossings[c];
    auto contains = [](const Circle& circ, int e) {
      return std::binary_search(circ.edges.begin(), circ.edges.end(), e);
    };
    std::vector<const Circle*> src_inv, dst_inv;
    for (const auto& circ : src) {
      for (int e : cr.edges) {
        if (contains(circ, e)) {
          src_inv.push_back(&circ);
          break;
        }
      }
    }
    for (const auto& circ : dst) {
      for (int e : cr.edges) {
        if (contains(circ, e)) {
          dst_inv.push_back(&circ);
          break;
        }
      }
    }

    auto emit = [&](const std::map<int, int>& target_labels) {
      out.push_back({cube.generator_index(umask, target_labels), sign});
    };
    std::map<int, int> base;  // labels on untouched circles carry over by id
    for (const auto& [id, lab] : labels) base[id] = lab;
    for (const auto* circ : src_inv) base.erase(circ->id);

    if (src_inv.size() == 2 && dst_inv.size() == 1) {
      int a = labels.at(src_inv[0]->id);
      int b = labels.at(src_inv[1]->id);
      if (a == 1 && b == 1) {
        base[dst_inv[0]->id] = 1;
        emit(base);
      } else if (a != b) {
        base[dst_inv[0]->id] = -1;
        emit(base);
      }
      // (-,-) -> 0
    } else if (src_inv.size() == 1 && dst_inv.size() == 2) {
      int a = labels.at(src_inv[0]->id);
      if (a == 1) {
        base[dst_inv[0]->id] = 1;
        base[dst_inv[1]->id] = -1;
        emit(base);
        base[dst_inv[0]->id] = -1;
        base[dst_inv[1]->id] = 1;
        emit(base);
      } else {
        base[dst_inv[0]->id] = -1;
        base[dst_inv[1]->id] = -1;
        emit(base);
      }
    } else {
      throw std::logic_error("surgery is neither a merge nor a split");
    }
  }
  return out;
}

GradedComplex build_complex(const AnnularDiagram& d, const Field& f, bool annular) {
  d.validate();
  f.validate();
  CubeData cube = build_cube(d);
  SignAssignment nu = standard_sign_assignment(cube.n);

  GradedComplex cx;
  cx.diagram = d;
  cx.field = f;
  cx.annular = annular;
  cx.gens.reserve(cube.total_gens);
  for (long long idx = 0; idx < cube.total_gens; ++idx) cx.gens.push_back(cube.generator(idx));

  // Group generators into blocks.
  std::map<std::pair<int, int>, std::map<int, std::vector<int>>> block_basis;
  for (long long idx = 0; idx < cube.total_gens; ++idx) {
    const auto& g = cx.gens[idx];
    std::pair<int, int> key{g.q, annular ? g.k : 0};
    block_basis[key][g.i].push_back(static_cast<int>(idx));
  }
  std::map<long long, std::pair<std::pair<int, int>, int>> position;  // gen -> (block key, pos in degree)
  for (const auto& [key, degrees] : block_basis) {
    for (const auto& [i, gens] : degrees) {
      for (size_t pos = 0; pos < gens.size(); ++pos) {
        position[gens[pos]] = {key, static_cast<int>(pos)};
      }
    }
  }
  for (const auto& [key, degrees] : block_basis) {
    ComplexBlock block;
    block.q = key.first;
    block.k = key.second;
    block.basis = degrees;
    for (const auto& [i, gens] : degrees) {
      auto next = degrees.find(i + 1);
      int target_dim = next == degrees.end() ? 0 : static_cast<int>(next->second.size());
      SparseMatrix m(target_dim, static_cast<int>(gens.size()));
      for (size_t col = 0; col < gens.size(); ++col) {
        for (const Term& t : differential_terms(cube, nu, gens[col])) {
          const auto& tg = cx.gens[t.target];
          if (annular && tg.k != block.k) continue;  // associated graded drops k-shifting terms
          auto [tkey, tpos] = position.at(t.target);
          if (tkey != key) {
            if (!annular) throw std::logic_error("differential left its q block");
            continue;
          }
          m.add(tpos, static_cast<int>(col), t.coeff);
        }
      }
      m.finalize();
      block.diff[i] = std::move(m);
    }
    cx.blocks.push_back(std::move(block));
  }
  return cx;
}

}  // namespace

int ComplexBlock::dim(int i) const {
  auto it = basis.find(i);
  return it == basis.end() ? 0 : static_cast<int>(it->second.size());
}

GradedComplex khovanov_complex(const AnnularDiagram& d, const Field& f) {
  return build_complex(d, f, false);
}

GradedComplex annular_complex(const AnnularDiagram& d, const Field& f) {
  return build_complex(d, f, true);
}

bool d_squared_zero(const GradedComplex& c) {
  long long p = c.field.is_rational() ? 0 : c.field.p;
  for (const auto& block : c.blocks) {
    for (const auto& [i, m] : block.diff) {
      auto next = block.diff.find(i + 1);
      if (next == block.diff.end()) continue;
      const SparseMatrix& m2 = next->second;
      if (m2.cols != m.rows) return false;
      // (m2 * m) column by column.
      for (int col = 0; col < m.cols; ++col) {
        std::map<int, long long> acc;
        for (const auto& [mid, v1] : m.col[col]) {
          for (const auto& [row, v2] : m2.col[mid]) acc[row] += v1 * v2;
        }
        for (const auto& [row, v] : acc) {
          if (p == 0 ? v != 0 : mod_pos(v, p) != 0) return false;
        }
      }
    }
  }
  return true;
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  int nw = std::min(threads, count);
  pool.reserve(nw);
  for (int w = 0; w < nw; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

long long PoincarePolynomial::dim(int i, int q, int k) const {
  auto it = terms.find({i, q, k});
  return it == terms.end() ? 0 : it->second;
}

long long PoincarePolynomial::total() const {
  long long t = 0;
  for (const auto& [key, d] : terms) t += d;
  return t;
}

PoincarePolynomial homology(const GradedComplex& c, int threads) {
  PoincarePolynomial out;
  out.annular = c.annular;
  std::vector<std::map<std::tuple<int, int, int>, long long>> partial(c.blocks.size());
  parallel_for(static_cast<int>(c.blocks.size()), threads, [&](int bi) {
    const ComplexBlock& block = c.blocks[bi];
    std::map<int, int> ranks;
    for (const auto& [i, m] : block.diff) ranks[i] = rank(m, c.field);
    for (const auto& [i, gens] : block.basis) {
      long long dim = static_cast<long long>(gens.size());
      auto ri = ranks.find(i);
      if (ri != ranks.end()) dim -= ri->second;
      auto rp = ranks.find(i - 1);
      if (rp != ranks.end()) dim -= rp->second;
      if (dim < 0) throw std::logic_error("negative homology dimension");
      if (dim > 0) partial[bi][{i, block.q, block.k}] = dim;
    }
  });
  for (const auto& m : partial) {
    for (const auto& [key, d] : m) out.terms[key] += d;
  }
  return out;
}

std::string poincare_to_json(const PoincarePolynomial& p, bool pretty) {
  json blocks = json::array();
  for (const auto& [key, d] : p.terms) {
    auto [i, q, k] = key;
    json entry{{"i", i}, {"q", q}, {"dim", d}};
    if (p.annular) entry["k"] = k;
    blocks.push_back(entry);
  }
  json j{{"blocks", blocks}};
  return pretty ? j.dump(2) : j.dump();
}

std::string poincare_to_string(const PoincarePolynomial& p) {
  if (p.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, d] : p.terms) {
    auto [i, q, k] = key;
    if (!first) os << " + ";
    first = false;
    if (d != 1) os << d << "*";
    os << "t^" << i << " q^" << q;
    if (p.annular) os << " k^" << k;
  }
  return os.str();
}

}  // namespace perkh
