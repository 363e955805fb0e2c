#include "perkh/equivariant.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include "json.hpp"

namespace perkh {

namespace {

uint64_t crossing_bit(int n, int j) { return uint64_t{1} << (n - 1 - j); }

uint64_t apply_vertex(int n, const std::vector<int>& sigma, uint64_t u) {
  uint64_t out = 0;
  for (int j = 0; j < n; ++j)
    if (u & crossing_bit(n, j)) out |= crossing_bit(n, sigma[j]);
  return out;
}

DenseMatrix mat_pow(const DenseMatrix& m, long long e, long long p) {
  DenseMatrix acc = DenseMatrix::identity(m.rows);
  DenseMatrix base = m;
  while (e > 0) {
    if (e & 1) acc = acc.mul(base, p);
    base = base.mul(base, p);
    e >>= 1;
  }
  return acc;
}

bool dense_equal(const DenseMatrix& a, const DenseMatrix& b, long long p) {
  if (a.rows != b.rows || a.cols != b.cols) return false;
  for (size_t t = 0; t < a.a.size(); ++t)
    if (mod_pos(a.a[t] - b.a[t], p) != 0) return false;
  return true;
}

}  // namespace

CorrectionCochain correction_cochain(int n, const SignAssignment& nu,
                                     const std::vector<int>& sigma) {
  if (nu.n != n) throw std::invalid_argument("sign assignment size mismatch");
  if (static_cast<int>(sigma.size()) != n) throw std::invalid_argument("sigma size mismatch");
  std::vector<char> hit(n, 0);
  for (int j : sigma) {
    if (j < 0 || j >= n || hit[j]) throw std::invalid_argument("sigma is not a permutation");
    hit[j] = 1;
  }

  const uint64_t verts = uint64_t{1} << n;
  CorrectionCochain out;
  out.n = n;
  out.c.assign(verts, 2);  // 2 = unset
  out.c[0] = 0;
  std::queue<uint64_t> bfs;
  bfs.push(0);
  while (!bfs.empty()) {
    uint64_t u = bfs.front();
    bfs.pop();
    uint64_t su = apply_vertex(n, sigma, u);
    for (int j = 0; j < n; ++j) {
      if (u & crossing_bit(n, j)) continue;
      uint64_t v = u | crossing_bit(n, j);
      int delta = (nu.value(u, j) + nu.value(su, sigma[j])) & 1;
      uint8_t want = static_cast<uint8_t>(out.c[u] ^ delta);
      if (out.c[v] == 2) {
        out.c[v] = want;
        bfs.push(v);
      } else if (out.c[v] != want) {
        throw std::logic_error("correction cochain system is inconsistent");
      }
    }
  }
  return out;
}

CubeSymmetry build_cube_symmetry(const AnnularDiagram& d, const PeriodicSymmetry& s) {
  const int n = d.n();
  const uint64_t verts = uint64_t{1} << n;
  std::vector<ResolutionConfig> cfgs;
  cfgs.reserve(verts);
  for (uint64_t u = 0; u < verts; ++u) cfgs.push_back(resolve(d, vector_of(u, n)));

  CubeSymmetry cs;
  cs.vertex_image.resize(verts);
  cs.circle_image.resize(verts);
  for (uint64_t u = 0; u < verts; ++u) {
    uint64_t su = apply_vertex(n, s.crossing_perm, u);
    cs.vertex_image[u] = su;
    for (const Circle& circ : cfgs[u].circles) {
      int img = map_circle_id(cfgs[u], circ.id, s.edge_perm, cfgs[su]);
      // Free-loop circles carry no real edges; a free loop around the axis is
      // setwise invariant, so its circle maps to itself.
      cs.circle_image[u][circ.id] = img < 0 ? circ.id : img;
    }
  }
  return cs;
}

ChainAction chain_action(const GradedComplex& cx, const PeriodicSymmetry& s,
                         const CorrectionCochain& c) {
  if (cx.field.is_rational())
    throw std::invalid_argument("chain_action requires a prime coefficient field");
  const long long p = cx.field.p;
  const int n = cx.diagram.n();
  if (c.n != n) throw std::invalid_argument("correction cochain size mismatch");

  CubeData cube = build_cube(cx.diagram);
  if (static_cast<long long>(cx.gens.size()) != cube.total_gens)
    throw std::logic_error("complex generators do not match the cube");
  CubeSymmetry cs = build_cube_symmetry(cx.diagram, s);

  // Global image of every generator, with its sign.
  std::vector<long long> image(cx.gens.size());
  std::vector<int> image_sign(cx.gens.size());
  for (long long g = 0; g < cube.total_gens; ++g) {
    uint64_t u = cube.mask_of_generator(g);
    LabeledGenerator gen = cube.generator(g);
    std::map<int, int> labels;
    for (auto [cid, lab] : gen.labels) labels[cs.circle_image[u].at(cid)] = lab;
    image[g] = cube.generator_index(cs.vertex_image[u], labels);
    image_sign[g] = c.value(u) ? -1 : 1;
  }

  ChainAction act;
  act.order = s.order;
  act.mats.resize(cx.blocks.size());
  for (size_t b = 0; b < cx.blocks.size(); ++b) {
    const ComplexBlock& blk = cx.blocks[b];
    // Position of each global generator inside its degree's basis.
    std::map<long long, std::pair<int, int>> pos;  // global -> (i, index)
    for (const auto& [i, basis] : blk.basis)
      for (size_t t = 0; t < basis.size(); ++t) pos[basis[t]] = {i, static_cast<int>(t)};
    for (const auto& [i, basis] : blk.basis) {
      DenseMatrix a(static_cast<int>(basis.size()), static_cast<int>(basis.size()));
      for (size_t t = 0; t < basis.size(); ++t) {
        auto it = pos.find(image[basis[t]]);
        if (it == pos.end() || it->second.first != i)
          throw std::logic_error("group action does not preserve the grading block");
        a.at(it->second.second, static_cast<int>(t)) = image_sign[basis[t]];
      }
      act.mats[b].emplace(i, std::move(a));
    }
  }

  // Commutation with the differential and order m, entrywise.
  for (size_t b = 0; b < cx.blocks.size(); ++b) {
    const ComplexBlock& blk = cx.blocks[b];
    for (const auto& [i, dmat] : blk.diff) {
      auto lo = act.mats[b].find(i);
      auto hi = act.mats[b].find(i + 1);
      DenseMatrix d = DenseMatrix::from_sparse(dmat);
      DenseMatrix left = d.mul(lo->second, p);
      DenseMatrix right = hi == act.mats[b].end() ? DenseMatrix(d.rows, d.cols)
                                                  : hi->second.mul(d, p);
      if (!dense_equal(left, right, p))
        throw std::logic_error("group action does not commute with the differential");
    }
    for (const auto& [i, a] : act.mats[b]) {
      DenseMatrix pw = mat_pow(a, s.order, p);
      if (!dense_equal(pw, DenseMatrix::identity(a.rows), p))
        throw std::logic_error("group action does not have the symmetry's order");
    }
  }
  return act;
}

long long EigenDecomposition::total_dim() const {
  long long t = 0;
  for (const auto& m : dims)
    for (const auto& [key, v] : m) t += v;
  return t;
}

EigenDecomposition eigen_decompose(const GradedComplex& cx, const ChainAction& act, int p, int n,
                                   long long r) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (!is_prime(r) || r == p) throw std::invalid_argument("r must be a prime different from p");
  if (cx.field.p != r) throw std::invalid_argument("complex must be defined over F_r");
  long long m = 1;
  for (int t = 0; t < n; ++t) m *= p;
  if (act.order != m) throw std::invalid_argument("action order must equal p^n");
  // r must have maximal multiplicative order phi(p^n) mod p^n.
  long long phi_m = m - m / p;
  long long pw = 1 % m;
  long long ord = 0;
  for (long long e = 1; e <= phi_m; ++e) {
    pw = (pw * (r % m)) % m;
    if (pw == 1) {
      ord = e;
      break;
    }
  }
  if (ord != phi_m)
    throw std::invalid_argument("r does not have maximal multiplicative order mod p^n");

  EigenDecomposition out;
  out.p = p;
  out.n = n;
  out.r = r;
  out.dims.assign(n + 1, {});
  out.delta_p.assign(n + 1, {});

  for (size_t b = 0; b < cx.blocks.size(); ++b) {
    const ComplexBlock& blk = cx.blocks[b];
    for (const auto& [i, basis] : blk.basis) {
      int dim_i = static_cast<int>(basis.size());
      auto adj = [&](int deg) {
        auto it = blk.diff.find(deg);
        if (it != blk.diff.end()) return DenseMatrix::from_sparse(it->second);
        int rows = deg == i ? 0 : dim_i;
        int cols = deg == i ? dim_i : 0;
        return DenseMatrix(rows, cols);
      };
      HomologySpace hs = homology_space(adj(i), adj(i - 1), r);
      if (hs.dim == 0) continue;

      // Induced action on homology in the representative basis.
      const DenseMatrix& a = act.mats[b].at(i);
      DenseMatrix g(hs.dim, hs.dim);
      for (int j = 0; j < hs.dim; ++j) {
        std::vector<long long> z(dim_i, 0);
        for (int t = 0; t < dim_i; ++t)
          for (int u = 0; u < dim_i; ++u)
            z[t] = mod_pos(z[t] + a.at(t, u) * hs.reps.at(u, j), r);
        std::vector<long long> coords = hs.coordinates(z, r);
        for (int t = 0; t < hs.dim; ++t) g.at(t, j) = coords[t];
      }

      long long total = 0;
      for (int s = 0; s <= n; ++s) {
        DenseMatrix phi(hs.dim, hs.dim);
        if (s == 0) {
          phi = g.add_scaled(DenseMatrix::identity(hs.dim), -1, r);
        } else {
          long long step = 1;
          for (int t = 1; t < s; ++t) step *= p;
          DenseMatrix gs = mat_pow(g, step, r);
          DenseMatrix acc = DenseMatrix::identity(hs.dim);
          DenseMatrix cur = DenseMatrix::identity(hs.dim);
          for (int t = 1; t < p; ++t) {
            cur = cur.mul(gs, r);
            acc = acc.add_scaled(cur, 1, r);
          }
          phi = acc;
        }
        long long ker = hs.dim - rank_dense_modp(phi, r);
        total += ker;
        if (ker == 0) continue;
        long long phi_s = s == 0 ? 1 : [&] {
          long long ps = 1;
          for (int t = 0; t < s; ++t) ps *= p;
          return ps - ps / p;
        }();
        if (ker % phi_s != 0)
          throw std::logic_error("eigenspace dimension not divisible by phi(p^s)");
        out.dims[s][{i, blk.q}] += ker;
        out.delta_p[s][{i, blk.q}] += ker / phi_s;
      }
      if (total != hs.dim)
        throw std::logic_error("generalized eigenspaces do not span the homology");
    }
  }
  return out;
}

BorelTable borel_ekh(const GradedComplex& cx, const ChainAction& act, int p, int max_degree) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (cx.field.p != p) throw std::invalid_argument("coefficient field must be F_p");
  if (act.order != p) throw std::invalid_argument("action order must equal p");

  int wmin = 0, wmax = 0;
  bool any = false;
  for (const auto& blk : cx.blocks)
    for (const auto& [i, basis] : blk.basis)
      if (!basis.empty()) {
        wmin = any ? std::min(wmin, i) : i;
        wmax = any ? std::max(wmax, i) : i;
        any = true;
      }
  int width = any ? wmax - wmin : 0;
  int J = max_degree < 0 ? width + 4 * p : max_degree;
  if (J < width + 2 * p)
    throw std::invalid_argument("max degree too small to observe stability");

  BorelTable out;
  out.p = p;
  out.max_degree = J;
  out.width_min = wmin;
  out.width_max = wmax;

  for (size_t b = 0; b < cx.blocks.size(); ++b) {
    const ComplexBlock& blk = cx.blocks[b];
    auto dim_i = [&](int i) {
      auto it = blk.basis.find(i);
      return it == blk.basis.end() ? 0 : static_cast<int>(it->second.size());
    };
    // Total complex T^t = sum over columns j >= 0 of C^{t-j}; offsets of the
    // (j, i) summand inside T^t.
    auto layout = [&](int t) {
      std::vector<std::pair<int, int>> parts;  // (j, offset)
      int off = 0;
      for (int j = std::max(0, t - wmax); t - j >= wmin; ++j) {
        int d = dim_i(t - j);
        if (d > 0) parts.emplace_back(j, off);
        off += d;
      }
      return std::make_pair(parts, off);
    };

    // N = 1 + g + ... + g^{p-1} per degree, computed once.
    std::map<int, DenseMatrix> norm;
    for (const auto& [i, a] : act.mats[b]) {
      DenseMatrix acc = DenseMatrix::identity(a.rows);
      DenseMatrix cur = DenseMatrix::identity(a.rows);
      for (int t = 1; t < p; ++t) {
        cur = cur.mul(a, p);
        acc = acc.add_scaled(cur, 1, p);
      }
      norm.emplace(i, std::move(acc));
    }

    auto total_diff = [&](int t) {
      auto [src, src_dim] = layout(t);
      auto [dst, dst_dim] = layout(t + 1);
      std::map<int, int> dst_off;
      for (auto [j, off] : dst) dst_off[j] = off;
      SparseMatrix m(dst_dim, src_dim);
      for (auto [j, off] : src) {
        int i = t - j;
        // Vertical: the complex differential into column j.
        auto dit = blk.diff.find(i);
        if (dit != blk.diff.end() && dst_off.count(j)) {
          int doff = dst_off[j];
          for (int cc = 0; cc < dit->second.cols; ++cc)
            for (auto [rr, vv] : dit->second.col[cc]) m.add(doff + rr, off + cc, vv);
        }
        // Horizontal: g-1 out of even columns, the norm out of odd ones,
        // twisted by (-1)^i so the squares anticommute.
        if (dst_off.count(j + 1)) {
          int doff = dst_off[j + 1];
          int sgn = (i % 2 == 0) ? 1 : -1;
          const DenseMatrix& a = act.mats[b].at(i);
          if (j % 2 == 0) {
            for (int rr = 0; rr < a.rows; ++rr)
              for (int cc = 0; cc < a.cols; ++cc) {
                long long v = a.at(rr, cc) - (rr == cc ? 1 : 0);
                if (v != 0) m.add(doff + rr, off + cc, sgn * v);
              }
          } else {
            const DenseMatrix& nm = norm.at(i);
            for (int rr = 0; rr < nm.rows; ++rr)
              for (int cc = 0; cc < nm.cols; ++cc)
                if (nm.at(rr, cc) % p != 0) m.add(doff + rr, off + cc, sgn * nm.at(rr, cc));
          }
        }
      }
      m.finalize();
      return m;
    };

    std::map<int, int> ranks;
    for (int t = wmin - 1; t <= J; ++t) ranks[t] = rank(total_diff(t), cx.field);
    for (int t = wmin; t <= J; ++t) {
      long long dim = layout(t).second - ranks[t] - ranks[t - 1];
      if (dim != 0) out.dims[{blk.q, t}] = dim;
    }

    auto at = [&](int t) {
      auto it = out.dims.find({blk.q, t});
      return it == out.dims.end() ? 0LL : it->second;
    };
    out.stable_rank[blk.q] = at(J);
  }

  out.stable = true;
  for (const auto& [q, rank_q] : out.stable_rank) {
    auto at = [&](int t) {
      auto it = out.dims.find({q, t});
      return it == out.dims.end() ? 0LL : it->second;
    };
    if (at(J) != at(J - 1) || at(J) != at(J - 2)) out.stable = false;
  }
  for (const auto& [q, rank_q] : out.stable_rank) out.stable_total += rank_q;
  return out;
}

namespace {

long long prime_order_or_throw(const PeriodicSymmetry& s) {
  if (!is_prime(s.order)) throw std::invalid_argument("symmetry order must be prime");
  return s.order;
}

}  // namespace

SmithReport verify_smith(const AnnularDiagram& lift, const PeriodicSymmetry& s) {
  const int p = static_cast<int>(prime_order_or_throw(s));
  validate_symmetry(lift, s);
  auto [quot, maps] = quotient_diagram(lift, s);
  Field f = Field::prime(p);

  PoincarePolynomial akh_lift = homology(annular_complex(lift, f));
  PoincarePolynomial akh_quot = homology(annular_complex(quot, f));
  PoincarePolynomial kh_lift = homology(khovanov_complex(lift, f));

  SmithReport out;
  out.p = p;

  // Annular inequality, per quotient (q, k) block.
  std::map<std::pair<int, int>, long long> quot_qk;
  for (const auto& [key, dim] : akh_quot.terms) {
    auto [i, q, k] = key;
    quot_qk[{q, k}] += dim;
  }
  for (const auto& [qk, right] : quot_qk) {
    auto [q, k] = qk;
    int lq = p * q - (p - 1) * k;
    long long left = 0;
    for (const auto& [key, dim] : akh_lift.terms) {
      auto [i, lq2, lk] = key;
      if (lq2 == lq && lk == k) left += dim;
    }
    out.lines.push_back({"annular", q, k, lq, left, right, left >= right});
  }

  // Kh inequality, collecting every quotient block landing in lift degree q.
  std::map<int, long long> kh_right;
  for (const auto& [qk, dim] : quot_qk) {
    auto [q, k] = qk;
    kh_right[p * q - (p - 1) * k] += dim;
  }
  for (const auto& [lq, right] : kh_right) {
    long long left = 0;
    for (const auto& [key, dim] : kh_lift.terms) {
      auto [i, q2, k2] = key;
      if (q2 == lq) left += dim;
    }
    out.lines.push_back({"kh", lq, 0, lq, left, right, left >= right});
  }

  out.pass = true;
  for (const auto& line : out.lines) out.pass = out.pass && line.ok;
  return out;
}

FixedGenReport verify_fixed_generators(const AnnularDiagram& lift, const PeriodicSymmetry& s) {
  const int p = static_cast<int>(prime_order_or_throw(s));
  validate_symmetry(lift, s);
  auto [quot, maps] = quotient_diagram(lift, s);

  // Quotient generators, pushed through (q, k) -> (pq - (p-1)k, k).
  std::map<std::pair<int, int>, long long> quot_counts;
  for (const LabeledGenerator& g : generators(quot)) quot_counts[{p * g.q - (p - 1) * g.k, g.k}]++;

  // Sigma-invariant generators of the lift.
  CubeData cube = build_cube(lift);
  CubeSymmetry cs = build_cube_symmetry(lift, s);
  std::map<std::pair<int, int>, long long> inv_counts;
  for (long long g = 0; g < cube.total_gens; ++g) {
    uint64_t u = cube.mask_of_generator(g);
    if (cs.vertex_image[u] != u) continue;
    LabeledGenerator gen = cube.generator(g);
    bool invariant = true;
    std::map<int, int> labels(gen.labels.begin(), gen.labels.end());
    for (auto [cid, lab] : gen.labels)
      if (labels.at(cs.circle_image[u].at(cid)) != lab) invariant = false;
    if (invariant) inv_counts[{gen.q, gen.k}]++;
  }

  FixedGenReport out;
  out.p = p;
  std::map<std::pair<int, int>, std::pair<long long, long long>> merged;
  for (const auto& [qk, c] : inv_counts) merged[qk].first = c;
  for (const auto& [qk, c] : quot_counts) merged[qk].second = c;
  out.pass = true;
  for (const auto& [qk, lr] : merged) {
    bool ok = lr.first == lr.second;
    out.lines.push_back({qk.first, qk.second, lr.first, lr.second, ok});
    out.pass = out.pass && ok;
  }
  return out;
}

std::string smith_report_to_json(const SmithReport& r, bool pretty) {
  nlohmann::json j;
  j["p"] = r.p;
  j["verdict"] = r.pass ? "pass" : "fail";
  j["lines"] = nlohmann::json::array();
  for (const auto& line : r.lines)
    j["lines"].push_back({{"kind", line.kind},
                          {"q", line.q},
                          {"k", line.k},
                          {"lift_q", line.lift_q},
                          {"left", line.left},
                          {"right", line.right},
                          {"ok", line.ok}});
  return pretty ? j.dump(2) : j.dump();
}

std::string fixed_gen_report_to_json(const FixedGenReport& r, bool pretty) {
  nlohmann::json j;
  j["p"] = r.p;
  j["verdict"] = r.pass ? "pass" : "fail";
  j["lines"] = nlohmann::json::array();
  for (const auto& line : r.lines)
    j["lines"].push_back({{"lift_q", line.lift_q},
                          {"k", line.k},
                          {"invariant", line.invariant_count},
                          {"quotient", line.quotient_count},
                          {"ok", line.ok}});
  return pretty ? j.dump(2) : j.dump();
}

}  // namespace perkh
