#include "perkh/linalg.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <numeric>

namespace perkh {

namespace {
constexpr int kDenseThreshold = 512;  // below this many columns, eliminate densely
using bigint = boost::multiprecision::cpp_int;
}  // namespace

void Field::validate() const {
  if (p == 0) return;
  if (p < 2 || p > (1LL << 31) || !is_prime(p)) {
    throw std::invalid_argument("field characteristic must be 0 (rationals) or a prime < 2^31");
  }
}

long long mod_pos(long long a, long long p) {
  long long r = a % p;
  return r < 0 ? r + p : r;
}

long long mod_pow(long long b, long long e, long long p) {
  long long r = 1;
  b = mod_pos(b, p);
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

long long mod_inv(long long a, long long p) {
  a = mod_pos(a, p);
  if (a == 0) throw std::domain_error("division by zero mod p");
  return mod_pow(a, p - 2, p);
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

void SparseMatrix::add(int r, int c, long long v) {
  if (r < 0 || r >= rows || c < 0 || c >= cols) throw std::out_of_range("sparse entry out of range");
  if (v != 0) col[c].emplace_back(r, v);
}

void SparseMatrix::finalize() {
  for (auto& column : col) {
    std::sort(column.begin(), column.end());
    std::vector<std::pair<int, long long>> merged;
    for (const auto& [r, v] : column) {
      if (!merged.empty() && merged.back().first == r) {
        merged.back().second += v;
      } else {
        merged.emplace_back(r, v);
      }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const auto& e) { return e.second == 0; }),
                 merged.end());
    column = std::move(merged);
  }
}

long long SparseMatrix::nnz() const {
  long long n = 0;
  for (const auto& c : col) n += static_cast<long long>(c.size());
  return n;
}

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

DenseMatrix DenseMatrix::from_sparse(const SparseMatrix& s) {
  DenseMatrix m(s.rows, s.cols);
  for (int c = 0; c < s.cols; ++c) {
    for (const auto& [r, v] : s.col[c]) m.at(r, c) += v;
  }
  return m;
}

DenseMatrix DenseMatrix::mul(const DenseMatrix& other, long long p) const {
  if (cols != other.rows) throw std::invalid_argument("matrix dimension mismatch");
  DenseMatrix out(rows, other.cols);
  for (int i = 0; i < rows; ++i) {
    for (int k = 0; k < cols; ++k) {
      long long v = mod_pos(at(i, k), p);
      if (v == 0) continue;
      for (int j = 0; j < other.cols; ++j) {
        out.at(i, j) = (out.at(i, j) + v * mod_pos(other.at(k, j), p)) % p;
      }
    }
  }
  return out;
}

DenseMatrix DenseMatrix::add_scaled(const DenseMatrix& other, long long scale, long long p) const {
  if (rows != other.rows || cols != other.cols) throw std::invalid_argument("matrix dimension mismatch");
  DenseMatrix out(rows, cols);
  for (size_t i = 0; i < a.size(); ++i) {
    out.a[i] = mod_pos(a[i] + scale * other.a[i], p);
  }
  return out;
}

int rank_dense_modp(DenseMatrix m, long long p) {
  for (auto& v : m.a) v = mod_pos(v, p);
  int rank = 0;
  for (int c = 0; c < m.cols && rank < m.rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < m.rows; ++r) {
      if (m.at(r, c) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      for (int j = c; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
    }
    long long inv = mod_inv(m.at(rank, c), p);
    for (int j = c; j < m.cols; ++j) m.at(rank, j) = m.at(rank, j) * inv % p;
    for (int r = 0; r < m.rows; ++r) {
      if (r == rank) continue;
      long long f = m.at(r, c);
      if (f == 0) continue;
      for (int j = c; j < m.cols; ++j) {
        m.at(r, j) = mod_pos(m.at(r, j) - f * m.at(rank, j), p);
      }
    }
    ++rank;
  }
  return rank;
}

// Sparse elimination over F_p with a minimal-fill pivot heuristic: among the
// lightest remaining columns, pick the entry whose row is lightest.
int rank_sparse_modp(const SparseMatrix& m, long long p) {
  // Row-major working copy: row -> (col -> value).
  std::vector<std::map<int, long long>> rowdata(m.rows);
  for (int c = 0; c < m.cols; ++c) {
    for (const auto& [r, v] : m.col[c]) {
      long long mv = mod_pos(rowdata[r][c] + v, p);
      if (mv == 0) rowdata[r].erase(c); else rowdata[r][c] = mv;
    }
  }
  std::vector<int> colcount(m.cols, 0);
  for (const auto& row : rowdata) {
    for (const auto& [c, v] : row) ++colcount[c];
  }
  std::vector<bool> rowdone(m.rows, false);
  int rank = 0;
  for (;;) {
    // pivot selection
    int bestr = -1, bestc = -1;
    long long bestscore = -1;
    for (int r = 0; r < m.rows; ++r) {
      if (rowdone[r] || rowdata[r].empty()) continue;
      for (const auto& [c, v] : rowdata[r]) {
        long long score =
            (static_cast<long long>(rowdata[r].size()) - 1) * (colcount[c] - 1);
        if (bestscore < 0 || score < bestscore) {
          bestscore = score;
          bestr = r;
          bestc = c;
        }
      }
    }
    if (bestr < 0) break;
    ++rank;
    rowdone[bestr] = true;
    auto pivot_row = rowdata[bestr];
    for (const auto& [c, v] : pivot_row) --colcount[c];
    long long inv = mod_inv(pivot_row.at(bestc), p);
    for (int r = 0; r < m.rows; ++r) {
      if (rowdone[r]) continue;
      auto it = rowdata[r].find(bestc);
      if (it == rowdata[r].end()) continue;
      long long f = it->second * inv % p;
      for (const auto& [c, v] : pivot_row) {
        auto jt = rowdata[r].find(c);
        long long cur = (jt == rowdata[r].end()) ? 0 : jt->second;
        long long nv = mod_pos(cur - f * v, p);
        if (nv == 0) {
          if (jt != rowdata[r].end()) {
            rowdata[r].erase(jt);
            --colcount[c];
          }
        } else {
          if (jt == rowdata[r].end()) {
            rowdata[r][c] = nv;
            ++colcount[c];
          } else {
            jt->second = nv;
          }
        }
      }
    }
    rowdata[bestr].clear();
  }
  return rank;
}

// Fraction-free Gaussian elimination (Bareiss) for exact ranks over Q.
int rank_bareiss(const SparseMatrix& m) {
  std::vector<std::vector<bigint>> a(m.rows, std::vector<bigint>(m.cols, 0));
  for (int c = 0; c < m.cols; ++c) {
    for (const auto& [r, v] : m.col[c]) a[r][c] += v;
  }
  int rank = 0;
  bigint prev = 1;
  for (int c = 0; c < m.cols && rank < m.rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < m.rows; ++r) {
      if (a[r][c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) std::swap(a[pivot], a[rank]);
    for (int r = rank + 1; r < m.rows; ++r) {
      for (int j = c + 1; j < m.cols; ++j) {
        a[r][j] = (a[rank][c] * a[r][j] - a[r][c] * a[rank][j]) / prev;
      }
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

int rank(const SparseMatrix& m, const Field& f) {
  if (m.rows == 0 || m.cols == 0) return 0;
  if (f.is_rational()) return rank_bareiss(m);
  if (m.cols < kDenseThreshold) return rank_dense_modp(DenseMatrix::from_sparse(m), f.p);
  return rank_sparse_modp(m, f.p);
}

DenseMatrix kernel_basis_modp(DenseMatrix m, long long p) {
  for (auto& v : m.a) v = mod_pos(v, p);
  std::vector<int> pivot_col;  // pivot column of each eliminated row
  int rank = 0;
  for (int c = 0; c < m.cols && rank < m.rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < m.rows; ++r) {
      if (m.at(r, c) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
    }
    long long inv = mod_inv(m.at(rank, c), p);
    for (int j = 0; j < m.cols; ++j) m.at(rank, j) = m.at(rank, j) * inv % p;
    for (int r = 0; r < m.rows; ++r) {
      if (r == rank) continue;
      long long f = m.at(r, c);
      if (f == 0) continue;
      for (int j = 0; j < m.cols; ++j) {
        m.at(r, j) = mod_pos(m.at(r, j) - f * m.at(rank, j), p);
      }
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  DenseMatrix ker(m.cols, m.cols - rank);
  int kcol = 0;
  for (int c = 0; c < m.cols; ++c) {
    if (is_pivot[c]) continue;
    ker.at(c, kcol) = 1;
    for (int r = 0; r < rank; ++r) {
      ker.at(pivot_col[r], kcol) = mod_pos(-m.at(r, c), p);
    }
    ++kcol;
  }
  return ker;
}

bool solve_modp(DenseMatrix a, std::vector<long long> b, std::vector<long long>& x, long long p) {
  if (static_cast<int>(b.size()) != a.rows) throw std::invalid_argument("rhs size mismatch");
  for (auto& v : a.a) v = mod_pos(v, p);
  for (auto& v : b) v = mod_pos(v, p);
  std::vector<int> pivot_col;
  int rank = 0;
  for (int c = 0; c < a.cols && rank < a.rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < a.rows; ++r) {
      if (a.at(r, c) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      for (int j = 0; j < a.cols; ++j) std::swap(a.at(pivot, j), a.at(rank, j));
      std::swap(b[pivot], b[rank]);
    }
    long long inv = mod_inv(a.at(rank, c), p);
    for (int j = 0; j < a.cols; ++j) a.at(rank, j) = a.at(rank, j) * inv % p;
    b[rank] = b[rank] * inv % p;
    for (int r = 0; r < a.rows; ++r) {
      if (r == rank) continue;
      long long f = a.at(r, c);
      if (f == 0) continue;
      for (int j = 0; j < a.cols; ++j) {
        a.at(r, j) = mod_pos(a.at(r, j) - f * a.at(rank, j), p);
      }
      b[r] = mod_pos(b[r] - f * b[rank], p);
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (int r = rank; r < a.rows; ++r) {
    if (b[r] != 0) return false;
  }
  x.assign(a.cols, 0);
  for (int r = 0; r < rank; ++r) x[pivot_col[r]] = b[r];
  return true;
}

HomologySpace homology_space(const DenseMatrix& a, const DenseMatrix& b, long long p) {
  // a: C^i -> C^{i+1};  b: C^{i-1} -> C^i.  Chain dim is a.cols == b.rows.
  if (a.cols != b.rows) throw std::invalid_argument("chain dimension mismatch");
  int chain_dim = a.cols;
  DenseMatrix ker = kernel_basis_modp(a, p);
  int rank_b = rank_dense_modp(b, p);

  HomologySpace h;
  h.b_cols = b.cols;
  h.dim = ker.cols - rank_b;
  // Pick kernel columns extending the column space of b, greedily.
  DenseMatrix work(chain_dim, b.cols + ker.cols);
  for (int r = 0; r < chain_dim; ++r) {
    for (int c = 0; c < b.cols; ++c) work.at(r, c) = b.at(r, c);
    for (int c = 0; c < ker.cols; ++c) work.at(r, b.cols + c) = ker.at(r, c);
  }
  // Incremental elimination recording which appended kernel columns raise rank.
  DenseMatrix m = work;
  for (auto& v : m.a) v = mod_pos(v, p);
  std::vector<int> chosen;
  int rank = 0;
  for (int c = 0; c < m.cols && rank < m.rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < m.rows; ++r) {
      if (m.at(r, c) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (c >= b.cols) chosen.push_back(c - b.cols);
    if (pivot != rank) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
    }
    long long inv = mod_inv(m.at(rank, c), p);
    for (int j = 0; j < m.cols; ++j) m.at(rank, j) = m.at(rank, j) * inv % p;
    for (int r = 0; r < m.rows; ++r) {
      if (r == rank) continue;
      long long f = m.at(r, c);
      if (f == 0) continue;
      for (int j = 0; j < m.cols; ++j) {
        m.at(r, j) = mod_pos(m.at(r, j) - f * m.at(rank, j), p);
      }
    }
    ++rank;
  }
  if (static_cast<int>(chosen.size()) != h.dim) {
    throw std::logic_error("homology representative selection failed");
  }
  h.reps = DenseMatrix(chain_dim, h.dim);
  for (int j = 0; j < h.dim; ++j) {
    for (int r = 0; r < chain_dim; ++r) h.reps.at(r, j) = ker.at(r, chosen[j]);
  }
  h.solve_mat = DenseMatrix(chain_dim, b.cols + h.dim);
  for (int r = 0; r < chain_dim; ++r) {
    for (int c = 0; c < b.cols; ++c) h.solve_mat.at(r, c) = b.at(r, c);
    for (int c = 0; c < h.dim; ++c) h.solve_mat.at(r, b.cols + c) = h.reps.at(r, c);
  }
  return h;
}

std::vector<long long> HomologySpace::coordinates(const std::vector<long long>& z, long long p) const {
  std::vector<long long> x;
  if (!solve_modp(solve_mat, z, x, p)) {
    throw std::logic_error("vector is not a cycle modulo boundaries in this space");
  }
  return std::vector<long long>(x.begin() + b_cols, x.end());
}

}  // namespace perkh
