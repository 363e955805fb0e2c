#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace perkh {

// Coefficient field: a prime p (machine-word sized) or the rationals (p == 0).
struct Field {
  long long p = 2;

  bool is_rational() const { return p == 0; }
  void validate() const;

  static Field rationals() { return Field{0}; }
  static Field prime(long long p) {
    Field f{p};
    f.validate();
    return f;
  }
};

long long mod_pos(long long a, long long p);
long long mod_pow(long long b, long long e, long long p);
long long mod_inv(long long a, long long p);
bool is_prime(long long n);

// Sparse integer matrix, column-major. Entries are arbitrary integers; they
// are reduced mod p (or used exactly over Q) at elimination time.
struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  // cols entries; each column holds (row, value) pairs sorted by row.
  std::vector<std::vector<std::pair<int, long long>>> col;

  SparseMatrix() = default;
  SparseMatrix(int r, int c) : rows(r), cols(c), col(c) {}

  void add(int r, int c, long long v);
  void finalize();  // sort columns, combine duplicate rows, drop zeros
  long long nnz() const;
};

// Dense matrix over F_p with row-major storage; the workhorse for the
// homology-representative and action computations (blocks are small).
struct DenseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<long long> a;  // rows*cols

  DenseMatrix() = default;
  DenseMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

  long long& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  long long at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static DenseMatrix identity(int n);
  static DenseMatrix from_sparse(const SparseMatrix& m);

  DenseMatrix mul(const DenseMatrix& other, long long p) const;
  DenseMatrix add_scaled(const DenseMatrix& other, long long scale, long long p) const;
};

// rank of a matrix over the given field. Sparse elimination (min-fill pivot)
// kicks in above the dense threshold for prime fields; Q always runs the
// fraction-free Bareiss path.
int rank(const SparseMatrix& m, const Field& f);
int rank_dense_modp(DenseMatrix m, long long p);
int rank_sparse_modp(const SparseMatrix& m, long long p);
int rank_bareiss(const SparseMatrix& m);

// Basis of ker(m) over F_p as columns of the returned matrix.
DenseMatrix kernel_basis_modp(DenseMatrix m, long long p);

// Solves A x = b over F_p; returns false if inconsistent.
bool solve_modp(DenseMatrix a, std::vector<long long> b, std::vector<long long>& x, long long p);

// Homology of a two-step complex  C^{i-1} --B--> C^i --A--> C^{i+1}  over F_p,
// with chosen cycle representatives and the data needed to express an
// arbitrary cycle in the representative basis modulo im(B).
struct HomologySpace {
  int dim = 0;
  // chain_dim x dim matrix; column j is the j-th representative cycle.
  DenseMatrix reps;
  // Internal solve data: [B | reps] assembled for coordinate extraction.
  DenseMatrix solve_mat;
  int b_cols = 0;

  // Express a cycle z (length = chain dim) in the representative basis
  // modulo boundaries. Throws if z is not a cycle representative combination.
  std::vector<long long> coordinates(const std::vector<long long>& z, long long p) const;
};

HomologySpace homology_space(const DenseMatrix& a, const DenseMatrix& b, long long p);

}  // namespace perkh
