#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "perkh/diagram.hpp"
#include "perkh/linalg.hpp"
#include "perkh/resolution.hpp"

namespace perkh {

// Cube vertices are bit masks with v[0] as the most significant bit, so mask
// order equals lexicographic order on resolution vectors.
uint64_t mask_of(const std::vector<int>& v);
std::vector<int> vector_of(uint64_t mask, int n);

// A mod-2 cochain on cube edges. Edge (u, u + e_j) is keyed by the vertex u
// with bit j clear and the flipped crossing index j.
struct SignAssignment {
  int n = 0;
  std::vector<uint8_t> values;  // size n * 2^n, indexed by mask * n + j

  int value(uint64_t u, int j) const { return values[u * n + j]; }
  int value(const std::vector<int>& u, int j) const { return value(mask_of(u), j); }
  // Every 2-face of the cube must sum to 1 mod 2.
  bool is_cocycle() const;
};

// nu(u, u+e_j) = u_1 + ... + u_{j-1} mod 2.
SignAssignment standard_sign_assignment(int n);

// Precomputed cube-of-resolutions bookkeeping shared by the complex builders
// and the chain-level group action: circles of every resolution and the
// deterministic global numbering of labeled generators.
struct CubeData {
  AnnularDiagram d;
  int n = 0;
  std::vector<std::vector<Circle>> circles;  // per vertex mask
  std::vector<long long> gen_offset;         // per vertex mask
  long long total_gens = 0;

  long long generator_index(uint64_t mask, uint64_t lmask) const;
  // Index of the generator with the given labels (circle id -> +1/-1).
  long long generator_index(uint64_t mask, const std::map<int, int>& labels) const;
  LabeledGenerator generator(long long index) const;
  uint64_t mask_of_generator(long long index) const;
};

CubeData build_cube(const AnnularDiagram& d);

struct ComplexBlock {
  int q = 0;
  int k = 0;  // meaningful only for annular complexes
  std::map<int, std::vector<int>> basis;  // i -> global generator indices
  std::map<int, SparseMatrix> diff;       // i -> matrix C^i -> C^{i+1}

  int dim(int i) const;
};

struct GradedComplex {
  AnnularDiagram diagram;
  Field field;
  bool annular = false;
  std::vector<LabeledGenerator> gens;  // deterministic global order
  std::vector<ComplexBlock> blocks;    // ordered by (q, k)
};

GradedComplex khovanov_complex(const AnnularDiagram& d, const Field& f);
GradedComplex annular_complex(const AnnularDiagram& d, const Field& f);

bool d_squared_zero(const GradedComplex& c);

struct PoincarePolynomial {
  bool annular = false;
  std::map<std::tuple<int, int, int>, long long> terms;  // (i, q, k) -> dim

  long long dim(int i, int q, int k = 0) const;
  long long total() const;
};

PoincarePolynomial homology(const GradedComplex& c, int threads = 1);

std::string poincare_to_json(const PoincarePolynomial& p, bool pretty = false);
std::string poincare_to_string(const PoincarePolynomial& p);

// Runs fn(0..count-1) on up to `threads` workers; fn must be thread-safe.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace perkh
