#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "perkh/diagram.hpp"
#include "perkh/homology.hpp"
#include "perkh/linalg.hpp"

namespace perkh {

// Mod-2 vertex cochain fixing the signs of the chain-level group action:
// for every cube edge (u,v), nu(sigma u, sigma v) + nu(u, v) = c(u) + c(v).
struct CorrectionCochain {
  int n = 0;
  std::vector<uint8_t> c;  // 2^n values

  int value(uint64_t u) const { return c[u]; }
};

// sigma[j] is the image crossing index of crossing j.
CorrectionCochain correction_cochain(int n, const SignAssignment& nu, const std::vector<int>& sigma);

// Resolution-level shadow of the symmetry: the image of every cube vertex and
// of every circle at that vertex. Free-loop circles are assumed invariant
// (the symmetry data names no free-loop permutation; loops around the axis
// map to themselves).
struct CubeSymmetry {
  std::vector<uint64_t> vertex_image;            // per vertex mask
  std::vector<std::map<int, int>> circle_image;  // per vertex mask: circle id -> image id
};

CubeSymmetry build_cube_symmetry(const AnnularDiagram& d, const PeriodicSymmetry& s);

// Signed permutation action x -> (-1)^{c(vertex(x))} sigma(x) on each graded
// block; commutes with the differential and has the symmetry's order.
struct ChainAction {
  int order = 0;
  // Parallel to the complex's blocks: per block, per homological degree, the
  // action matrix in the block's basis (entries -1/0/+1).
  std::vector<std::map<int, DenseMatrix>> mats;
};

ChainAction chain_action(const GradedComplex& cx, const PeriodicSymmetry& s,
                         const CorrectionCochain& c);

// Generalized eigenspace dimensions of the induced action on homology over
// F_r, grouped by the cyclotomic factors Phi_{p^s} of X^{p^n} - 1.
struct EigenDecomposition {
  int p = 0;
  int n = 0;
  long long r = 0;
  // s = 0..n: F_r-dims of ker Phi_{p^s}(g) per (i, q).
  std::vector<std::map<std::pair<int, int>, long long>> dims;
  // dims divided by phi(p^s) (phi(1) = 1).
  std::vector<std::map<std::pair<int, int>, long long>> delta_p;

  long long total_dim() const;
};

EigenDecomposition eigen_decompose(const GradedComplex& cx, const ChainAction& act, int p, int n,
                                   long long r);

// Truncated Borel equivariant Khovanov homology table for m = p = char F.
struct BorelTable {
  int p = 0;
  int max_degree = 0;
  int width_min = 0;
  int width_max = 0;
  std::map<std::pair<int, int>, long long> dims;  // (q, total degree) -> dim
  std::map<int, long long> stable_rank;           // per q, at the truncation edge
  bool stable = false;                            // last three degrees agree per q
  long long stable_total = 0;
};

// max_degree < 0 selects the default (homological width + 4p).
BorelTable borel_ekh(const GradedComplex& cx, const ChainAction& act, int p, int max_degree = -1);

struct SmithReport {
  int p = 0;
  struct Line {
    std::string kind;  // "annular" or "kh"
    int q = 0;         // quotient-side gradings
    int k = 0;
    int lift_q = 0;  // lift-side q after (q,k) -> (pq-(p-1)k, k)
    long long left = 0;
    long long right = 0;
    bool ok = false;
  };
  std::vector<Line> lines;
  bool pass = false;
};

SmithReport verify_smith(const AnnularDiagram& lift, const PeriodicSymmetry& s);

struct FixedGenReport {
  int p = 0;
  struct Line {
    int lift_q = 0;
    int k = 0;
    long long invariant_count = 0;
    long long quotient_count = 0;
    bool ok = false;
  };
  std::vector<Line> lines;
  bool pass = false;
};

FixedGenReport verify_fixed_generators(const AnnularDiagram& lift, const PeriodicSymmetry& s);

std::string smith_report_to_json(const SmithReport& r, bool pretty = false);
std::string fixed_gen_report_to_json(const FixedGenReport& r, bool pretty = false);

}  // namespace perkh
