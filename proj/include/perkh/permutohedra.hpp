#pragma once

#include <map>
#include <utility>
#include <vector>

namespace perkh {

// An ordered partition of {1..r}; blocks are disjoint, non-empty, covering,
// and their order matters: it names a face of the permutohedron Pi_S.
struct OrderedPartition {
  std::vector<std::vector<int>> blocks;  // each block sorted ascending

  int ground_size() const;
  void validate(int r) const;
  bool operator==(const OrderedPartition& other) const { return blocks == other.blocks; }
  bool operator<(const OrderedPartition& other) const { return blocks < other.blocks; }

  // True if this partition refines other: every block of other is a union of
  // consecutive blocks of this.
  bool refines(const OrderedPartition& other) const;
};

struct PermutohedronFace {
  OrderedPartition partition;
  int dim = 0;
  std::vector<std::vector<long long>> vertices;
};

// All r! coordinate permutations of the strictly increasing sequence S.
std::vector<std::vector<long long>> vertices(const std::vector<long long>& S);

// The face of Pi_S named by p: the j-th block receives the next |P_j| values
// of S, in every order within the block.
PermutohedronFace face(const std::vector<long long>& S, const OrderedPartition& p);

// Removes b and shifts larger elements down by one, preserving block order.
// Throws if removing b would empty its block.
OrderedPartition reduce(const OrderedPartition& p, int b);

// All ordered partitions of {1..r}, in a deterministic order.
std::vector<OrderedPartition> all_ordered_partitions(int r);

struct HyperplaneIntersection {
  std::vector<long long> reduced_S;  // (s_1, ..., s_{r-K})
  // Surviving partitions (every equality group inside one block) and their
  // images under the subsequent reductions, largest removed element first.
  std::vector<std::pair<OrderedPartition, OrderedPartition>> face_map;
};

// Identifies Pi_S with the coordinate-equality subspace cut out by the given
// disjoint 1-based coordinate groups.
HyperplaneIntersection intersect_hyperplanes(const std::vector<long long>& S,
                                             const std::vector<std::vector<int>>& groups);

struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d);
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
};

struct FixedPermutohedron {
  int s = 0;  // number of orbits; the fixed point set is Pi_{s-1}
  // vertex w of Pi_{s-1} (as a value vector w_1..w_s) -> fixed point z_w in Q^n
  std::vector<std::pair<std::vector<int>, std::vector<Rational>>> vertex_map;
};

// Fixed point set of Pi_{n-1} (S = (1..n)) under a coordinate-permuting group
// with the given orbits: the orbit ranked j-th by w receives the average of
// the next |orbit| integer values so that prefix sums are preserved.
FixedPermutohedron fixed_permutohedron(int n, const std::vector<std::vector<int>>& orbits);

}  // namespace perkh
