#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>

#include "geometry_oracle.hpp"
#include "perkh/permutohedra.hpp"

using namespace perkh;

namespace {

// prefix-sum test: does the rational point x lie on the face named by p?
bool on_face(const std::vector<long long>& S, const OrderedPartition& p,
             const geo::Point& x) {
  size_t taken = 0;
  geo::Rat acc(0), tau(0);
  for (size_t b = 0; b + 1 < p.blocks.size(); ++b) {
    for (int e : p.blocks[b]) acc += x[e - 1];
    for (size_t t = 0; t < p.blocks[b].size(); ++t) tau += geo::Rat(S[taken++]);
    if (acc != tau) return false;
  }
  return true;
}

geo::Point to_point(const std::vector<long long>& v) {
  geo::Point x;
  for (long long c : v) x.push_back(geo::Rat(c));
  return x;
}

}  // namespace

TEST_CASE("vertex enumeration") {
  CHECK(vertices({1, 2, 3}).size() == 6);
  CHECK(vertices({1}).size() == 1);
  std::vector<std::vector<long long>> v4 = vertices({1, 2, 3, 4});
  CHECK(v4.size() == 24);
  CHECK(std::count(v4.begin(), v4.end(), std::vector<long long>{1, 2, 3, 4}) == 1);
  CHECK(std::count(v4.begin(), v4.end(), std::vector<long long>{4, 3, 2, 1}) == 1);
}

TEST_CASE("face of ({1,2},{3}) in Pi_(1,2,3) is the segment (1,2,3)-(2,1,3)") {
  PermutohedronFace f = face({1, 2, 3}, OrderedPartition{{{1, 2}, {3}}});
  CHECK(f.dim == 1);
  CHECK(f.vertices == std::vector<std::vector<long long>>{{1, 2, 3}, {2, 1, 3}});
}

TEST_CASE("trivial faces") {
  PermutohedronFace whole = face({1, 2, 3}, OrderedPartition{{{1, 2, 3}}});
  CHECK(whole.dim == 2);
  CHECK(whole.vertices == vertices({1, 2, 3}));
  PermutohedronFace vertex = face({1, 2, 3}, OrderedPartition{{{2}, {3}, {1}}});
  CHECK(vertex.dim == 0);
  CHECK(vertex.vertices == std::vector<std::vector<long long>>{{3, 1, 2}});
}

TEST_CASE("reduction examples") {
  OrderedPartition p{{{1, 3, 5}, {2, 6}, {4, 7}}};
  CHECK(reduce(p, 5) == OrderedPartition{{{1, 3}, {2, 5}, {4, 6}}});
  CHECK_THROWS_AS(reduce(OrderedPartition{{{1}, {2, 3}}}, 1), std::invalid_argument);
}

TEST_CASE("face lattice law: containment iff refinement (r <= 4, spot checks r = 5)") {
  for (int r : {2, 3, 4}) {
    std::vector<long long> S;
    for (int i = 1; i <= r; ++i) S.push_back(i);
    std::vector<OrderedPartition> parts = all_ordered_partitions(r);
    std::vector<PermutohedronFace> faces;
    for (const auto& p : parts) faces.push_back(face(S, p));
    for (size_t a = 0; a < parts.size(); ++a)
      for (size_t b = 0; b < parts.size(); ++b) {
        bool contained = std::includes(faces[b].vertices.begin(), faces[b].vertices.end(),
                                       faces[a].vertices.begin(), faces[a].vertices.end());
        CHECK(contained == parts[a].refines(parts[b]));
      }
  }
  // r = 5 spot checks
  std::vector<long long> S5 = {1, 2, 3, 4, 5};
  OrderedPartition fine{{{2}, {1, 3}, {5}, {4}}};
  OrderedPartition coarse{{{1, 2, 3}, {4, 5}}};
  CHECK(fine.refines(coarse));
  PermutohedronFace ff = face(S5, fine), fc = face(S5, coarse);
  CHECK(std::includes(fc.vertices.begin(), fc.vertices.end(), ff.vertices.begin(),
                      ff.vertices.end()));
}

TEST_CASE("intersection of Pi_(1,2,3) with x1 = x3") {
  HyperplaneIntersection hi = intersect_hyperplanes({1, 2, 3}, {{1, 3}});
  CHECK(hi.reduced_S == std::vector<long long>{1, 2});
  // surviving partitions are exactly those keeping 1 and 3 co-blocked
  for (const auto& [p, q] : hi.face_map) {
    int block_of_1 = -1, block_of_3 = -1;
    for (size_t b = 0; b < p.blocks.size(); ++b)
      for (int e : p.blocks[b]) {
        if (e == 1) block_of_1 = static_cast<int>(b);
        if (e == 3) block_of_3 = static_cast<int>(b);
      }
    CHECK(block_of_1 == block_of_3);
  }
  // geometric endpoints
  std::set<geo::Point> verts = geo::intersection_vertices({1, 2, 3}, {{1, 3}});
  std::set<geo::Point> expect = {
      {geo::Rat(3, 2), geo::Rat(3), geo::Rat(3, 2)},
      {geo::Rat(5, 2), geo::Rat(1), geo::Rat(5, 2)},
  };
  CHECK(verts == expect);
  // the two endpoint faces appear in the combinatorial map with 2-block images
  int endpoint_faces = 0;
  for (const auto& [p, q] : hi.face_map)
    if (p.blocks.size() == 2 && q.blocks.size() == 2) ++endpoint_faces;
  CHECK(endpoint_faces == 2);
}

TEST_CASE("six surviving 3-block partitions of {1,2,3,4} under x2 = x3") {
  HyperplaneIntersection hi = intersect_hyperplanes({1, 2, 3, 4}, {{2, 3}});
  std::map<OrderedPartition, OrderedPartition> img(hi.face_map.begin(), hi.face_map.end());
  using OP = OrderedPartition;
  std::map<OrderedPartition, OrderedPartition> expect = {
      {OP{{{2, 3}, {1}, {4}}}, OP{{{2}, {1}, {3}}}},
      {OP{{{2, 3}, {4}, {1}}}, OP{{{2}, {3}, {1}}}},
      {OP{{{4}, {2, 3}, {1}}}, OP{{{3}, {2}, {1}}}},
      {OP{{{1}, {2, 3}, {4}}}, OP{{{1}, {2}, {3}}}},
      {OP{{{4}, {1}, {2, 3}}}, OP{{{3}, {1}, {2}}}},
      {OP{{{1}, {4}, {2, 3}}}, OP{{{1}, {3}, {2}}}},
  };
  int three_block = 0;
  for (const auto& [p, q] : img)
    if (p.blocks.size() == 3) {
      ++three_block;
      auto it = expect.find(p);
      REQUIRE(it != expect.end());
      CHECK(q == it->second);
    }
  CHECK(three_block == 6);
}

TEST_CASE("geometric oracle agreement for r <= 5") {
  struct Case {
    std::vector<long long> S;
    std::vector<std::vector<int>> groups;
  };
  std::vector<Case> cases = {
      {{1, 2, 3}, {{1, 3}}},
      {{1, 2, 3}, {{2, 3}}},
      {{1, 2, 3, 4}, {{2, 3}}},
      {{1, 2, 3, 4}, {{1, 2}, {3, 4}}},
      {{1, 2, 3, 4}, {{1, 2, 4}}},
      {{1, 2, 3, 4, 5}, {{2, 4}}},
  };
  for (const auto& tc : cases) {
    const int r = static_cast<int>(tc.S.size());
    std::set<geo::Point> verts = geo::intersection_vertices(tc.S, tc.groups);
    HyperplaneIntersection hi = intersect_hyperplanes(tc.S, tc.groups);
    // vertex count of the reduced permutohedron
    long long fact = 1;
    for (size_t t = 2; t <= hi.reduced_S.size(); ++t) fact *= static_cast<long long>(t);
    CHECK(static_cast<long long>(verts.size()) == fact);

    std::set<OrderedPartition> surviving;
    for (const auto& [p, q] : hi.face_map) surviving.insert(p);
    for (const auto& p : all_ordered_partitions(r)) {
      // geometric face: vertices of the intersection lying on face(p)
      std::set<geo::Point> on;
      for (const auto& v : verts)
        if (on_face(tc.S, p, v)) on.insert(v);
      if (!surviving.count(p)) {
        CHECK(on.empty());  // split groups never touch the intersection
        continue;
      }
      // surviving faces carry as many intersection vertices as their image
      OrderedPartition q;
      for (const auto& [pp, qq] : hi.face_map)
        if (pp == p) q = qq;
      PermutohedronFace fq = face(hi.reduced_S, q);
      CHECK(static_cast<long long>(on.size()) ==
            static_cast<long long>(fq.vertices.size()));
    }
    // refinement correspondence on surviving pairs
    std::vector<std::pair<OrderedPartition, OrderedPartition>> fm = hi.face_map;
    for (size_t a = 0; a < fm.size(); ++a)
      for (size_t b = 0; b < fm.size(); ++b)
        CHECK(fm[a].first.refines(fm[b].first) == fm[a].second.refines(fm[b].second));
  }
}

TEST_CASE("whole permutohedron via the geometric oracle (r <= 4)") {
  for (int r : {2, 3, 4}) {
    std::vector<long long> S;
    for (int i = 1; i <= r; ++i) S.push_back(i);
    std::set<geo::Point> verts = geo::intersection_vertices(S, {});
    std::set<geo::Point> expect;
    for (const auto& v : vertices(S)) expect.insert(to_point(v));
    CHECK(verts == expect);
  }
}

TEST_CASE("fixed permutohedron") {
  FixedPermutohedron seg = fixed_permutohedron(4, {{1, 2}, {3, 4}});
  CHECK(seg.s == 2);
  REQUIRE(seg.vertex_map.size() == 2);
  // matches the hyperplane-intersection route
  std::set<geo::Point> geo_verts = geo::intersection_vertices({1, 2, 3, 4}, {{1, 2}, {3, 4}});
  std::set<geo::Point> fixed_verts;
  for (const auto& [w, z] : seg.vertex_map) {
    geo::Point x;
    for (const Rational& c : z) x.push_back(geo::Rat(c.num, c.den));
    fixed_verts.insert(x);
  }
  CHECK(fixed_verts == geo_verts);

  // all singletons: the whole permutohedron's vertex set
  FixedPermutohedron whole = fixed_permutohedron(3, {{1}, {2}, {3}});
  CHECK(whole.s == 3);
  CHECK(whole.vertex_map.size() == 6);

  // a single orbit: one barycentric point
  FixedPermutohedron point = fixed_permutohedron(4, {{1, 2, 3, 4}});
  CHECK(point.s == 1);
  REQUIRE(point.vertex_map.size() == 1);
  for (const Rational& c : point.vertex_map[0].second) CHECK(c == Rational(5, 2));
}

TEST_CASE("reduction commutes with refinement (r <= 4)") {
  for (int r : {3, 4}) {
    std::vector<OrderedPartition> parts = all_ordered_partitions(r);
    for (const auto& p : parts) {
      // pick a, b co-blocked: reduce with respect to b
      for (const auto& block : p.blocks) {
        if (block.size() < 2) continue;
        int b = block[1];
        OrderedPartition rp = reduce(p, b);
        for (const auto& q : parts) {
          if (!q.refines(p)) continue;
          // refinement must keep the pair co-blocked to commute
          bool coblocked = false;
          for (const auto& qb : q.blocks)
            if (std::find(qb.begin(), qb.end(), block[0]) != qb.end() &&
                std::find(qb.begin(), qb.end(), b) != qb.end())
              coblocked = true;
          if (!coblocked) continue;
          CHECK(reduce(q, b).refines(rp));
        }
      }
    }
  }
}
