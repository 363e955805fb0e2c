#include "doctest.h"

#include <algorithm>
#include <string>

#include "perkh/periodicity.hpp"
#include "test_util.hpp"

using namespace perkh;

namespace {

LaurentPoly2 mono(int t, int q, long long c = 1) {
  LaurentPoly2 p;
  p.add(t, q, c);
  return p;
}

LaurentPoly2 trefoil_khp() {
  LaurentPoly2 p;
  p.add(0, 1, 1);
  p.add(0, 3, 1);
  p.add(2, 5, 1);
  p.add(2, 7, 1);
  p.add(3, 7, 1);
  p.add(3, 9, 1);
  return p;
}

}  // namespace

TEST_CASE("Laurent polynomial basics") {
  LaurentPoly2 p;
  p.add(0, 1, 2);
  p.add(0, 1, -2);
  CHECK(p.is_zero());
  p.add(1, -3, 4);
  p.add(0, 0, 1);
  CHECK(p.at(1, -3) == 4);
  CHECK(p.at(5, 5) == 0);
  CHECK(p.mass() == 5);
  CHECK(p.nonnegative());
  LaurentPoly2 q = p.plus(mono(1, -3), -4);
  CHECK(q.at(1, -3) == 0);
  std::map<int, long long> sub = trefoil_khp().at_t_minus_one();
  CHECK(sub.at(1) == 1);
  CHECK(sub.at(5) == 1);
  CHECK(sub.count(7) == 0);  // t^2 q^7 and t^3 q^7 cancel at t = -1
  CHECK(sub.at(9) == -1);
}

TEST_CASE("polynomial JSON round trip") {
  LaurentPoly2 p = trefoil_khp();
  CHECK(parse_poly(poly_to_json(p)) == p);
  CHECK(parse_poly(poly_to_json(p, true)) == p);
  CHECK_THROWS(parse_poly("not json"));
  CHECK_THROWS(parse_poly("[{\"t\": 0}]"));
}

TEST_CASE("unknot: khp = q + 1/q passes for every odd period") {
  CriterionInstance inst;
  inst.khp = mono(0, 1).plus(mono(0, -1));
  inst.s = 0;
  inst.c = 1;
  inst.w = 0;
  for (int p : {3, 5, 7}) {
    inst.p = p;
    inst.n = 1;
    inst.validate();
    // dP_0 = khp, dP_1 = 0 is the forced decomposition
    std::vector<LaurentPoly2> parts = {inst.khp, LaurentPoly2{}};
    CheckResult cr = check_decomposition(inst, parts);
    CHECK(cr.ok);
    CHECK(cr.violations.empty());
    SearchResult sr = search_decompositions(inst, 4);
    CHECK(!sr.inconclusive);
    CHECK(sr.decompositions.size() >= 1);
  }
}

TEST_CASE("trefoil admits a 3-periodic decomposition") {
  CriterionInstance inst;
  inst.khp = trefoil_khp();
  inst.s = 2;
  inst.p = 3;
  inst.n = 1;
  inst.c = 1;
  inst.w = 3;
  inst.validate();
  CHECK(inst.j_max() == 1);
  SearchResult sr = search_decompositions(inst, 8);
  CHECK(!sr.inconclusive);
  REQUIRE(sr.decompositions.size() >= 1);
  for (const auto& parts : sr.decompositions) {
    REQUIRE(parts.size() == 2);
    // the anchor q^{s+1} + q^{s-1} sits in dP_0
    CHECK(parts[0].at(0, 3) >= 1);
    CHECK(parts[0].at(0, 1) >= 1);
    // the decomposition sum: khp = dP_0 + (p - 1) dP_1
    CHECK(parts[0].plus(parts[1], inst.p - 1) == inst.khp);
    // every returned decomposition re-verifies
    CheckResult cr = check_decomposition(inst, parts);
    CHECK(cr.ok);
  }
}

TEST_CASE("missing anchor monomials rule the instance out") {
  CriterionInstance inst;
  // no q^{s+1} term at all, so condition (1) cannot hold
  inst.khp = mono(0, 5).plus(mono(0, 7));
  inst.s = 0;
  inst.p = 3;
  inst.n = 1;
  inst.c = 1;
  inst.w = 1;
  SearchResult sr = search_decompositions(inst, 4);
  CHECK(!sr.inconclusive);
  CHECK(sr.decompositions.empty());

  std::vector<LaurentPoly2> parts = {inst.khp, LaurentPoly2{}};
  CheckResult cr = check_decomposition(inst, parts);
  CHECK(!cr.ok);
  bool anchored = false;
  for (const std::string& v : cr.violations)
    if (v.find("condition (1)") != std::string::npos) anchored = true;
  CHECK(anchored);
}

TEST_CASE("congruence violation is reported as condition (3)") {
  CriterionInstance inst;
  inst.khp = mono(0, -1).plus(mono(0, 1)).plus(mono(0, 5), 2).plus(mono(1, 7), 2);
  inst.s = 0;
  inst.p = 3;
  inst.n = 1;
  inst.c = 1;
  inst.w = 2;
  std::vector<LaurentPoly2> parts = {mono(0, -1).plus(mono(0, 1)),
                                     mono(0, 5).plus(mono(1, 7))};
  // conditions (1) and (2) hold by construction, so any failure is (3)
  CheckResult cr = check_decomposition(inst, parts);
  CHECK(!cr.ok);
  bool flagged = false;
  for (const std::string& v : cr.violations)
    if (v.find("condition (3) at k=0") != std::string::npos) flagged = true;
  CHECK(flagged);
}

TEST_CASE("validation rejects malformed instances") {
  CriterionInstance inst;
  inst.khp = mono(0, 1).plus(mono(0, -1));
  inst.s = 0;
  inst.p = 4;  // not an odd prime
  inst.n = 1;
  inst.c = 1;
  inst.w = 0;
  CHECK_THROWS(inst.validate());
  inst.p = 3;
  inst.n = 0;
  CHECK_THROWS(inst.validate());
  inst.n = 1;
  inst.c = 3;
  CHECK_THROWS(inst.validate());
  inst.c = 1;
  inst.khp.add(0, 1, -5);  // negative coefficient
  CHECK_THROWS(inst.validate());
}

TEST_CASE("blocks restrict the search to subset sums") {
  CriterionInstance inst;
  inst.khp = trefoil_khp();
  inst.s = 2;
  inst.p = 3;
  inst.n = 1;
  inst.c = 1;
  inst.w = 3;
  SearchResult unblocked = search_decompositions(inst, 16);
  REQUIRE(!unblocked.inconclusive);

  // one block per monomial: every subset is a subset sum, so nothing changes
  for (const auto& [tq, cnt] : inst.khp.coef)
    for (long long t = 0; t < cnt; ++t) inst.blocks.push_back(mono(tq.first, tq.second));
  SearchResult blocked = search_decompositions(inst, 16);
  REQUIRE(!blocked.inconclusive);
  for (const auto& parts : blocked.decompositions) {
    CHECK(std::find(unblocked.decompositions.begin(), unblocked.decompositions.end(),
                    parts) != unblocked.decompositions.end());
    CHECK(check_decomposition(inst, parts).ok);
  }

  // a single block equal to khp itself only allows 0 or khp as parts, so the
  // blocked search can never find more decompositions than the free one
  CriterionInstance coarse = inst;
  coarse.blocks = {inst.khp};
  SearchResult cr = search_decompositions(coarse, 16);
  CHECK(!cr.inconclusive);
  CHECK(cr.decompositions.size() <= unblocked.decompositions.size());
}

TEST_CASE("search is deterministic") {
  CriterionInstance inst;
  inst.khp = trefoil_khp();
  inst.s = 2;
  inst.p = 3;
  inst.n = 1;
  inst.c = 1;
  inst.w = 3;
  SearchResult a = search_decompositions(inst, 8);
  SearchResult b = search_decompositions(inst, 8);
  CHECK(a.nodes == b.nodes);
  CHECK(a.decompositions == b.decompositions);
  CHECK(search_result_to_json(inst, a) == search_result_to_json(inst, b));
}

TEST_CASE("tiny node cap reports inconclusive, never a verdict") {
  CriterionInstance inst;
  inst.khp = trefoil_khp();
  inst.s = 2;
  inst.p = 3;
  inst.n = 1;
  inst.c = 1;
  inst.w = 3;
  SearchResult sr = search_decompositions(inst, 8, 1);
  CHECK(sr.inconclusive);
}

TEST_CASE("frozen data file parses to the trefoil polynomial") {
  LaurentPoly2 p = parse_poly(testutil::read_data("trefoil_khp.json"));
  CHECK(p == trefoil_khp());
}
