#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace perkh {

// Finitely supported Laurent polynomial in t (homological) and q (quantum).
struct LaurentPoly2 {
  std::map<std::pair<int, int>, long long> coef;  // (t exp, q exp) -> coefficient

  void add(int t, int q, long long v);
  long long at(int t, int q) const;
  bool is_zero() const { return coef.empty(); }
  bool nonnegative() const;
  long long mass() const;  // sum of coefficients

  LaurentPoly2 plus(const LaurentPoly2& o, long long scale = 1) const;
  // Substitute t = -1: map q exponent -> coefficient.
  std::map<int, long long> at_t_minus_one() const;

  bool operator==(const LaurentPoly2& o) const { return coef == o.coef; }
  bool operator<(const LaurentPoly2& o) const { return coef < o.coef; }
};

// JSON list of {"t": int, "q": int, "coef": int}.
LaurentPoly2 parse_poly(const std::string& text);
std::vector<LaurentPoly2> parse_poly_list(const std::string& text);
std::string poly_to_json(const LaurentPoly2& p, bool pretty = false);
std::string poly_to_string(const LaurentPoly2& p);

// Input to the periodicity criterion. The s-invariant is always supplied by
// the caller; nothing in this module computes it.
struct CriterionInstance {
  LaurentPoly2 khp;  // Poincare polynomial of Kh(K; F), coefficients >= 0
  int s = 0;         // s-invariant (input)
  int p = 0;         // odd prime: candidate period p^n
  int n = 1;
  int c = 1;  // 1 over F_2, 2 otherwise
  int w = 0;  // homological width bound
  std::vector<LaurentPoly2> blocks;  // optional indecomposable summands of khp

  int j_max() const { return c * w / 2; }
  void validate() const;
};

struct CheckResult {
  bool ok = false;
  std::vector<std::string> violations;
};

// Verifies the four decomposition conditions for parts = (dP_0, ..., dP_n).
CheckResult check_decomposition(const CriterionInstance& inst,
                                const std::vector<LaurentPoly2>& parts);

struct SearchResult {
  bool inconclusive = false;  // node cap exceeded before the search finished
  long long nodes = 0;
  std::vector<std::vector<LaurentPoly2>> decompositions;  // each: dP_0..dP_n
};

// Depth-first enumeration of decompositions, highest q first; stops after
// `limit` solutions or `node_cap` search nodes (the latter is reported as
// inconclusive, never as a verdict).
SearchResult search_decompositions(const CriterionInstance& inst, int limit = 1,
                                   long long node_cap = 10000000);

std::string search_result_to_json(const CriterionInstance& inst, const SearchResult& r,
                                  bool pretty = false);

}  // namespace perkh
