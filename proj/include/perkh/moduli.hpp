#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "perkh/diagram.hpp"
#include "perkh/resolution.hpp"

namespace perkh {

// A decorated resolution configuration: surger the listed arcs (0-resolved
// crossings of v_start), starting from labeling y on the circles of the
// bottom resolution and ending at labeling x on the circles of the top one.
struct DecoratedConfig {
  AnnularDiagram d;
  std::vector<int> v_start;
  std::vector<int> arcs;   // crossing indices, each 0-resolved in v_start
  std::map<int, int> y;    // circle id -> +1/-1 on resolve(d, v_start)
  std::map<int, int> x;    // circle id -> +1/-1 on resolve(d, v_end())

  std::vector<int> v_end() const;
  int index() const { return static_cast<int>(arcs.size()); }
  void validate() const;
};

struct ConfigPoset {
  struct Element {
    uint32_t surgered = 0;  // bit a set => arcs[a] already surgered
    std::map<int, int> labels;
  };
  std::vector<Element> elements;
  std::vector<std::pair<int, int>> covers;  // (lower element, upper element)
  int min_element = -1;
  int max_element = -1;

  bool empty() const { return elements.empty(); }
};

// All intermediate labeled configurations lying on a chain from (v_start, y)
// to (v_end, x) under index-1 merge/split moves.
ConfigPoset build_poset(const DecoratedConfig& dc, int index_bound = 12);

// Number of maximal chains through the fixed surgery order z (a permutation
// of arc positions 0..index-1); order-independent by the chain-counting
// property, which is asserted exhaustively when index <= 5.
long long count_pi0_chains(const DecoratedConfig& dc, const std::vector<int>& z);

// Bar-Natan evaluation of the capped-off surgery surface: bottom circles are
// capped per y (+ undotted, - dotted), top circles per the dual cocaps
// (+ dotted, - undotted); a closed component counts 1 if genus 0 with exactly
// one dot, 2 if genus 1 with no dots, and 0 otherwise.
long long theta(const DecoratedConfig& dc);

// Annular variant: equals theta when the annular gradings of y and x agree,
// and 0 otherwise.
long long annular_theta(const DecoratedConfig& dc);

}  // namespace perkh
