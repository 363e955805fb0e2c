#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "perkh/diagram.hpp"

#ifndef PERKH_DATA_DIR
#define PERKH_DATA_DIR "data"
#endif

namespace testutil {

inline std::string read_data(const std::string& name) {
  std::ifstream in(std::string(PERKH_DATA_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline perkh::AnnularDiagram load(const std::string& name) {
  return perkh::parse_diagram(read_data(name));
}

// Deterministic random braid words for the property suites.
inline std::vector<int> random_word(std::mt19937& rng, int strands, int length) {
  std::uniform_int_distribution<int> gen(1, strands - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<int> w(length);
  for (int& g : w) g = coin(rng) ? gen(rng) : -gen(rng);
  return w;
}

}  // namespace testutil
