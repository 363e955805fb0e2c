#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "perkh/diagram.hpp"
#include "perkh/equivariant.hpp"
#include "perkh/homology.hpp"
#include "perkh/moduli.hpp"
#include "perkh/periodicity.hpp"
#include "perkh/permutohedra.hpp"
#include "perkh/resolution.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int emit(const std::string& command, const std::string& digest, const json& result,
         const std::string& verdict, std::chrono::steady_clock::time_point start, bool pretty) {
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  json report = {{"command", command},
                 {"input_digest", digest},
                 {"result", result},
                 {"verdict", verdict},
                 {"wall_time_ms", ms}};
  std::cout << (pretty ? report.dump(2) : report.dump()) << "\n";
  if (verdict == "pass" || verdict == "n/a") return 0;
  if (verdict == "inconclusive") return 2;
  return 1;
}

json poincare_json(const perkh::PoincarePolynomial& p) {
  return json::parse(perkh::poincare_to_json(p));
}

perkh::PeriodicSymmetry require_symmetry(const perkh::AnnularDiagram& d) {
  if (!d.symmetry) throw std::invalid_argument("diagram carries no symmetry data");
  return *d.symmetry;
}

json eigen_json(const perkh::EigenDecomposition& e) {
  json out;
  out["p"] = e.p;
  out["n"] = e.n;
  out["r"] = e.r;
  out["total_dim"] = e.total_dim();
  out["levels"] = json::array();
  for (size_t s = 0; s < e.dims.size(); ++s) {
    json level;
    level["s"] = s;
    level["dims"] = json::array();
    for (const auto& [iq, dim] : e.dims[s])
      level["dims"].push_back({{"i", iq.first}, {"q", iq.second}, {"dim", dim}});
    level["delta_p"] = json::array();
    for (const auto& [iq, dim] : e.delta_p[s])
      level["delta_p"].push_back({{"i", iq.first}, {"q", iq.second}, {"dim", dim}});
    out["levels"].push_back(level);
  }
  return out;
}

json borel_json(const perkh::BorelTable& t) {
  json out;
  out["p"] = t.p;
  out["max_degree"] = t.max_degree;
  out["width"] = t.width_max - t.width_min;
  out["stable"] = t.stable;
  out["stable_total"] = t.stable_total;
  out["dims"] = json::array();
  for (const auto& [qt, dim] : t.dims)
    out["dims"].push_back({{"q", qt.first}, {"degree", qt.second}, {"dim", dim}});
  out["stable_rank"] = json::array();
  for (const auto& [q, rank] : t.stable_rank)
    out["stable_rank"].push_back({{"q", q}, {"rank", rank}});
  return out;
}

// Every decorated configuration of the diagram with index <= index_bound,
// checked for chain count == theta; stops after `budget` configurations.
std::pair<bool, long long> counting_sweep(const perkh::AnnularDiagram& d, int index_bound,
                                          long long budget) {
  long long checked = 0;
  const int n = d.n();
  for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
    std::vector<int> v = perkh::vector_of(mask, n);
    perkh::ResolutionConfig cfg = perkh::resolve(d, v);
    std::vector<int> zeros;
    for (int c = 0; c < n; ++c)
      if (v[c] == 0) zeros.push_back(c);
    for (uint64_t sub = 0; sub < (uint64_t{1} << zeros.size()); ++sub) {
      std::vector<int> arcs;
      for (size_t t = 0; t < zeros.size(); ++t)
        if (sub & (uint64_t{1} << t)) arcs.push_back(zeros[t]);
      if (static_cast<int>(arcs.size()) > index_bound || arcs.empty()) continue;
      perkh::DecoratedConfig dc;
      dc.d = d;
      dc.v_start = v;
      dc.arcs = arcs;
      std::vector<int> vend = dc.v_end();
      perkh::ResolutionConfig top = perkh::resolve(d, vend);
      const auto& bot_circles = cfg.circles;
      const auto& top_circles = top.circles;
      for (uint64_t ym = 0; ym < (uint64_t{1} << bot_circles.size()); ++ym) {
        for (uint64_t xm = 0; xm < (uint64_t{1} << top_circles.size()); ++xm) {
          dc.y.clear();
          dc.x.clear();
          for (size_t t = 0; t < bot_circles.size(); ++t)
            dc.y[bot_circles[t].id] = (ym >> t) & 1 ? -1 : 1;
          for (size_t t = 0; t < top_circles.size(); ++t)
            dc.x[top_circles[t].id] = (xm >> t) & 1 ? -1 : 1;
          std::vector<int> order(arcs.size());
          for (size_t t = 0; t < order.size(); ++t) order[t] = static_cast<int>(t);
          long long chains = perkh::count_pi0_chains(dc, order);
          long long th = perkh::theta(dc);
          if (chains != th) return {false, checked};
          bool power_of_two = th == 0 || th == 1 || th == 2 || th == 4;
          if (!power_of_two) return {false, checked};
          if (++checked >= budget) return {true, checked};
        }
      }
    }
  }
  return {true, checked};
}

bool permutohedra_sweep() {
  using perkh::OrderedPartition;
  // Goldens: a segment face, a reduction, and a hyperplane survivor count.
  perkh::PermutohedronFace f =
      perkh::face({1, 2, 3}, OrderedPartition{{{1, 2}, {3}}});
  if (f.vertices != std::vector<std::vector<long long>>{{1, 2, 3}, {2, 1, 3}}) return false;
  OrderedPartition red = perkh::reduce(OrderedPartition{{{1, 3, 5}, {2, 6}, {4, 7}}}, 5);
  if (!(red == OrderedPartition{{{1, 3}, {2, 5}, {4, 6}}})) return false;
  perkh::HyperplaneIntersection hi = perkh::intersect_hyperplanes({1, 2, 3, 4}, {{2, 3}});
  int two_block = 0;
  for (const auto& [p, q] : hi.face_map)
    if (p.blocks.size() == 2) ++two_block;
  if (two_block != 6) return false;
  // Face lattice law for r = 4.
  for (const auto& p : perkh::all_ordered_partitions(4)) {
    perkh::PermutohedronFace fp = perkh::face({1, 2, 3, 4}, p);
    for (const auto& q : perkh::all_ordered_partitions(4)) {
      perkh::PermutohedronFace fq = perkh::face({1, 2, 3, 4}, q);
      bool contained = std::includes(fp.vertices.begin(), fp.vertices.end(), fq.vertices.begin(),
                                     fq.vertices.end());
      if (contained != q.refines(p)) return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Khovanov homology engine for periodic annular links"};
  app.require_subcommand(1);
  bool pretty = false;
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  app.add_flag("--pretty", pretty, "pretty-print the report");
  app.add_option("--threads", threads, "worker threads for block-level parallelism");

  std::string file;
  long long field = 2;
  auto* kh = app.add_subcommand("kh", "Khovanov homology Poincare polynomial");
  kh->add_option("file", file)->required();
  kh->add_option("--field", field, "prime p, or 0 for Q");
  auto* akh = app.add_subcommand("akh", "annular Khovanov homology Poincare polynomial");
  akh->add_option("file", file)->required();
  akh->add_option("--field", field, "prime p, or 0 for Q");

  int opt_p = 2, opt_n = 1, opt_maxdeg = -1;
  long long opt_r = 3;
  auto* ekh = app.add_subcommand("ekh", "eigenspace decomposition for p^n-periodic links");
  ekh->add_option("file", file)->required();
  ekh->add_option("--p", opt_p)->required();
  ekh->add_option("--n", opt_n);
  ekh->add_option("--r", opt_r)->required();
  auto* borel = app.add_subcommand("borel", "Borel equivariant Khovanov homology table");
  borel->add_option("file", file)->required();
  borel->add_option("--p", opt_p)->required();
  borel->add_option("--max-degree", opt_maxdeg);

  std::string which;
  auto* verify = app.add_subcommand("verify", "verification sweeps");
  verify->add_option("file", file)->required();
  verify->add_option("which", which, "smith|counting|fixed-gens|permutohedra")->required();

  std::string blocks_file;
  int per_s = 0, per_c = 1, per_w = 0, per_limit = 1;
  auto* per = app.add_subcommand("periodicity", "Khovanov-polynomial periodicity criterion");
  per->add_option("file", file, "Khovanov polynomial JSON")->required();
  per->add_option("--p", opt_p)->required();
  per->add_option("--n", opt_n);
  per->add_option("--s", per_s, "s-invariant (input, never computed)")->required();
  per->add_option("--c", per_c, "1 over F_2, 2 otherwise");
  per->add_option("--width", per_w, "homological width bound")->required();
  per->add_option("--blocks-file", blocks_file, "JSON list of Steenrod blocks");
  per->add_option("--limit", per_limit, "max decompositions to return");

  std::string sequence, partition_text;
  auto* permu = app.add_subcommand("permutohedron", "permutohedron face inspection");
  permu->add_option("--s", sequence, "comma-separated increasing sequence")->required();
  permu->add_option("--partition", partition_text, "blocks like 1,2|3");

  CLI11_PARSE(app, argc, argv);
  std::string command;
  for (int i = 1; i < argc; ++i) command += std::string(i > 1 ? " " : "") + argv[i];
  auto start = std::chrono::steady_clock::now();

  try {
    if (kh->parsed() || akh->parsed()) {
      std::string text = read_file(file);
      perkh::AnnularDiagram d = perkh::parse_diagram(text);
      perkh::Field f = field == 0 ? perkh::Field::rationals() : perkh::Field::prime(field);
      perkh::GradedComplex cx =
          kh->parsed() ? perkh::khovanov_complex(d, f) : perkh::annular_complex(d, f);
      perkh::PoincarePolynomial poly = perkh::homology(cx, threads);
      return emit(command, fnv1a(perkh::diagram_to_json(d)), poincare_json(poly), "n/a", start,
                  pretty);
    }
    if (ekh->parsed()) {
      std::string text = read_file(file);
      perkh::AnnularDiagram d = perkh::parse_diagram(text);
      perkh::PeriodicSymmetry s = require_symmetry(d);
      perkh::GradedComplex cx = perkh::khovanov_complex(d, perkh::Field::prime(opt_r));
      perkh::CorrectionCochain c = perkh::correction_cochain(
          d.n(), perkh::standard_sign_assignment(d.n()), s.crossing_perm);
      perkh::ChainAction act = perkh::chain_action(cx, s, c);
      perkh::EigenDecomposition e = perkh::eigen_decompose(cx, act, opt_p, opt_n, opt_r);
      return emit(command, fnv1a(perkh::diagram_to_json(d)), eigen_json(e), "n/a", start, pretty);
    }
    if (borel->parsed()) {
      std::string text = read_file(file);
      perkh::AnnularDiagram d = perkh::parse_diagram(text);
      perkh::PeriodicSymmetry s = require_symmetry(d);
      perkh::GradedComplex cx = perkh::khovanov_complex(d, perkh::Field::prime(opt_p));
      perkh::CorrectionCochain c = perkh::correction_cochain(
          d.n(), perkh::standard_sign_assignment(d.n()), s.crossing_perm);
      perkh::ChainAction act = perkh::chain_action(cx, s, c);
      perkh::BorelTable t = perkh::borel_ekh(cx, act, opt_p, opt_maxdeg);
      return emit(command, fnv1a(perkh::diagram_to_json(d)), borel_json(t), "n/a", start, pretty);
    }
    if (verify->parsed()) {
      if (which == "permutohedra") {
        bool ok = permutohedra_sweep();
        return emit(command, fnv1a(which), json{{"checks", "examples + face lattice r<=4"}},
                    ok ? "pass" : "fail", start, pretty);
      }
      std::string text = read_file(file);
      perkh::AnnularDiagram d = perkh::parse_diagram(text);
      if (which == "smith") {
        perkh::SmithReport rep = perkh::verify_smith(d, require_symmetry(d));
        return emit(command, fnv1a(perkh::diagram_to_json(d)),
                    json::parse(perkh::smith_report_to_json(rep)), rep.pass ? "pass" : "fail",
                    start, pretty);
      }
      if (which == "fixed-gens") {
        perkh::FixedGenReport rep = perkh::verify_fixed_generators(d, require_symmetry(d));
        return emit(command, fnv1a(perkh::diagram_to_json(d)),
                    json::parse(perkh::fixed_gen_report_to_json(rep)), rep.pass ? "pass" : "fail",
                    start, pretty);
      }
      if (which == "counting") {
        auto [ok, checked] = counting_sweep(d, 4, 200000);
        return emit(command, fnv1a(perkh::diagram_to_json(d)),
                    json{{"configurations", checked}}, ok ? "pass" : "fail", start, pretty);
      }
      throw std::invalid_argument("unknown verification: " + which);
    }
    if (per->parsed()) {
      perkh::CriterionInstance inst;
      inst.khp = perkh::parse_poly(read_file(file));
      inst.s = per_s;
      inst.p = opt_p;
      inst.n = opt_n;
      inst.c = per_c;
      inst.w = per_w;
      if (!blocks_file.empty()) inst.blocks = perkh::parse_poly_list(read_file(blocks_file));
      perkh::SearchResult res = perkh::search_decompositions(inst, per_limit);
      std::string verdict = !res.decompositions.empty() ? "pass"
                            : res.inconclusive          ? "inconclusive"
                                                        : "fail";
      return emit(command, fnv1a(perkh::poly_to_json(inst.khp)),
                  json::parse(perkh::search_result_to_json(inst, res)), verdict, start, pretty);
    }
    if (permu->parsed()) {
      std::vector<long long> S;
      std::stringstream ss(sequence);
      std::string tok;
      while (std::getline(ss, tok, ',')) S.push_back(std::stoll(tok));
      json result;
      if (partition_text.empty()) {
        result["vertices"] = perkh::vertices(S);
      } else {
        perkh::OrderedPartition p;
        std::stringstream bs(partition_text);
        std::string block;
        while (std::getline(bs, block, '|')) {
          std::vector<int> b;
          std::stringstream es(block);
          while (std::getline(es, tok, ',')) b.push_back(std::stoi(tok));
          std::sort(b.begin(), b.end());
          p.blocks.push_back(b);
        }
        perkh::PermutohedronFace f = perkh::face(S, p);
        result["dim"] = f.dim;
        result["vertices"] = f.vertices;
      }
      return emit(command, fnv1a(sequence + "|" + partition_text), result, "n/a", start, pretty);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
