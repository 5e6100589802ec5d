// primus: primitivity checks in relatively free groups.
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "primus/abelian.hpp"
#include "primus/error.hpp"
#include "primus/fuzz.hpp"
#include "primus/groupring.hpp"
#include "primus/io.hpp"
#include "primus/laurent.hpp"
#include "primus/stallings.hpp"
#include "primus/wreath.hpp"

using namespace primus;

namespace {

enum Exit { kPrimitive = 0, kNotPrimitive = 1, kUnknown = 2, kUnsupported = 3, kInputError = 4 };

std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DomainError(what + " is not valid JSON: " + e.what());
  }
}

struct BudgetFlags {
  std::string config;
  std::optional<int> degree_bound;
  std::optional<std::size_t> node_budget;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "key=value file with degree_bound, node_budget, seed");
    app->add_option("--degree-bound", degree_bound, "Laurent certificate search radius");
    app->add_option("--node-budget", node_budget, "Whitehead level-set node limit");
    app->add_option("--seed", seed, "random seed (default: PRIMUS_SEED or 1)");
  }
  Budgets resolve() const {
    Budgets b;
    b.seed = default_seed(b.seed);
    if (!config.empty()) b = parse_config(slurp(config), b);
    if (degree_bound) b.degree_bound = *degree_bound;
    if (node_budget) b.node_budget = *node_budget;
    if (seed) b.seed = *seed;
    return b;
  }
};

int cmd_check(const std::string& input, const BudgetFlags& flags, const std::string& dot) {
  const auto request = CheckRequest::from_json(parse_json(slurp(input), "request"), flags.resolve());
  if (!dot.empty()) {
    const auto words = parse_words(request.set, request.rank);
    std::ofstream out(dot);
    out << build_subgroup_graph(words, request.rank).to_dot();
  }
  const auto verdict = run_check(request);
  const auto problems = validate_verdict(verdict);
  if (!problems.empty()) throw InvalidWitness("emitted verdict fails validation: " + problems.front());
  std::cout << verdict.dump(2) << "\n";
  return exit_code(verdict);
}

int cmd_fuzz(FuzzConfig config, const std::string& variety, const BudgetFlags& flags) {
  config.variety = VarietySpec::from_json(parse_json(variety, "variety"));
  config.budgets = flags.resolve();
  config.seed = config.budgets.seed;
  const auto report = run_fuzz(config);
  std::cout << report.to_json(config).dump(2) << "\n";
  for (const auto& t : report.failures) {
    std::cerr << "RESTRICTION FAILURE trial " << t.index << " seed " << t.seed << " variety "
              << config.variety.name() << " r=" << config.rank << " l=" << config.l << " set {";
    for (std::size_t i = 0; i < t.set.size(); ++i) std::cerr << (i ? ", " : "") << t.set[i];
    std::cerr << "}: " << t.detail << "\n";
  }
  return report.failures.empty() ? 0 : 1;
}

int cmd_oracle_free(int rank, int k, int cap) {
  const auto orbit = enumerate_primitive_orbit(rank, k, cap);
  Json table = Json::array();
  for (const auto& t : orbit) {
    Json set = Json::array();
    for (const auto& w : t) set.push_back(w.to_string());
    table.push_back({{"set", set}, {"primitive", true}});
  }
  std::cout << Json{{"variety", {{"type", "Free"}}}, {"rank", rank}, {"k", k}, {"cap", cap},
                    {"table", table}}
                   .dump(2)
            << "\n";
  return 0;
}

int cmd_oracle_amAn(int m, int n, int rank, std::vector<std::string> sets, int max_length) {
  const WreathModel model(m, n, rank);
  std::vector<std::vector<Word>> corpus;
  for (const auto& s : sets) {
    std::vector<Word> set;
    std::istringstream in(s);
    for (std::string part; std::getline(in, part, ';');) set.push_back(parse_word(part, rank));
    corpus.push_back(set);
  }
  if (max_length > 0)
    for (const auto& w : all_reduced_words(rank, max_length))
      if (!w.is_identity()) corpus.push_back({w});
  Json table = Json::array();
  std::size_t order = 0;
  for (const auto& set : corpus) {
    const auto v = wreath_primitivity(model, set);
    order = v.group_order;
    Json s = Json::array();
    for (const auto& w : set) s.push_back(w.to_string());
    table.push_back({{"set", s}, {"primitive", v.primitive}});
  }
  std::cout << Json{{"variety", {{"type", "AmAn"}, {"m", m}, {"n", n}}},
                    {"rank", rank},
                    {"group_order", order},
                    {"table", table}}
                   .dump(2)
            << "\n";
  return 0;
}

int cmd_derive(int rank, const std::vector<std::string>& texts, std::optional<long> m,
               std::optional<long> n) {
  const auto words = parse_words(texts, rank);
  std::cout << to_string(jacobian(words, rank));
  if (m || n) {
    const long mm = m.value_or(0), nn = n.value_or(0);
    std::cout << "projection m=" << mm << " n=" << nn << "\n"
              << to_string(induced_jacobian(words, rank, mm, nn));
  }
  return 0;
}

int cmd_snf(const std::string& text, std::optional<long> n) {
  const Json j = parse_json(text, "matrix");
  if (!j.is_array() || j.empty()) throw DomainError("matrix must be a nonempty array of rows");
  std::vector<std::vector<long>> rows;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != j[0].size() || row.empty())
      throw DomainError("matrix rows must be nonempty arrays of equal length");
    std::vector<long> r;
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw DomainError("matrix entries must be integers");
      r.push_back(x.get<long>());
    }
    rows.push_back(r);
  }
  const IntMatrix mat = int_matrix(rows);
  const auto snf = smith_normal_form(mat);
  auto mj = [](const IntMatrix& a) { return parse_json(to_string(a), "matrix"); };
  Json out;
  out["d"] = mj(snf.d);
  out["u"] = mj(snf.u);
  out["v"] = mj(snf.v);
  Json inv = Json::array();
  for (const auto& f : snf.invariant_factors) inv.push_back(parse_json(f.get_str(), "integer"));
  out["invariant_factors"] = inv;
  if (n && mat.rows() <= mat.cols()) {
    const auto v = is_primitive_abelian(mat, *n);
    out["primitive"] = to_string(v.status);
    if (v.completion) out["completion"] = mj(*v.completion);
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"primus: primitivity of word sets in relatively free groups"};
  app.require_subcommand(1);

  BudgetFlags check_flags;
  std::string check_input = "-";
  std::string dot;
  auto* check = app.add_subcommand("check", "decide primitivity for a JSON request");
  check->add_option("request", check_input, "request file, or - for stdin");
  check->add_option("--emit-dot", dot, "write the folded subgroup graph in DOT format");
  check_flags.attach(check);

  BudgetFlags fuzz_flags;
  FuzzConfig fuzz_config;
  std::string fuzz_variety = R"({"type":"Free"})";
  auto* fuzz = app.add_subcommand("fuzz", "restriction-property fuzzing");
  fuzz->add_option("--variety", fuzz_variety, "variety JSON, e.g. {\"type\":\"Abelian\",\"n\":6}");
  fuzz->add_option("--rank", fuzz_config.rank);
  fuzz->add_option("--l", fuzz_config.l, "restriction rank");
  fuzz->add_option("--k", fuzz_config.k, "set size");
  fuzz->add_option("--trials", fuzz_config.trials);
  fuzz->add_option("--steps", fuzz_config.max_steps, "maximum Nielsen moves per instance");
  fuzz->add_option("--threads", fuzz_config.threads);
  fuzz_flags.attach(fuzz);

  auto* oracle = app.add_subcommand("oracle", "brute-force ground-truth tables");
  oracle->require_subcommand(1);
  int orank = 2, ok = 1, ocap = 2;
  auto* ofree = oracle->add_subcommand("free", "primitive tuples by orbit enumeration");
  ofree->add_option("--rank", orank);
  ofree->add_option("--k", ok);
  ofree->add_option("--cap", ocap, "maximum total length");
  long om = 2, on = 2;
  int omax = 0;
  std::vector<std::string> osets;
  auto* oam = oracle->add_subcommand("amAn", "exhaustive completion search in the wreath model");
  oam->add_option("--m", om);
  oam->add_option("--n", on);
  oam->add_option("--rank", orank);
  oam->add_option("--set", osets, "words separated by semicolons; repeatable");
  oam->add_option("--max-length", omax, "also include every single word up to this length");

  int drank = 2;
  std::vector<std::string> dwords;
  std::optional<long> dm, dn;
  auto* derive = app.add_subcommand("derive", "print the Fox Jacobian");
  derive->add_option("--rank", drank);
  derive->add_option("--m", dm, "project coefficients mod m");
  derive->add_option("--n", dn, "project exponents mod n");
  derive->add_option("words", dwords)->required();

  std::string smatrix;
  std::optional<long> sn;
  auto* snf = app.add_subcommand("snf", "Smith normal form of an integer matrix");
  snf->add_option("matrix", smatrix, "JSON rows, e.g. [[2,4],[6,8]]")->required();
  snf->add_option("--n", sn, "also decide primitivity of the rows mod n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*check) return cmd_check(check_input, check_flags, dot);
    if (*fuzz) return cmd_fuzz(fuzz_config, fuzz_variety, fuzz_flags);
    if (*ofree) return cmd_oracle_free(orank, ok, ocap);
    if (*oam) return cmd_oracle_amAn(static_cast<int>(om), static_cast<int>(on), orank, osets, omax);
    if (*derive) return cmd_derive(drank, dwords, dm, dn);
    if (*snf) return cmd_snf(smatrix, sn);
  } catch (const UnsupportedConfiguration& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kUnknown;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
