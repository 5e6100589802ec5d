#include "primus/io.hpp"

#include <cstdlib>
#include <sstream>

#include "primus/abelian.hpp"
#include "primus/error.hpp"
#include "primus/laurent.hpp"
#include "primus/nilpotent.hpp"
#include "primus/solvable.hpp"
#include "primus/stallings.hpp"

namespace primus {

namespace {

long read_nonnegative(const Json& j, const char* key, long fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) throw DomainError(std::string("variety field ") + key + " must be an integer");
  const long v = j[key].get<long>();
  if (v < 0) throw DomainError(std::string("variety field ") + key + " must be nonnegative");
  return v;
}

Json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

Json matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json words_json(const std::vector<Word>& ws) {
  Json out = Json::array();
  for (const auto& w : ws) out.push_back(w.to_string());
  return out;
}

Json laurent_json(const std::vector<LaurentElement>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x.to_string());
  return out;
}

Decision decide_abelian(const std::vector<Word>& set, int rank, long n, const char* method) {
  Decision d;
  d.method = method;
  const auto v = is_primitive_abelian(abelianize(set, rank), n);
  d.status = v.status;
  d.witness["minor_gcd"] = integer_json(v.minor_gcd);
  if (v.status == Status::Primitive) {
    const Integer det = determinant(*v.completion);
    if (!is_unit_mod(det, Integer(n))) throw InvalidWitness("completion determinant is not a unit");
    d.witness["completion_matrix"] = matrix_json(*v.completion);
    d.witness["determinant"] = integer_json(det);
  } else {
    d.witness["reason"] = "gcd of the k x k minors is not a unit" +
                          std::string(n == 0 ? "" : " mod " + std::to_string(n));
  }
  return d;
}

Decision decide_amAn(const std::vector<Word>& set, int rank, long m, long n, const Budgets& b,
                     const char* method) {
  Decision d;
  d.method = method;
  const auto v = is_primitive_AmAn(set, rank, m, n, b.degree_bound);
  d.status = v.status;
  d.witness["minors"] = laurent_json(v.ideal.minors);
  d.witness["ideal"] = to_string(v.ideal.status);
  if (v.status == Status::Primitive) {
    d.witness["cofactors"] = laurent_json(v.ideal.cofactors);
  } else if (v.status == Status::NotPrimitive) {
    if (v.abelian.status == Status::NotPrimitive)
      d.witness["reason"] = "abelian obstruction: minor gcd " + v.abelian.minor_gcd.get_str();
    else if (v.ideal.obstruction_quotient)
      d.witness["reason"] = "minors vanish together in a finite quotient of exponent " +
                            std::to_string(*v.ideal.obstruction_quotient);
    else
      d.witness["reason"] = "ideal generated by the minors is proper";
  } else {
    d.exhausted = "degree_bound";
  }
  return d;
}

}  // namespace

VarietySpec VarietySpec::from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw DomainError("variety must be an object with a string field type");
  VarietySpec v;
  const auto type = j["type"].get<std::string>();
  if (type == "Free") {
    v.kind = Kind::Free;
  } else if (type == "Abelian") {
    v.kind = Kind::Abelian;
    v.n = read_nonnegative(j, "n", 0);
  } else if (type == "Nilpotent") {
    v.kind = Kind::Nilpotent;
    v.c = static_cast<int>(read_nonnegative(j, "c", 1));
    v.n = read_nonnegative(j, "n", 0);
    if (v.c < 1) throw DomainError("nilpotency class must be at least 1");
  } else if (type == "AmAn") {
    v.kind = Kind::AmAn;
    v.m = read_nonnegative(j, "m", 0);
    v.n = read_nonnegative(j, "n", 0);
  } else if (type == "Solvable") {
    v.kind = Kind::Solvable;
    v.t = static_cast<int>(read_nonnegative(j, "t", 1));
    if (v.t < 1) throw DomainError("derived length must be at least 1");
  } else {
    throw DomainError("unknown variety type " + type);
  }
  return v;
}

Json VarietySpec::to_json() const {
  switch (kind) {
    case Kind::Free: return {{"type", "Free"}};
    case Kind::Abelian: return {{"type", "Abelian"}, {"n", n}};
    case Kind::Nilpotent: return {{"type", "Nilpotent"}, {"c", c}, {"n", n}};
    case Kind::AmAn: return {{"type", "AmAn"}, {"m", m}, {"n", n}};
    case Kind::Solvable: return {{"type", "Solvable"}, {"t", t}};
  }
  return {};
}

std::string VarietySpec::name() const {
  switch (kind) {
    case Kind::Free: return "Free";
    case Kind::Abelian: return "Abelian(n=" + std::to_string(n) + ")";
    case Kind::Nilpotent: return "Nilpotent(c=" + std::to_string(c) + ",n=" + std::to_string(n) + ")";
    case Kind::AmAn: return "AmAn(m=" + std::to_string(m) + ",n=" + std::to_string(n) + ")";
    case Kind::Solvable: return "Solvable(t=" + std::to_string(t) + ")";
  }
  return "";
}

Budgets parse_config(const std::string& text, Budgets base) {
  std::istringstream in(text);
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    const std::size_t line_start = offset;
    offset += line.size() + 1;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", line_start + first);
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    std::size_t used = 0;
    unsigned long long parsed = 0;
    try {
      parsed = std::stoull(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size() || value[0] == '-')
      throw ParseError("value for " + key + " must be a nonnegative integer", line_start + eq + 1);
    if (key == "degree_bound")
      base.degree_bound = static_cast<int>(parsed);
    else if (key == "node_budget")
      base.node_budget = parsed;
    else if (key == "seed")
      base.seed = parsed;
    else
      throw ParseError("unknown configuration key " + key, line_start + first);
  }
  return base;
}

std::uint64_t default_seed(std::uint64_t fallback) {
  if (const char* s = std::getenv("PRIMUS_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw DomainError("PRIMUS_SEED is not an unsigned integer");
    }
  }
  return fallback;
}

CheckRequest CheckRequest::from_json(const Json& j, Budgets base) {
  if (!j.is_object()) throw DomainError("request must be a JSON object");
  CheckRequest req;
  if (!j.contains("rank") || !j["rank"].is_number_integer()) throw DomainError("rank must be an integer");
  req.rank = j["rank"].get<int>();
  if (req.rank < 2) throw DomainError("rank must be at least 2");
  if (!j.contains("set") || !j["set"].is_array() || j["set"].empty())
    throw DomainError("set must be a nonempty array of word strings");
  for (const auto& w : j["set"]) {
    if (!w.is_string()) throw DomainError("set entries must be strings");
    req.set.push_back(w.get<std::string>());
  }
  if (static_cast<int>(req.set.size()) > req.rank) throw DomainError("set has more elements than the rank");
  if (!j.contains("variety")) throw DomainError("variety is required");
  req.variety = VarietySpec::from_json(j["variety"]);
  if (j.contains("l")) {
    if (!j["l"].is_number_integer()) throw DomainError("l must be an integer");
    req.l = j["l"].get<int>();
    if (*req.l < 1 || *req.l >= req.rank) throw DomainError("l must lie in 1..rank-1");
  }
  req.budgets = base;
  if (j.contains("budgets")) {
    const auto& b = j["budgets"];
    if (!b.is_object()) throw DomainError("budgets must be an object");
    if (b.contains("degree_bound")) req.budgets.degree_bound = b["degree_bound"].get<int>();
    if (b.contains("node_budget")) req.budgets.node_budget = b["node_budget"].get<std::size_t>();
    if (b.contains("seed")) req.budgets.seed = b["seed"].get<std::uint64_t>();
  }
  // Words must parse, be distinct, and respect the support bound.
  const auto words = parse_words(req.set, req.rank);
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t t = i + 1; t < words.size(); ++t)
      if (words[i] == words[t]) throw DomainError("set elements must be distinct");
  if (req.l)
    for (const auto& w : words)
      if (!w.supported_in(*req.l))
        throw DomainError(w.to_string() + " involves generators beyond a" + std::to_string(*req.l));
  return req;
}

Decision decide(const VarietySpec& variety, const std::vector<Word>& set, int rank,
                const Budgets& budgets) {
  using Kind = VarietySpec::Kind;
  switch (variety.kind) {
    case Kind::Free: {
      Decision d;
      d.method = "stallings-whitehead";
      const auto v = is_primitive_free(set, rank, budgets.node_budget);
      d.status = v.status;
      d.nodes = v.nodes;
      d.witness["subgroup_rank"] = v.subgroup_rank;
      Json log = Json::array();
      for (const auto& mv : v.log) log.push_back(mv.to_string());
      d.witness["whitehead_log"] = log;
      if (v.status == Status::Primitive) {
        std::vector<Word> full = set;
        full.insert(full.end(), v.completion.begin(), v.completion.end());
        if (!is_free_basis(full, rank)) throw InvalidWitness("free completion is not a basis");
        d.witness["completion"] = words_json(v.completion);
      } else {
        d.witness["reason"] = v.reason;
        if (v.status == Status::Unknown) d.exhausted = "node_budget";
      }
      return d;
    }
    case Kind::Abelian:
      return decide_abelian(set, rank, variety.n, "smith-normal-form");
    case Kind::Nilpotent:
      // Generation mod the nilpotent variety reduces to the abelianization.
      return decide_abelian(set, rank, variety.n, "abelian-reduction");
    case Kind::AmAn:
      if (!amAn_criterion_applies(variety.m, variety.n, set.size(), rank))
        throw UnsupportedConfiguration(
            "the minor-ideal criterion needs m > 0, or n = 0, or k != r - 1 (here m = 0, n = " +
            std::to_string(variety.n) + ", k = r - 1)");
      return decide_amAn(set, rank, variety.m, variety.n, budgets, "induced-jacobian-minors");
    case Kind::Solvable: {
      if (variety.t == 1) return decide_abelian(set, rank, 0, "smith-normal-form");
      if (variety.t >= 3)
        throw UnsupportedConfiguration("deciding primitivity for derived length " +
                                       std::to_string(variety.t) +
                                       " is not supported; only witness verification is available");
      if (static_cast<int>(set.size()) == rank) {
        Decision d;
        d.method = "metabelian-determinant";
        const auto v = is_basis_metabelian(set, rank);
        d.status = v.status;
        d.witness["determinant"] = v.determinant.to_string();
        if (v.status == Status::Primitive) {
          if (!is_laurent_unit(v.determinant)) throw InvalidWitness("determinant is not a unit");
        } else {
          d.witness["reason"] = "Jacobian determinant is not a signed monomial";
        }
        return d;
      }
      return decide_amAn(set, rank, 0, 0, budgets, "metabelian-minors");
    }
  }
  throw DomainError("unhandled variety");
}

namespace {

Json verdict_json(const Decision& d, int rank, const std::vector<Word>& set,
                  const VarietySpec& variety, const Budgets& b) {
  Json v;
  v["status"] = to_string(d.status);
  v["rank"] = rank;
  v["set"] = words_json(set);
  v["variety"] = variety.to_json();
  v["method"] = d.method;
  v["witness"] = d.witness;
  v["budget"] = {{"degree_bound", b.degree_bound},
                 {"node_budget", b.node_budget},
                 {"seed", b.seed},
                 {"nodes_used", d.nodes}};
  if (d.status == Status::Unknown) v["budget"]["exhausted"] = d.exhausted;
  return v;
}

}  // namespace

Json run_check(const CheckRequest& request) {
  const auto words = parse_words(request.set, request.rank);
  auto v = verdict_json(decide(request.variety, words, request.rank, request.budgets), request.rank,
                        words, request.variety, request.budgets);
  if (request.l) {
    std::vector<Word> restricted;
    for (const auto& w : words) restricted.push_back(w.with_rank(*request.l));
    if (static_cast<int>(restricted.size()) > *request.l) {
      Decision d;
      d.status = Status::NotPrimitive;
      d.method = "cardinality";
      d.witness["reason"] = "more elements than the restricted rank";
      v["restricted"] = verdict_json(d, *request.l, restricted, request.variety, request.budgets);
    } else {
      v["restricted"] = verdict_json(decide(request.variety, restricted, *request.l, request.budgets),
                                     *request.l, restricted, request.variety, request.budgets);
    }
  }
  return v;
}

int exit_code(const Json& verdict) {
  const auto s = verdict.at("status").get<std::string>();
  if (s == "Primitive") return 0;
  if (s == "NotPrimitive") return 1;
  return 2;
}

std::vector<std::string> validate_verdict(const Json& v) {
  std::vector<std::string> problems;
  auto need = [&](const char* key, auto pred, const char* what) {
    if (!v.contains(key) || !pred(v[key])) problems.push_back(std::string(key) + " must be " + what);
  };
  if (!v.is_object()) return {"verdict must be an object"};
  need("status", [](const Json& x) {
    return x.is_string() && (x == "Primitive" || x == "NotPrimitive" || x == "Unknown");
  }, "one of Primitive, NotPrimitive, Unknown");
  need("rank", [](const Json& x) { return x.is_number_integer() && x.get<long>() >= 1; }, "a positive integer");
  need("set", [](const Json& x) {
    if (!x.is_array() || x.empty()) return false;
    for (const auto& w : x)
      if (!w.is_string()) return false;
    return true;
  }, "a nonempty array of strings");
  need("variety", [](const Json& x) {
    try {
      VarietySpec::from_json(x);
      return true;
    } catch (const Error&) {
      return false;
    }
  }, "a valid variety");
  need("method", [](const Json& x) { return x.is_string() && !x.get<std::string>().empty(); }, "a nonempty string");
  need("witness", [](const Json& x) { return x.is_object(); }, "an object");
  need("budget", [](const Json& x) {
    return x.is_object() && x.contains("degree_bound") && x.contains("node_budget") && x.contains("seed");
  }, "an object with degree_bound, node_budget, seed");
  if (!problems.empty()) return problems;
  const auto status = v["status"].get<std::string>();
  const auto& w = v["witness"];
  if (status == "Primitive" && !(w.contains("completion") || w.contains("completion_matrix") ||
                                 w.contains("cofactors") || w.contains("determinant")))
    problems.push_back("Primitive verdict lacks a witness");
  if (status == "NotPrimitive" && !w.contains("reason")) problems.push_back("NotPrimitive verdict lacks a reason");
  if (status == "Unknown" && !(v["budget"].contains("exhausted") && v["budget"]["exhausted"].is_string()))
    problems.push_back("Unknown verdict lacks the exhausted budget");
  try {
    parse_words(v["set"].get<std::vector<std::string>>(), v["rank"].get<int>());
  } catch (const Error& e) {
    problems.push_back(std::string("set does not parse: ") + e.what());
  }
  if (v.contains("restricted"))
    for (const auto& p : validate_verdict(v["restricted"])) problems.push_back("restricted: " + p);
  return problems;
}

}  // namespace primus
