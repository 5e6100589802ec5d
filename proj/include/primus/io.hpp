#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "primus/verdict.hpp"
#include "primus/word.hpp"

namespace primus {

using Json = nlohmann::json;

struct VarietySpec {
  enum class Kind { Free, Abelian, Nilpotent, AmAn, Solvable };
  Kind kind = Kind::Free;
  long n = 0;      // exponent (Abelian, Nilpotent, AmAn)
  long m = 0;      // coefficient exponent (AmAn)
  int c = 1;       // nilpotency class
  int t = 1;       // derived length

  static VarietySpec from_json(const Json& j);
  Json to_json() const;
  std::string name() const;
};

struct Budgets {
  int degree_bound = 2;
  std::size_t node_budget = 20000;
  std::uint64_t seed = 1;
};

/// key = value lines; '#' starts a comment. Known keys: degree_bound,
/// node_budget, seed. Throws ParseError on anything else.
Budgets parse_config(const std::string& text, Budgets base = {});

/// Seed from PRIMUS_SEED when set, else `fallback`.
std::uint64_t default_seed(std::uint64_t fallback = 1);

struct CheckRequest {
  int rank = 2;
  std::vector<std::string> set;
  VarietySpec variety;
  std::optional<int> l;
  Budgets budgets;

  /// Validates shape and values; budgets present in the JSON override `base`.
  static CheckRequest from_json(const Json& j, Budgets base = {});
};

/// Outcome of one decider call, before JSON rendering.
struct Decision {
  Status status = Status::Unknown;
  std::string method;
  Json witness = Json::object();
  std::string exhausted;  // budget name when Unknown
  std::size_t nodes = 0;
};

/// Runs the decider for `variety` on words of rank `rank`. Primitive
/// decisions carry a witness that has been re-verified here.
/// Throws UnsupportedConfiguration for excluded configurations.
Decision decide(const VarietySpec& variety, const std::vector<Word>& set, int rank,
                const Budgets& budgets);

/// Full verdict object for a request, including the restricted verdict when
/// `l` is present.
Json run_check(const CheckRequest& request);

/// Process exit code for a verdict: 0 Primitive, 1 NotPrimitive, 2 Unknown.
int exit_code(const Json& verdict);

/// Structural validation of a verdict object; returns the list of problems.
std::vector<std::string> validate_verdict(const Json& verdict);

}  // namespace primus
