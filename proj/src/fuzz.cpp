#include "primus/fuzz.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "primus/automorphism.hpp"
#include "primus/error.hpp"
#include "primus/laurent.hpp"

namespace primus {

std::vector<Word> fuzz_instance(int rank, int l, int k, int max_steps, std::uint64_t seed) {
  Rng rng(seed);
  const int steps = static_cast<int>(rng.uniform(0, max_steps));
  const auto phi = random_automorphism(l, steps, MoveSpace::full(l), rng);
  std::vector<Word> out;
  for (const auto& w : apply_to_basis_prefix(phi, k)) out.push_back(w.with_rank(rank));
  return out;
}

FuzzReport run_fuzz(const FuzzConfig& c) {
  if (c.l < 1 || c.l >= c.rank) throw DomainError("l must lie in 1..rank-1");
  if (c.k < 1 || c.k > c.l) throw DomainError("k must lie in 1..l");
  if (c.trials < 0) throw DomainError("trial count must be nonnegative");
  // Same guard as check: reject configurations the deciders do not cover.
  if (c.variety.kind == VarietySpec::Kind::AmAn &&
      (!amAn_criterion_applies(c.variety.m, c.variety.n, c.k, c.rank) ||
       !amAn_criterion_applies(c.variety.m, c.variety.n, c.k, c.l)))
    throw UnsupportedConfiguration("the minor-ideal criterion needs m > 0, or n = 0, or k != r - 1");
  if (c.variety.kind == VarietySpec::Kind::Solvable && c.variety.t >= 3)
    throw UnsupportedConfiguration("deciding primitivity for derived length >= 3 is not supported");

  std::vector<FuzzTrial> trials(c.trials);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i; (i = next++) < c.trials;) {
      FuzzTrial& t = trials[i];
      t.index = i;
      t.seed = derive_seed(c.seed, static_cast<std::uint64_t>(i));
      const auto set = fuzz_instance(c.rank, c.l, c.k, c.max_steps, t.seed);
      for (const auto& w : set) t.set.push_back(w.to_string());
      std::vector<Word> local;
      for (const auto& w : set) local.push_back(w.with_rank(c.l));
      try {
        t.full = decide(c.variety, set, c.rank, c.budgets).status;
        t.restricted = decide(c.variety, local, c.l, c.budgets).status;
      } catch (const Error& e) {
        t.full = t.restricted = Status::NotPrimitive;
        t.detail = e.what();
      }
    }
  };
  unsigned n = c.threads ? c.threads : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, std::max(1, c.trials));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  FuzzReport report;
  report.trials = c.trials;
  for (auto& t : trials) {
    if (t.full == Status::NotPrimitive || t.restricted == Status::NotPrimitive) {
      if (t.detail.empty())
        t.detail = t.restricted == Status::NotPrimitive ? "restricted verdict is NotPrimitive"
                                                        : "verdict at full rank is NotPrimitive";
      report.failures.push_back(t);
    } else if (t.full == Status::Unknown || t.restricted == Status::Unknown) {
      ++report.unknowns;
    } else {
      ++report.passes;
    }
  }
  report.all = std::move(trials);
  return report;
}

Json FuzzReport::to_json(const FuzzConfig& c) const {
  Json j;
  j["variety"] = c.variety.to_json();
  j["rank"] = c.rank;
  j["l"] = c.l;
  j["k"] = c.k;
  j["seed"] = c.seed;
  j["max_steps"] = c.max_steps;
  j["trials"] = trials;
  j["passes"] = passes;
  j["unknowns"] = unknowns;
  j["unknown_rate"] = trials ? static_cast<double>(unknowns) / trials : 0.0;
  Json fails = Json::array();
  for (const auto& t : failures)
    fails.push_back({{"trial", t.index},
                     {"trial_seed", t.seed},
                     {"set", t.set},
                     {"full", to_string(t.full)},
                     {"restricted", to_string(t.restricted)},
                     {"detail", t.detail}});
  j["failures"] = fails;
  return j;
}

}  // namespace primus
