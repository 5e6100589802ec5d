#include <doctest.h>

#include <algorithm>

#include "gen.hpp"
#include "primus/abelian.hpp"
#include "primus/error.hpp"
#include "primus/stallings.hpp"

using namespace primus;

namespace {

std::vector<Word> ws(std::vector<std::string> s, int rank) { return parse_words(s, rank); }

// Completion search: w is primitive in F_2 iff some short v makes (w, v) a basis.
bool has_short_complement(const Word& w, const std::vector<Word>& candidates) {
  for (const auto& v : candidates) {
    std::vector<Word> pair{w, v};
    if (is_free_basis(pair, 2)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("subgroup graph examples") {
  const auto g1 = build_subgroup_graph(ws({"a1"}, 2), 2);
  CHECK(g1.vertex_count == 1);
  CHECK(g1.size() == 1);
  CHECK(g1.is_rose());
  const auto g2 = build_subgroup_graph(ws({"a1", "a2"}, 2), 2);
  CHECK(g2.rose_labels() == std::vector<int>{1, 2});
  const auto g3 = build_subgroup_graph(ws({"a1^2"}, 2), 2);
  CHECK(g3.vertex_count == 2);
  CHECK(g3.size() == 2);
  // a1 a2 a1^-1 folds to a based lollipop whose unbased core is one loop.
  const auto g4 = build_subgroup_graph(ws({"a1 a2 a1^-1"}, 2), 2);
  CHECK(g4.vertex_count == 2);
  CHECK(unbased_core(g4).size() == 1);
  CHECK(build_subgroup_graph(ws({"a1", "a2"}, 2), 2).to_dot().find("digraph") != std::string::npos);
}

TEST_CASE("subgroup rank examples") {
  CHECK(subgroup_rank(build_subgroup_graph(ws({"a1", "a1 a2", "a2"}, 2), 2)) == 2);
  CHECK(subgroup_rank(build_subgroup_graph(ws({"a1^2", "a1^3"}, 2), 2)) == 1);
  CHECK(subgroup_rank(build_subgroup_graph(ws({"[a1,a2]"}, 2), 2)) == 1);
  CHECK(subgroup_rank(build_subgroup_graph(ws({"a1^2", "a2^2", "a1 a2"}, 2), 2)) == 3);
}

TEST_CASE("folding is confluent") {
  Rng rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    const int rank = static_cast<int>(rng.uniform(2, 3));
    std::vector<Word> set;
    for (int i = 0; i < static_cast<int>(rng.uniform(1, 3)); ++i)
      set.push_back(testgen::random_word(rng, rank, 8));
    const auto ref = build_subgroup_graph(set, rank);
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const auto g = build_subgroup_graph(set, rank, seed + 1000 * static_cast<std::uint64_t>(trial));
      CHECK(g.canonical_code() == ref.canonical_code());
      CHECK(g.vertex_count == ref.vertex_count);
    }
  }
}

TEST_CASE("graph accepts exactly subgroup words") {
  Rng rng(72);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Word> set;
    for (int i = 0; i < 2; ++i) set.push_back(testgen::random_word(rng, 2, 6));
    const auto g = build_subgroup_graph(set, 2);
    Word product = Word::identity(2);
    for (int i = 0; i < 4; ++i) {
      const auto& s = set[static_cast<std::size_t>(rng.uniform(0, 1))];
      product = product * (rng.uniform(0, 1) ? s : s.inverse());
    }
    for (const auto& s : set) CHECK(graph_accepts(g, s));
    CHECK(graph_accepts(g, product));
    CHECK(graph_accepts(g, Word::identity(2)));
    // The spanning-tree basis generates the same subgroup.
    const auto basis = graph_basis(g);
    CHECK(static_cast<int>(basis.size()) == subgroup_rank(g));
    CHECK(build_subgroup_graph(basis, 2).canonical_code() == g.canonical_code());
  }
  CHECK_FALSE(graph_accepts(build_subgroup_graph(ws({"a1^2"}, 2), 2), parse_word("a1", 2)));
  CHECK_FALSE(graph_accepts(build_subgroup_graph(ws({"a1", "a2^2"}, 2), 2), parse_word("a2 a1", 2)));
}

TEST_CASE("whitehead moves are automorphisms") {
  for (int rank = 2; rank <= 3; ++rank) {
    const auto moves = whitehead_moves(rank);
    CHECK(!moves.empty());
    for (const auto& m : moves) CHECK(m.automorphism(rank).is_consistent());
  }
  // Rank 2: 2 multipliers, 2 signs, 4 options for the other generator, minus identity.
  CHECK(whitehead_moves(2).size() == 12);
}

TEST_CASE("whitehead minimization examples") {
  const auto rose = whitehead_minimize(build_subgroup_graph(ws({"a1"}, 2), 2));
  CHECK(rose.graph.is_rose());
  CHECK(rose.log.empty());
  const auto one = whitehead_minimize(build_subgroup_graph(ws({"a1 a2"}, 2), 2));
  CHECK(one.graph.is_rose());
  CHECK(one.log.size() == 1);
  const auto sq = whitehead_minimize(build_subgroup_graph(ws({"a1^2"}, 2), 2));
  CHECK(sq.graph.size() == 2);
  CHECK(sq.complete);
}

TEST_CASE("free decider examples") {
  CHECK(is_primitive_free(ws({"a1"}, 2), 2).status == Status::Primitive);
  CHECK(is_primitive_free(ws({"a1^2"}, 2), 2).status == Status::NotPrimitive);
  CHECK(is_primitive_free(ws({"[a1,a2]"}, 2), 2).status == Status::NotPrimitive);
  CHECK(is_primitive_free(ws({"a1 a2 a1^-1"}, 2), 2).status == Status::Primitive);
  CHECK(is_primitive_free(ws({"a1 a2^2", "a2"}, 2), 2).status == Status::Primitive);
  CHECK(is_primitive_free(ws({"a1 a2", "a2 a1"}, 2), 2).status == Status::NotPrimitive);
  CHECK(is_primitive_free(ws({"a1^2", "a2", "a3"}, 3), 3).status == Status::NotPrimitive);
  const auto v = is_primitive_free(ws({"a1 a2 a1 a3"}, 3), 3);
  REQUIRE(v.status == Status::Primitive);
  auto tuple = ws({"a1 a2 a1 a3"}, 3);
  tuple.insert(tuple.end(), v.completion.begin(), v.completion.end());
  CHECK(is_free_basis(tuple, 3));
}

TEST_CASE("free decider completions are bases") {
  Rng rng(73);
  for (int trial = 0; trial < 100; ++trial) {
    const int rank = static_cast<int>(rng.uniform(2, 4));
    const int k = static_cast<int>(rng.uniform(1, rank));
    const auto set = random_primitive_set(rank, k, static_cast<int>(rng.uniform(0, 10)), rng.next());
    const auto v = is_primitive_free(set, rank);
    CHECK(v.status == Status::Primitive);
    if (v.status != Status::Primitive) continue;
    auto tuple = set;
    tuple.insert(tuple.end(), v.completion.begin(), v.completion.end());
    CHECK(is_free_basis(tuple, rank));
    CHECK(is_primitive_abelian(abelianize(set, rank), 0).status == Status::Primitive);
  }
  CHECK(random_primitive_set(3, 2, 0, 1) == ws({"a1", "a2"}, 3));
}

TEST_CASE("free verdicts are invariant under automorphisms") {
  Rng rng(74);
  int not_primitive = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const int rank = static_cast<int>(rng.uniform(2, 3));
    std::vector<Word> set{testgen::random_word(rng, rank, 5)};
    const auto before = is_primitive_free(set, rank);
    if (before.status == Status::Unknown) continue;
    const auto phi = random_automorphism(rank, static_cast<int>(rng.uniform(1, 5)), MoveSpace::full(rank), rng);
    std::vector<Word> moved{phi.forward.apply(set[0])};
    if (moved[0].is_identity()) continue;
    const auto after = is_primitive_free(moved, rank);
    if (after.status == Status::Unknown) continue;
    CHECK(after.status == before.status);
    if (before.status == Status::NotPrimitive) ++not_primitive;
  }
  CHECK(not_primitive > 10);
}

TEST_CASE("primitive orbit examples") {
  const auto g = enumerate_primitive_orbit(2, 1, 1);
  CHECK(g.size() == 4);
  CHECK(g.count({parse_word("a1^-1", 2)}) == 1);
  const auto two = enumerate_primitive_orbit(2, 1, 2);
  CHECK(two.count({parse_word("a1 a2", 2)}) == 1);
  CHECK(two.count({parse_word("a1^2", 2)}) == 0);
  // Ordered pairs of generators or inverses on different indices.
  const auto pairs = enumerate_primitive_orbit(2, 2, 2);
  CHECK(pairs.size() == 8);
  for (const auto& t : pairs) CHECK(t[0].support() != t[1].support());
  CHECK_THROWS_AS(enumerate_primitive_orbit(4, 1, 2), BudgetExceeded);
  CHECK_THROWS_AS(enumerate_primitive_orbit(2, 1, 9), BudgetExceeded);
}

TEST_CASE("primitive orbit agrees with completion search and the decider") {
  const auto words = all_reduced_words(2, 4);
  const auto candidates = all_reduced_words(2, 4);
  const auto orbit = enumerate_primitive_orbit(2, 1, 4);
  std::size_t found = 0;
  for (const auto& w : words) {
    if (w.is_identity()) continue;
    const bool in_orbit = orbit.count({w}) == 1;
    CHECK_MESSAGE(in_orbit == has_short_complement(w, candidates), w.to_string());
    std::vector<Word> set{w};
    CHECK(is_primitive_free(set, 2).status == (in_orbit ? Status::Primitive : Status::NotPrimitive));
    found += in_orbit;
  }
  CHECK(found == orbit.size());
}

TEST_CASE("orbit enumeration is stable in the slack") {
  CHECK(enumerate_primitive_orbit(2, 1, 5, 2) == enumerate_primitive_orbit(2, 1, 5, 4));
  CHECK(enumerate_primitive_orbit(2, 2, 4, 2) == enumerate_primitive_orbit(2, 2, 4, 4));
}

TEST_CASE("free restriction") {
  Rng rng(75);
  for (int trial = 0; trial < 50; ++trial) {
    const int l = static_cast<int>(rng.uniform(2, 3));
    const int rank = l + static_cast<int>(rng.uniform(1, 2));
    const int k = static_cast<int>(rng.uniform(1, l));
    const auto low = random_primitive_set(l, k, static_cast<int>(rng.uniform(0, 8)), rng.next());
    std::vector<Word> high;
    for (const auto& w : low) high.push_back(w.with_rank(rank));
    CHECK(is_primitive_free(low, l).status == Status::Primitive);
    CHECK(is_primitive_free(high, rank).status == Status::Primitive);
  }
}
