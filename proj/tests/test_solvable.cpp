#include <doctest.h>

#include "gen.hpp"
#include "primus/error.hpp"
#include "primus/groupring.hpp"
#include "primus/solvable.hpp"
#include "primus/wreath.hpp"

using namespace primus;

namespace {

std::vector<Word> ws(std::vector<std::string> s, int rank) { return parse_words(s, rank); }

LaurentElement mono(int rank, Exponents e, long c = 1) {
  return LaurentElement::monomial(rank, 0, 0, std::move(e), c);
}

// phi fixing a_r and acting on a1..a_{r-1}.
Automorphism lower_automorphism(Rng& rng, int rank, int steps) {
  MoveSpace space;
  for (int i = 1; i < rank; ++i) space.targets.push_back(i), space.multipliers.push_back(i);
  return random_automorphism(rank, steps, space, rng);
}

}  // namespace

TEST_CASE("metabelian jacobian examples") {
  CHECK(metabelian_jacobian(ws({"a1", "a2"}, 2), 2) == laurent_identity(2, 2, 0, 0));
  CHECK(to_string(metabelian_jacobian(ws({"a1 a2", "a2"}, 2), 2)) == "1, t1\n0, 1\n");
  CHECK(to_string(metabelian_jacobian(ws({"a1^-1", "a2"}, 2), 2)) == "-t1^-1, 0\n0, 1\n");
  CHECK_THROWS(metabelian_jacobian(ws({"a1"}, 2), 2));
}

TEST_CASE("units of the integral Laurent ring") {
  CHECK(is_laurent_unit(mono(2, {0, 0})));
  CHECK(is_laurent_unit(mono(2, {3, -1}, -1)));
  CHECK_FALSE(is_laurent_unit(mono(2, {0, 0}, 2)));
  CHECK_FALSE(is_laurent_unit(mono(2, {0, 0}) + mono(2, {1, 0})));
  CHECK_FALSE(is_laurent_unit(LaurentElement(2, 0, 0)));
  Rng rng(51);
  for (int trial = 0; trial < 300; ++trial) {
    LaurentElement x(2, 0, 0);
    const int terms = static_cast<int>(rng.uniform(1, 3));
    for (int t = 0; t < terms; ++t) x.add_term({rng.uniform(-2, 2), rng.uniform(-2, 2)}, rng.uniform(-2, 2));
    if (is_laurent_unit(x)) {
      REQUIRE(x.terms().size() == 1);
      CHECK(abs(x.terms().begin()->second) == 1);
      // The inverse monomial really inverts it.
      const auto& [e, c] = *x.terms().begin();
      CHECK(x * mono(2, {-e[0], -e[1]}, c.get_si()) == mono(2, {0, 0}));
    }
  }
}

TEST_CASE("metabelian basis examples") {
  CHECK(is_basis_metabelian(ws({"a1", "a2"}, 2), 2).status == Status::Primitive);
  CHECK(is_basis_metabelian(ws({"a1 a2", "a2"}, 2), 2).status == Status::Primitive);
  const auto v = is_basis_metabelian(ws({"a1^2", "a2"}, 2), 2);
  CHECK(v.status == Status::NotPrimitive);
  CHECK(v.determinant == mono(2, {0, 0}) + mono(2, {1, 0}));
}

TEST_CASE("metabelian subset examples") {
  CHECK(is_primitive_metabelian_subset(ws({"a1"}, 2), 2).status == Status::Primitive);
  CHECK(is_primitive_metabelian_subset(ws({"a1^2"}, 2), 2).status == Status::NotPrimitive);
  CHECK(is_primitive_metabelian_subset(ws({"[a1,a2]"}, 2), 2).status == Status::NotPrimitive);
}

TEST_CASE("automorphic tuples have unit determinant, squares do not") {
  Rng rng(52);
  for (int trial = 0; trial < 60; ++trial) {
    const int rank = static_cast<int>(rng.uniform(2, 3));
    const auto phi = random_automorphism(rank, static_cast<int>(rng.uniform(0, 8)), MoveSpace::full(rank), rng);
    auto tuple = apply_to_basis_prefix(phi, rank);
    CHECK(is_basis_metabelian(tuple, rank).status == Status::Primitive);
    const auto i = static_cast<std::size_t>(rng.uniform(0, rank - 1));
    tuple[i] = power(tuple[i], 2);
    CHECK(is_basis_metabelian(tuple, rank).status == Status::NotPrimitive);
  }
}

TEST_CASE("restriction report on trivial and constructed witnesses") {
  const auto basis = ws({"a1", "a2", "a3"}, 3);
  CHECK(verify_solvable_restriction(basis, laurent_identity(3, 3, 0, 0)).passed());

  Rng rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    const int rank = static_cast<int>(rng.uniform(2, 4));
    const auto phi = lower_automorphism(rng, rank, static_cast<int>(rng.uniform(1, 8)));
    const auto tuple = apply_to_basis_prefix(phi, rank);
    const auto p = metabelian_left_inverse(phi);
    const auto rep = verify_solvable_restriction(tuple, p);
    CHECK(rep.passed());
    REQUIRE(rep.restricted_inverse);
    std::vector<Word> lower;
    for (int i = 0; i + 1 < rank; ++i) lower.push_back(tuple[i].with_rank(rank - 1));
    CHECK(multiply(*rep.restricted_inverse, metabelian_jacobian(lower, rank - 1)) ==
          laurent_identity(rank - 1, rank - 1, 0, 0));
    CHECK(is_basis_metabelian(lower, rank - 1).status == Status::Primitive);

    auto forged = p;
    forged(0, rank - 1) = forged(0, rank - 1) + mono(rank, Exponents(rank, 0));
    const auto bad = verify_solvable_restriction(tuple, forged);
    CHECK_FALSE(bad.zero_column);
    CHECK_FALSE(bad.passed());
  }
  CHECK_THROWS_AS(verify_solvable_restriction(ws({"a1 a3", "a2", "a3"}, 3), laurent_identity(3, 3, 0, 0)),
                  DomainError);
}

TEST_CASE("derived series membership") {
  const auto c = parse_word("[a1,a2]", 3);
  CHECK(in_derived_subgroup(c, 1));
  CHECK_FALSE(in_derived_subgroup(c, 2));
  CHECK_FALSE(in_derived_subgroup(parse_word("a1", 3), 1));
  const auto cc = parse_word("[[a1,a2],[a1,a3]]", 3);
  CHECK(in_derived_subgroup(cc, 2));
  CHECK(in_derived_subgroup(Word::identity(3), 3));
  // Products of second-derived elements stay there.
  CHECK(in_derived_subgroup(cc * parse_word("[[a2,a3],[a1,a2^2]]", 3), 2));
}

TEST_CASE("second derived words die in every finite metabelian model") {
  Rng rng(54);
  const WreathModel model22(2, 2, 2), model33(3, 3, 2), model24(4, 2, 2);
  int in_f2 = 0, outside = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Word w = Word::identity(2);
    if (trial % 2 == 0) {
      const auto u = commutator(testgen::random_word(rng, 2, 3), testgen::random_word(rng, 2, 3));
      const auto v = commutator(testgen::random_word(rng, 2, 3), testgen::random_word(rng, 2, 3));
      w = commutator(u, v);
    } else {
      w = commutator(testgen::random_word(rng, 2, 4), testgen::random_word(rng, 2, 4));
    }
    const bool derived = in_derived_subgroup(w, 2);
    const bool trivial = model22.evaluate(w) == model22.identity() &&
                         model33.evaluate(w) == model33.identity() &&
                         model24.evaluate(w) == model24.identity();
    if (derived) {
      ++in_f2;
      CHECK(trivial);
    } else {
      ++outside;
    }
  }
  CHECK(in_f2 > 50);
  CHECK(outside > 20);
}

TEST_CASE("group-ring restriction report for derived length 3") {
  const auto basis = ws({"a1", "a2", "a3"}, 3);
  CHECK(verify_solvable_restriction(basis, identity_matrix(3, 3), 3).passed());
  Rng rng(55);
  for (int trial = 0; trial < 5; ++trial) {
    const auto phi = lower_automorphism(rng, 3, static_cast<int>(rng.uniform(1, 3)));
    const auto tuple = apply_to_basis_prefix(phi, 3);
    const auto p = chain_rule_full_inverse(phi);
    CHECK(verify_solvable_restriction(tuple, p, 3).passed());
    auto forged = p;
    forged(0, 2) = forged(0, 2) + GroupRingElement::one(3);
    const auto bad = verify_solvable_restriction(tuple, forged, 3);
    CHECK_FALSE(bad.zero_column);
    CHECK_FALSE(bad.passed());
  }
}
