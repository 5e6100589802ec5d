#include <doctest.h>

#include <numeric>

#include "gen.hpp"
#include "oracles.hpp"
#include "primus/abelian.hpp"
#include "primus/error.hpp"

using namespace primus;
using oracle::brute_completion_exists;
using oracle::mod;

namespace {

IntMatrix m(std::vector<std::vector<long>> rows) { return int_matrix(rows); }

}  // namespace

TEST_CASE("abelianize") {
  CHECK(abelianize(parse_words(std::vector<std::string>{"a1 a2^-1"}, 2), 2) == m({{1, -1}}));
  CHECK(abelianize(parse_words(std::vector<std::string>{"[a1,a2]"}, 2), 2) == m({{0, 0}}));
  CHECK(abelianize(parse_words(std::vector<std::string>{"a1 a2 a1"}, 2), 2) == m({{2, 1}}));
}

TEST_CASE("smith normal form examples") {
  CHECK(smith_normal_form(m({{1, 0}, {0, 1}})).d == m({{1, 0}, {0, 1}}));
  CHECK(smith_normal_form(m({{2, 0}, {0, 3}})).d == m({{1, 0}, {0, 6}}));
  CHECK(smith_normal_form(m({{2, 4}})).d == m({{2, 0}}));
  const auto z = smith_normal_form(m({{0, 0}, {0, 0}}));
  CHECK(z.invariant_factors == std::vector<Integer>{0, 0});
}

TEST_CASE("smith normal form round trip") {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const auto rows = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto cols = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto a = testgen::random_matrix(rng, rows, cols, -6, 6);
    const auto s = smith_normal_form(a);
    CHECK(multiply(multiply(s.u, a), s.v) == s.d);
    CHECK(abs(determinant(s.u)) == 1);
    CHECK(abs(determinant(s.v)) == 1);
    CHECK(multiply(s.v, s.v_inverse) == int_identity(cols));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (i != j) CHECK(s.d(i, j) == 0);
    for (std::size_t i = 0; i + 1 < s.invariant_factors.size(); ++i) {
      CHECK(s.invariant_factors[i] >= 0);
      if (s.invariant_factors[i] == 0)
        CHECK(s.invariant_factors[i + 1] == 0);
      else
        CHECK(s.invariant_factors[i + 1] % s.invariant_factors[i] == 0);
    }
  }
}

TEST_CASE("is_primitive_abelian examples") {
  auto v = is_primitive_abelian(m({{1, 1}}), 0);
  CHECK(v.status == Status::Primitive);
  REQUIRE(v.completion);
  CHECK(determinant(*v.completion) == 1);
  CHECK(*v.completion == m({{1, 1}, {0, 1}}));

  v = is_primitive_abelian(m({{2, 0}}), 0);
  CHECK(v.status == Status::NotPrimitive);
  CHECK(v.minor_gcd == 2);

  v = is_primitive_abelian(m({{2, 0}}), 3);
  CHECK(v.status == Status::Primitive);
  REQUIRE(v.completion);
  CHECK(std::gcd(mod(determinant(*v.completion), 3), 3L) == 1);

  CHECK_THROWS_AS(is_primitive_abelian(m({{1, 0}, {0, 1}, {1, 1}}), 0), DomainError);
}

TEST_CASE("gcd conventions") {
  for (long n : {0L, 2L, 5L}) CHECK(is_primitive_abelian(m({{0, 0}}), n).status == Status::NotPrimitive);
  // The trivial group: everything extends.
  CHECK(is_primitive_abelian(m({{0, 0}}), 1).status == Status::Primitive);
  CHECK(is_primitive_abelian(m({{6, 4}}), 0).status == Status::NotPrimitive);
  CHECK(is_primitive_abelian(m({{6, 4}}), 2).status == Status::NotPrimitive);
  CHECK(is_primitive_abelian(m({{6, 4}}), 3).status == Status::Primitive);
  CHECK(is_primitive_abelian(m({{6, 4}}), 5).status == Status::Primitive);
  CHECK(is_primitive_abelian(m({{3, 5}}), 0).status == Status::Primitive);
}

TEST_CASE("extend_to_basis") {
  CHECK(extend_to_basis(m({{1, 0, 0}}), 0) == int_identity(3));
  CHECK(extend_to_basis(m({{1, 1}}), 0) == m({{1, 1}, {0, 1}}));
  const auto b = extend_to_basis(m({{2, 3}}), 0);
  CHECK(b(0, 0) == 2);
  CHECK(b(0, 1) == 3);
  CHECK(determinant(b) == 1);
  CHECK_THROWS_AS(extend_to_basis(m({{2, 4}}), 0), DomainError);
}

TEST_CASE("block restriction examples") {
  auto c = block_restriction_check(int_identity(3), 2, 2, 0);
  CHECK(c.shape);
  CHECK(c.det_hat == 1);
  c = block_restriction_check(m({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}), 1, 2, 0);
  CHECK(c.shape);
  CHECK(c.determinant_identity);
  CHECK(c.det_hat == 1);
  CHECK(c.det_q == 1);
  c = block_restriction_check(m({{1, 0, 0}, {0, 1, 1}, {0, 0, 1}}), 1, 2, 0);
  CHECK_FALSE(c.shape);
  CHECK_THROWS_AS(block_restriction_check(m({{1, 0, 1}, {0, 1, 0}, {0, 0, 1}}), 1, 2, 0),
                  DomainError);
}

TEST_CASE("completions agree with brute force mod n for rank 2") {
  for (long n : {2L, 3L})
    for (std::size_t k = 1; k <= 2; ++k) {
      std::vector<long> cells(k * 2, 0);
      for (;;) {
        IntMatrix a = int_matrix(k, 2);
        for (std::size_t c = 0; c < cells.size(); ++c) a(c / 2, c % 2) = cells[c];
        const auto v = is_primitive_abelian(a, n);
        CHECK((v.status == Status::Primitive) == brute_completion_exists(a, n));
        if (v.completion) CHECK(std::gcd(mod(determinant(*v.completion), n), n) == 1);
        std::size_t c = 0;
        while (c < cells.size() && ++cells[c] == n) cells[c++] = 0;
        if (c == cells.size()) break;
      }
    }
}

TEST_CASE("verdict is the minor gcd test over the integers") {
  Rng rng(32);
  for (int trial = 0; trial < 300; ++trial) {
    const auto k = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto r = static_cast<std::size_t>(rng.uniform(static_cast<std::int64_t>(k), 4));
    const auto a = testgen::random_matrix(rng, k, r, -3, 3);
    const auto v = is_primitive_abelian(a, 0);
    const Integer g = oracle::minor_gcd(a);
    CHECK(v.minor_gcd == g);
    CHECK((v.status == Status::Primitive) == (g == 1));
    if (v.completion) {
      CHECK(abs(determinant(*v.completion)) == 1);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < r; ++j) CHECK((*v.completion)(i, j) == a(i, j));
    }
  }
}

TEST_CASE("abelian restriction on supported completions") {
  Rng rng(33);
  int primitive_seen = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t r = static_cast<std::size_t>(rng.uniform(2, 4));
    const std::size_t l = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(r) - 1));
    const std::size_t k = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(l)));
    const long n = std::vector<long>{0, 2, 6, 7}[rng.uniform(0, 3)];
    auto a = int_matrix(k, r);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < l; ++j) a(i, j) = rng.uniform(-3, 3);
    const auto v = is_primitive_abelian(a, n);
    const auto hat = is_primitive_abelian(truncate_columns(a, l), n);
    CHECK(v.status == hat.status);
    if (v.status != Status::Primitive) continue;
    ++primitive_seen;
    const auto b = block_completion(*v.completion, k, l);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < r; ++j) CHECK(b(i, j) == a(i, j));
    const auto c = block_restriction_check(b, k, l, n);
    CHECK(c.shape);
    CHECK(c.determinant_identity);
    CHECK(c.restricted_unit);
    CHECK(is_unit_mod(c.det_b, Integer(n)));
  }
  CHECK(primitive_seen > 50);
}
