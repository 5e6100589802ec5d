#include "primus/solvable.hpp"

#include "primus/error.hpp"

namespace primus {

LaurentMatrix metabelian_jacobian(std::span<const Word> tuple, int rank) {
  if (static_cast<int>(tuple.size()) != rank)
    throw DomainError("metabelian Jacobian needs exactly r = " + std::to_string(rank) +
                      " words, got " + std::to_string(tuple.size()));
  return induced_jacobian(tuple, rank, 0, 0);
}

bool is_laurent_unit(const LaurentElement& x) {
  if (x.coefficient_modulus() != 0 || x.exponent_modulus() != 0)
    throw DomainError("unit test implemented for Z[Z^r] only");
  return x.terms().size() == 1 && abs(x.terms().begin()->second) == 1;
}

MetabelianBasisVerdict is_basis_metabelian(std::span<const Word> tuple, int rank) {
  MetabelianBasisVerdict v{Status::NotPrimitive, determinant(metabelian_jacobian(tuple, rank))};
  if (is_laurent_unit(v.determinant)) v.status = Status::Primitive;
  return v;
}

AmAnVerdict is_primitive_metabelian_subset(std::span<const Word> set, int rank,
                                           int degree_bound) {
  return is_primitive_AmAn(set, rank, 0, 0, degree_bound);
}

LaurentMatrix metabelian_left_inverse(const Automorphism& phi) {
  return project_matrix(chain_rule_full_inverse(phi), 0, 0);
}

namespace {

void check_support(std::span<const Word> tuple) {
  const int r = static_cast<int>(tuple.size());
  if (r < 2) throw DomainError("restriction needs r >= 2");
  for (int i = 0; i + 1 < r; ++i)
    if (!tuple[i].supported_in(r - 1))
      throw DomainError("x" + std::to_string(i + 1) + " involves a" + std::to_string(r));
}

}  // namespace

SolvableRestrictionReport verify_solvable_restriction(std::span<const Word> tuple,
                                                      const LaurentMatrix& left_inverse) {
  check_support(tuple);
  const int r = static_cast<int>(tuple.size());
  if (left_inverse.rows() != static_cast<std::size_t>(r) ||
      left_inverse.cols() != static_cast<std::size_t>(r))
    throw ShapeMismatch("left inverse must be r x r");
  const LaurentMatrix j = metabelian_jacobian(tuple, r);
  const LaurentMatrix& p = left_inverse;
  const std::size_t last = r - 1;
  const auto one = LaurentElement::one(r, 0, 0);

  SolvableRestrictionReport rep;
  rep.witness_valid = multiply(p, j) == laurent_identity(r, r, 0, 0);
  rep.block_shape = true;
  for (std::size_t i = 0; i < last; ++i) {
    if (!j(i, last).is_zero()) rep.block_shape = false;
    for (std::size_t c = 0; c < last; ++c)
      if (!j(i, c).supported_in(r - 1)) rep.block_shape = false;
  }
  const LaurentElement& d_rr = j(last, last);
  rep.unit_identity = p(last, last) * d_rr == one;
  rep.zero_column = true;
  rep.zero_divisor_consistent = true;
  for (std::size_t i = 0; i < last; ++i) {
    if (p(i, last).is_zero()) continue;
    rep.zero_column = false;
    // Z[Z^r] has no zero divisors: a nonzero p_ir cannot annihilate D_r(x_r) ≠ 0.
    if (!d_rr.is_zero() && (p(i, last) * d_rr).is_zero()) rep.zero_divisor_consistent = false;
  }

  LaurentMatrix p_hat = laurent_zero_matrix(last, last, r, 0, 0);
  LaurentMatrix j_hat = p_hat;
  for (std::size_t a = 0; a < last; ++a)
    for (std::size_t b = 0; b < last; ++b) {
      p_hat(a, b) = p(a, b);
      j_hat(a, b) = j(a, b);
    }
  const bool hat_identity = multiply(p_hat, j_hat) == laurent_identity(last, r, 0, 0);
  bool restricted_ok = false;
  if (rep.block_shape) {
    LaurentMatrix p_low = laurent_zero_matrix(last, last, r - 1, 0, 0);
    LaurentMatrix j_low = p_low;
    for (std::size_t a = 0; a < last; ++a)
      for (std::size_t b = 0; b < last; ++b) {
        p_low(a, b) = split_by_support_laurent(p_hat(a, b), r - 1).local.with_rank(r - 1);
        j_low(a, b) = j_hat(a, b).with_rank(r - 1);
      }
    restricted_ok = multiply(p_low, j_low) == laurent_identity(last, r - 1, 0, 0);
    if (restricted_ok) rep.restricted_inverse = std::move(p_low);
  }
  rep.truncated_identity = hat_identity && restricted_ok;
  return rep;
}

bool in_derived_subgroup(const Word& w, int s) {
  if (s <= 0) return true;
  for (int g = 1; g <= w.rank(); ++g)
    if (w.exponent_sum(g) != 0) return false;
  if (s == 1) return true;
  if (!in_derived_subgroup(w, s - 1)) return false;
  for (int j = 1; j <= w.rank(); ++j)
    if (!is_zero_mod_derived(fox_derivative(j, w), s - 1)) return false;
  return true;
}

bool is_zero_mod_derived(const GroupRingElement& x, int s) {
  if (s <= 0) {
    Integer sum = 0;
    for (const auto& [w, c] : x.terms()) sum += c;
    return sum == 0;
  }
  if (s == 1) return project_to_quotient(x, 0, 0).is_zero();
  // Collect coefficients per coset of F^{(s)}.
  std::vector<std::pair<Word, Integer>> classes;
  for (const auto& [w, c] : x.terms()) {
    bool placed = false;
    for (auto& [rep, sum] : classes)
      if (in_derived_subgroup(w * rep.inverse(), s)) {
        sum += c;
        placed = true;
        break;
      }
    if (!placed) classes.emplace_back(w, c);
  }
  for (const auto& [rep, sum] : classes)
    if (sum != 0) return false;
  return true;
}

SolvableRestrictionReport verify_solvable_restriction(std::span<const Word> tuple,
                                                      const GroupRingMatrix& left_inverse,
                                                      int derived_length) {
  if (derived_length < 2) throw DomainError("derived length must be at least 2");
  check_support(tuple);
  const int r = static_cast<int>(tuple.size());
  if (left_inverse.rows() != static_cast<std::size_t>(r) ||
      left_inverse.cols() != static_cast<std::size_t>(r))
    throw ShapeMismatch("left inverse must be r x r");
  const int s = derived_length - 1;
  const GroupRingMatrix j = jacobian(tuple, r);
  const GroupRingMatrix& p = left_inverse;
  const std::size_t last = r - 1;
  const auto one = GroupRingElement::one(r);
  auto zero_mod = [s](const GroupRingElement& x) { return is_zero_mod_derived(x, s); };
  auto is_identity = [&](const GroupRingMatrix& m) {
    for (std::size_t a = 0; a < m.rows(); ++a)
      for (std::size_t b = 0; b < m.cols(); ++b)
        if (!zero_mod(a == b ? m(a, b) - one : m(a, b))) return false;
    return true;
  };

  SolvableRestrictionReport rep;
  rep.witness_valid = is_identity(multiply(p, j));
  rep.block_shape = true;
  for (std::size_t i = 0; i < last; ++i) {
    if (!j(i, last).is_zero()) rep.block_shape = false;
    for (std::size_t c = 0; c < last; ++c)
      if (!j(i, c).supported_in(r - 1)) rep.block_shape = false;
  }
  const GroupRingElement& d_rr = j(last, last);
  rep.unit_identity = zero_mod(p(last, last) * d_rr - one);
  rep.zero_column = true;
  rep.zero_divisor_consistent = true;
  for (std::size_t i = 0; i < last; ++i) {
    if (zero_mod(p(i, last))) continue;
    rep.zero_column = false;
    if (!zero_mod(d_rr) && zero_mod(p(i, last) * d_rr)) rep.zero_divisor_consistent = false;
  }
  GroupRingMatrix p_hat = zero_matrix(last, last, r), j_hat = zero_matrix(last, last, r);
  for (std::size_t a = 0; a < last; ++a)
    for (std::size_t b = 0; b < last; ++b) {
      p_hat(a, b) = p(a, b);
      j_hat(a, b) = j(a, b);
    }
  rep.truncated_identity = is_identity(multiply(p_hat, j_hat));
  return rep;
}

}  // namespace primus
