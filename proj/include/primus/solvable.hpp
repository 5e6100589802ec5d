#pragma once

#include <optional>
#include <span>
#include <vector>

#include "primus/groupring.hpp"
#include "primus/laurent.hpp"
#include "primus/verdict.hpp"

namespace primus {

/// r×r Jacobian [D_j(x_i)] projected to Z(F/F') = Z[Z^r]. Throws DomainError
/// unless |T| = r.
LaurentMatrix metabelian_jacobian(std::span<const Word> tuple, int rank);

/// Units of Z[Z^r] are exactly ± single monomials.
bool is_laurent_unit(const LaurentElement& x);

struct MetabelianBasisVerdict {
  Status status = Status::NotPrimitive;
  LaurentElement determinant;
};

/// A full r-tuple is a basis of F/F'' iff det of its metabelian Jacobian is a
/// unit of Z[Z^r] (left invertibility over a commutative ring; a generating
/// r-tuple of a relatively free group is a basis since such groups are Hopfian).
MetabelianBasisVerdict is_basis_metabelian(std::span<const Word> tuple, int rank);

/// Subsets of size k <= r: the abelian-by-abelian criterion with m = n = 0.
AmAnVerdict is_primitive_metabelian_subset(std::span<const Word> set, int rank,
                                           int degree_bound = 2);

/// Projected chain-rule left inverse of the Jacobian of phi(a_1..a_r).
LaurentMatrix metabelian_left_inverse(const Automorphism& phi);

/// Checks of the block argument for T = (x_1..x_r) with x_1..x_{r-1}
/// supported in a_1..a_{r-1} and a candidate left inverse P (P·J = I_r).
struct SolvableRestrictionReport {
  bool witness_valid = false;       // P·J == I_r
  bool block_shape = false;         // D_r(x_j) = 0 and no t_r in rows j < r
  bool unit_identity = false;       // p_rr·D_r(x_r) == 1
  bool zero_column = false;         // p_ir == 0 for i < r
  bool zero_divisor_consistent = false;  // p_ir ≠ 0 ⇒ p_ir·D_r(x_r) ≠ 0
  bool truncated_identity = false;  // P̂·Ĵ == I_{r-1}, and the t_r-free part of P̂ works over rank r-1
  std::optional<LaurentMatrix> restricted_inverse;  // over Z[Z^{r-1}]
  bool passed() const {
    return witness_valid && block_shape && unit_identity && zero_column &&
           zero_divisor_consistent && truncated_identity;
  }
};

/// Derived length 2. Throws DomainError if the support condition fails.
SolvableRestrictionReport verify_solvable_restriction(std::span<const Word> tuple,
                                                      const LaurentMatrix& left_inverse);

/// w ∈ F^{(s)}: s = 0 always, s = 1 abelianization, s >= 2 via Magnus: w ∈ N'
/// iff w ∈ N and every ∂_j w vanishes in Z(F/N), with N = F^{(s-1)}.
bool in_derived_subgroup(const Word& w, int s);
/// x == 0 in Z(F/F^{(s)}).
bool is_zero_mod_derived(const GroupRingElement& x, int s);

/// Witness verification for derived length t >= 2 over Z(F/F^{(t-1)}) with
/// P given by free group ring entries. Verification only: no decision.
SolvableRestrictionReport verify_solvable_restriction(std::span<const Word> tuple,
                                                      const GroupRingMatrix& left_inverse,
                                                      int derived_length);

}  // namespace primus
