#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>

#include "primus/automorphism.hpp"
#include "primus/integer.hpp"
#include "primus/matrix.hpp"
#include "primus/word.hpp"

namespace primus {

/// Element of the integral group ring Z F_r: a finite Z-combination of
/// reduced words, terms kept in the canonical word order with no zero
/// coefficients, so equality is structural.
class GroupRingElement {
 public:
  explicit GroupRingElement(int rank = 1) : rank_(rank) {}
  GroupRingElement(const Word& w, Integer coeff = 1);

  static GroupRingElement zero(int rank) { return GroupRingElement(rank); }
  static GroupRingElement one(int rank) { return GroupRingElement(Word::identity(rank)); }

  int rank() const { return rank_; }
  const std::map<Word, Integer>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Integer coefficient(const Word& w) const;

  void add_term(const Word& w, const Integer& c);

  GroupRingElement operator-() const;
  friend GroupRingElement operator+(const GroupRingElement& x, const GroupRingElement& y);
  friend GroupRingElement operator-(const GroupRingElement& x, const GroupRingElement& y);
  friend GroupRingElement operator*(const GroupRingElement& x, const GroupRingElement& y);
  bool operator==(const GroupRingElement&) const = default;

  /// Linear extension of a group endomorphism (a ring homomorphism).
  GroupRingElement apply(const Endomorphism& phi) const;
  /// Reinterprets every term in F_rank (throws if a term leaves F_rank).
  GroupRingElement with_rank(int rank) const;
  bool supported_in(int l) const;

  /// e.g. "1 - a1^2", "-a1^-1", "3*a1 a2".
  std::string to_string() const;

 private:
  void check_rank(const GroupRingElement& other) const;

  int rank_;
  std::map<Word, Integer> terms_;
};

using GroupRingMatrix = Matrix<GroupRingElement>;

GroupRingMatrix zero_matrix(std::size_t rows, std::size_t cols, int rank);
GroupRingMatrix identity_matrix(std::size_t n, int rank);
GroupRingMatrix multiply(const GroupRingMatrix& a, const GroupRingMatrix& b);

/// Left Fox derivative ∂_j with ∂_j(a_j)=1, ∂_j(a_i)=0, ∂_j(uv)=∂_j(u)+u∂_j(v).
GroupRingElement fox_derivative(int j, const Word& u);
GroupRingElement fox_derivative(int j, const GroupRingElement& x);

/// k×r matrix [∂_j(x_i)].
GroupRingMatrix jacobian(std::span<const Word> set, int rank);

/// True iff J·P is exactly I_k; throws ShapeMismatch when shapes do not compose
/// or P is not r×k.
bool verify_right_inverse(const GroupRingMatrix& j, const GroupRingMatrix& p);

/// Unique decomposition x = involving + local, where every word of `involving`
/// uses some a_m with m > l and every word of `local` lies in F_l.
struct SupportSplit {
  GroupRingElement involving;
  GroupRingElement local;
};
SupportSplit split_by_support(const GroupRingElement& x, int l);

/// Entrywise split of a matrix; returns (Q, R) with P = Q + R.
std::pair<GroupRingMatrix, GroupRingMatrix> split_matrix_by_support(const GroupRingMatrix& p,
                                                                    int l);

/// Deletes columns l+1..r and reinterprets entries over Z F_l. Throws
/// DomainError if a deleted column is nonzero or an entry leaves F_l.
GroupRingMatrix restrict_jacobian(const GroupRingMatrix& j, int l);
/// Deletes rows l+1..r and reinterprets entries over Z F_l.
GroupRingMatrix restrict_rows(const GroupRingMatrix& r, int l);

/// Right-inverse witness for S = {phi(a_1),...,phi(a_k)} built from the Fox
/// chain rule: with psi = phi⁻¹, P_{l,j} = phi(∂_j psi(a_l)) restricted to the
/// first k columns. Throws InvalidWitness if J·P ≠ I_k.
struct JacobianWitness {
  GroupRingMatrix jacobian;
  GroupRingMatrix right_inverse;
};
JacobianWitness chain_rule_inverse_witness(const Automorphism& phi, int k);

/// Full r×r two-sided inverse of the Jacobian of phi(a_1..a_r).
GroupRingMatrix chain_rule_full_inverse(const Automorphism& phi);

/// Matrix printer: one row per line, entries separated by ", ".
std::string to_string(const GroupRingMatrix& m);

}  // namespace primus
