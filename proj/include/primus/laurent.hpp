#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "primus/abelian.hpp"
#include "primus/groupring.hpp"
#include "primus/integer.hpp"
#include "primus/matrix.hpp"
#include "primus/verdict.hpp"

namespace primus {

/// Exponent vector of a monomial t1^e1 ... tr^er.
using Exponents = std::vector<std::int64_t>;

/// Total order on monomials: sum of |e_i| first, then lexicographic.
struct MonomialLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Element of Z_m[Z_n^r] (m = 0: integer coefficients; n = 0: integer
/// exponents). Coefficients live in [0, m) when m > 0, exponents in [0, n)
/// when n > 0, and zero coefficients are never stored.
class LaurentElement {
 public:
  LaurentElement(int rank = 1, long m = 0, long n = 0);

  static LaurentElement zero(int rank, long m, long n) { return LaurentElement(rank, m, n); }
  static LaurentElement one(int rank, long m, long n);
  static LaurentElement monomial(int rank, long m, long n, Exponents e, Integer coeff = 1);

  int rank() const { return rank_; }
  long coefficient_modulus() const { return m_; }
  long exponent_modulus() const { return n_; }
  const std::map<Exponents, Integer, MonomialLess>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(Exponents e, const Integer& c);

  LaurentElement operator-() const;
  friend LaurentElement operator+(const LaurentElement& x, const LaurentElement& y);
  friend LaurentElement operator-(const LaurentElement& x, const LaurentElement& y);
  friend LaurentElement operator*(const LaurentElement& x, const LaurentElement& y);
  bool operator==(const LaurentElement&) const = default;

  /// Multiplication by the monomial t^e.
  LaurentElement shifted(const Exponents& e) const;
  /// Image under exponents mod q and coefficients mod p (a ring homomorphism
  /// whenever q | n or n = 0, and p | m or m = 0).
  LaurentElement reduced(long p, long q) const;
  /// Sum of coefficients (all monomials sent to 1), in Z or Z_m.
  Integer augmentation() const;
  /// True iff every monomial has zero exponent in coordinates l+1..r.
  bool supported_in(int l) const;
  LaurentElement with_rank(int rank) const;

  /// e.g. "1 + t1^2", "-t1^-1", "3*t1 t2^-1".
  std::string to_string() const;

 private:
  void check_compatible(const LaurentElement& other) const;
  void normalize(Exponents& e) const;

  int rank_;
  long m_, n_;
  std::map<Exponents, Integer, MonomialLess> terms_;
};

using LaurentMatrix = Matrix<LaurentElement>;

LaurentMatrix laurent_zero_matrix(std::size_t rows, std::size_t cols, int rank, long m, long n);
LaurentMatrix laurent_identity(std::size_t size, int rank, long m, long n);
LaurentMatrix multiply(const LaurentMatrix& a, const LaurentMatrix& b);
std::string to_string(const LaurentMatrix& m);

/// Linear extension of F_r -> F/F'F^n followed by Z -> Z_m.
LaurentElement project_to_quotient(const GroupRingElement& x, long m, long n);
LaurentElement project_word(const Word& w, long m, long n);
LaurentMatrix project_matrix(const GroupRingMatrix& a, long m, long n);

/// k×r matrix of induced derivatives ∂⁰_j(x_i).
LaurentMatrix induced_jacobian(std::span<const Word> set, int rank, long m, long n);

/// All C(r,k) maximal minors of a k×r matrix, column subsets in lexicographic order.
std::vector<LaurentElement> kth_minors(const LaurentMatrix& j);
LaurentElement determinant(const LaurentMatrix& a);

enum class IdealStatus { Found, NotIdeal, Unknown };
std::string to_string(IdealStatus s);

/// Certificate for 1 ∈ (m_1, ..., m_t).
struct IdealCertificate {
  IdealStatus status = IdealStatus::Unknown;
  std::vector<LaurentElement> minors;
  std::vector<LaurentElement> cofactors;  // Σ minors[i]·cofactors[i] = 1 when Found
  /// NotIdeal: exponent modulus q of the finite quotient Z_m[Z_q^r] in which
  /// the image ideal is proper (q = 1 is the augmentation).
  std::optional<long> obstruction_quotient;
  int degree_bound = 0;
};

/// Decides 1 ∈ ideal(minors). Exact when n > 0 (finite rank Z_m-module of
/// dimension n^r, guarded at n^r <= 10^6). For n = 0 this is a semidecision:
/// cofactors with exponents in [-degree_bound, degree_bound]^r are searched,
/// and NotIdeal is reported only when a finite quotient Z_m[Z_q^r],
/// q <= obstruction_limit, already excludes 1. Every Found certificate is
/// re-verified by ring arithmetic before return.
IdealCertificate ideal_contains_one(std::span<const LaurentElement> minors, int degree_bound,
                                    long obstruction_limit = 3);

/// Outcome of the abelian-by-abelian criterion.
struct AmAnVerdict {
  Status status = Status::Unknown;
  IdealCertificate ideal;
  AbelianVerdict abelian;
};

/// Primitivity mod V_{m,n}: 1 ∈ ideal of k-th minors of the induced Jacobian
/// and primitivity mod F'F^n. Throws UnsupportedConfiguration when m = 0,
/// n > 0 and k = r-1 hold simultaneously.
AmAnVerdict is_primitive_AmAn(std::span<const Word> set, int rank, long m, long n,
                              int degree_bound = 2);

/// True iff the criterion is available (not m = 0 ∧ n > 0 ∧ k = r-1).
bool amAn_criterion_applies(long m, long n, std::size_t k, int rank);

struct LaurentSplit {
  LaurentElement local;      // monomials with zero exponents beyond l
  LaurentElement involving;  // monomials with some nonzero exponent beyond l
};
LaurentSplit split_by_support_laurent(const LaurentElement& x, int l);

/// Restriction of an ideal certificate: with p_i = q_i + r_i, checks that
/// 1 - Σ m_i q_i and Σ m_i r_i both vanish and that the q_i, read over rank l,
/// certify 1 ∈ ideal there. Throws InvalidWitness when Σ m_i p_i ≠ 1 and
/// DomainError when a minor is not supported in the first l coordinates.
struct RestrictionIdentity {
  bool local_residual_zero = false;     // 1 - Σ m_i q_i == 0
  bool involving_sum_zero = false;      // Σ m_i r_i == 0
  bool restricted_certificate = false;  // Σ m̂_i q̂_i == 1 over rank l
  std::vector<LaurentElement> restricted_cofactors;
  bool ok() const { return local_residual_zero && involving_sum_zero && restricted_certificate; }
};
RestrictionIdentity verify_restriction_identity(std::span<const LaurentElement> minors,
                                                std::span<const LaurentElement> cofactors,
                                                int l);

}  // namespace primus
