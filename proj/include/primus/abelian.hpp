#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "primus/integer.hpp"
#include "primus/matrix.hpp"
#include "primus/verdict.hpp"
#include "primus/word.hpp"

namespace primus {

using IntMatrix = Matrix<Integer>;

IntMatrix int_matrix(std::size_t rows, std::size_t cols);
IntMatrix int_identity(std::size_t n);
IntMatrix int_matrix(const std::vector<std::vector<long>>& rows);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
/// Fraction-free (Bareiss) determinant of a square matrix.
Integer determinant(const IntMatrix& m);
/// Submatrix of rows [r0, r1) and columns [c0, c1).
IntMatrix submatrix(const IntMatrix& m, std::size_t r0, std::size_t r1, std::size_t c0,
                    std::size_t c1);
std::string to_string(const IntMatrix& m);

/// Row i is the exponent-sum vector of x_i (its image in F/F').
IntMatrix abelianize(std::span<const Word> set, int rank);

/// U·M·V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... , d_i >= 0.
/// `v_inverse` is V⁻¹, tracked alongside so completions need no inversion.
struct SnfResult {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;
  IntMatrix v_inverse;
  std::vector<Integer> invariant_factors;  // min(rows, cols) diagonal entries
};

/// Pivot rule: smallest nonzero |entry| of the active block, scanned row-major.
SnfResult smith_normal_form(const IntMatrix& m);

struct AbelianVerdict {
  Status status = Status::NotPrimitive;
  /// Product of the invariant factors: the gcd of all k×k minors (0 if they all vanish).
  Integer minor_gcd;
  /// r×r completion whose first k rows are M (present when Primitive).
  std::optional<IntMatrix> completion;
};

/// Decides whether the rows of M extend to a basis of Z^r (n = 0) or Z_n^r
/// (n > 0). Throws DomainError when k > r or n < 0.
AbelianVerdict is_primitive_abelian(const IntMatrix& m, long n);

/// r×r matrix with first k rows equal to M and determinant ±1 (n = 0, sign
/// normalised to +1 when k < r) or a unit mod n. Throws DomainError when M is
/// not primitive.
IntMatrix extend_to_basis(const IntMatrix& m, long n);

/// Rewrites a completion B (rows = basis vectors, first k rows supported in
/// columns 1..l) by unimodular operations on rows k+1..r so that rows 1..l are
/// all supported in columns 1..l; the first k rows are untouched.
IntMatrix block_completion(const IntMatrix& b, std::size_t k, std::size_t l);

/// The block-triangular restriction argument, with B in row convention (its
/// transpose carries the displayed [[M̂, P], [0, Q]] shape).
struct BlockCheck {
  bool shape = false;           // rows 1..l vanish in columns l+1..r
  bool determinant_identity = false;  // det(M̂)·det(Q) == det(B)
  bool restricted_unit = false;  // det(M̂) is ±1 (n = 0) or a unit mod n
  Integer det_hat, det_q, det_b;
};
/// Throws DomainError if the first k rows are not supported in columns 1..l.
BlockCheck block_restriction_check(const IntMatrix& b, std::size_t k, std::size_t l, long n);

/// First l columns of M.
IntMatrix truncate_columns(const IntMatrix& m, std::size_t l);

}  // namespace primus
