#include "primus/abelian.hpp"

#include <utility>

#include "primus/error.hpp"

namespace primus {

IntMatrix int_matrix(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols, 0); }

IntMatrix int_identity(std::size_t n) {
  IntMatrix m = int_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix int_matrix(const std::vector<std::vector<long>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  IntMatrix m = int_matrix(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw ShapeMismatch("ragged integer matrix");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) { return multiply(a, b, Integer(0)); }

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeMismatch("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntMatrix submatrix(const IntMatrix& m, std::size_t r0, std::size_t r1, std::size_t c0,
                    std::size_t c1) {
  IntMatrix out = int_matrix(r1 - r0, c1 - c0);
  for (std::size_t i = r0; i < r1; ++i)
    for (std::size_t j = c0; j < c1; ++j) out(i - r0, j - c0) = m(i, j);
  return out;
}

std::string to_string(const IntMatrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += ",";
    out += "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ",";
      out += m(i, j).get_str();
    }
    out += "]";
  }
  return out + "]";
}

IntMatrix abelianize(std::span<const Word> set, int rank) {
  IntMatrix m = int_matrix(set.size(), rank);
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i].rank() != rank) throw RankMismatch("abelianize: word of wrong rank");
    for (const auto& s : set[i].syllables()) m(i, s.gen - 1) += s.exp;
  }
  return m;
}

namespace {

void swap_rows(IntMatrix& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
}

void swap_cols(IntMatrix& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
}

// row_i += q * row_j
void add_row(IntMatrix& a, std::size_t i, std::size_t j, const Integer& q) {
  for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) += q * a(j, c);
}

// col_i += q * col_j
void add_col(IntMatrix& a, std::size_t i, std::size_t j, const Integer& q) {
  for (std::size_t r = 0; r < a.rows(); ++r) a(r, i) += q * a(r, j);
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  SnfResult res{m, int_identity(rows), int_identity(cols), int_identity(cols), {}};
  IntMatrix& a = res.d;
  // Column operations on V are mirrored as inverse row operations on V⁻¹.
  auto col_swap = [&](std::size_t i, std::size_t j) {
    swap_cols(a, i, j);
    swap_cols(res.v, i, j);
    swap_rows(res.v_inverse, i, j);
  };
  auto col_add = [&](std::size_t i, std::size_t j, const Integer& q) {
    add_col(a, i, j, q);
    add_col(res.v, i, j, q);
    add_row(res.v_inverse, j, i, -q);
  };
  auto row_swap = [&](std::size_t i, std::size_t j) {
    swap_rows(a, i, j);
    swap_rows(res.u, i, j);
  };
  auto row_add = [&](std::size_t i, std::size_t j, const Integer& q) {
    add_row(a, i, j, q);
    add_row(res.u, i, j, q);
  };

  const std::size_t diag = std::min(rows, cols);
  for (std::size_t t = 0; t < diag; ++t) {
    for (;;) {
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a(i, j) != 0 && (pi == rows || abs(a(i, j)) < abs(a(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) break;  // remaining block is zero
      row_swap(t, pi);
      col_swap(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        row_add(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        col_add(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold any row whose entries the pivot does not divide.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      row_add(t, bad, 1);
    }
    if (a(t, t) < 0) {
      for (std::size_t c = 0; c < cols; ++c) a(t, c) = -a(t, c);
      for (std::size_t c = 0; c < rows; ++c) res.u(t, c) = -res.u(t, c);
    }
  }
  for (std::size_t t = 0; t < diag; ++t) res.invariant_factors.push_back(a(t, t));
  return res;
}

AbelianVerdict is_primitive_abelian(const IntMatrix& m, long n) {
  if (n < 0) throw DomainError("exponent must be nonnegative");
  if (m.rows() > m.cols())
    throw DomainError("a set of " + std::to_string(m.rows()) +
                      " elements cannot be primitive in rank " + std::to_string(m.cols()));
  const auto snf = smith_normal_form(m);
  AbelianVerdict v;
  v.minor_gcd = 1;
  for (const auto& d : snf.invariant_factors) v.minor_gcd *= d;
  // gcd(0, n) = n, so an all-zero minor set is primitive only in the trivial group.
  const bool primitive = n == 0 ? v.minor_gcd == 1 : gcd(v.minor_gcd, Integer(n)) == 1;
  v.status = primitive ? Status::Primitive : Status::NotPrimitive;
  if (primitive) v.completion = extend_to_basis(m, n);
  return v;
}

IntMatrix extend_to_basis(const IntMatrix& m, long n) {
  const std::size_t k = m.rows(), r = m.cols();
  if (k > r) throw DomainError("more rows than columns");
  const auto snf = smith_normal_form(m);
  Integer d = 1;
  for (const auto& f : snf.invariant_factors) d *= f;
  if (!(n == 0 ? d == 1 : gcd(d, Integer(n)) == 1))
    throw DomainError("extend_to_basis called on a non-primitive matrix");
  // M = U⁻¹ D V⁻¹, so [M; rows k.. of V⁻¹] = diag(U⁻¹, I)·diag(D_k, I)·V⁻¹.
  IntMatrix b = int_matrix(r, r);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < r; ++j) b(i, j) = m(i, j);
  for (std::size_t i = k; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) b(i, j) = snf.v_inverse(i, j);
  const Integer det = determinant(b);
  if (det < 0 && k < r)
    for (std::size_t j = 0; j < r; ++j) b(r - 1, j) = -b(r - 1, j);
  if (!is_unit_mod(determinant(b), Integer(n)))
    throw InvalidWitness("basis completion has non-unit determinant");
  return b;
}

IntMatrix block_completion(const IntMatrix& b, std::size_t k, std::size_t l) {
  const std::size_t r = b.rows();
  if (b.cols() != r) throw ShapeMismatch("completion must be square");
  if (k > l || l > r) throw DomainError("need k <= l <= r");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = l; j < r; ++j)
      if (b(i, j) != 0) throw DomainError("set rows are not supported in columns 1..l");
  if (k == r || l == r) return b;
  const IntMatrix tail = submatrix(b, k, r, l, r);
  const auto snf = smith_normal_form(tail);
  const IntMatrix rest = multiply(snf.u, submatrix(b, k, r, 0, r));
  // Rows r-l.. of U·C vanish on columns l..; they go directly after the set.
  IntMatrix out = b;
  std::size_t row = k;
  for (std::size_t i = r - l; i < r - k; ++i, ++row)
    for (std::size_t j = 0; j < r; ++j) out(row, j) = rest(i, j);
  for (std::size_t i = 0; i < r - l; ++i, ++row)
    for (std::size_t j = 0; j < r; ++j) out(row, j) = rest(i, j);
  return out;
}

BlockCheck block_restriction_check(const IntMatrix& b, std::size_t k, std::size_t l, long n) {
  const std::size_t r = b.rows();
  if (b.cols() != r) throw ShapeMismatch("completion must be square");
  if (k > r || l > r || l == 0) throw DomainError("block indices out of range");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = l; j < r; ++j)
      if (b(i, j) != 0) throw DomainError("set rows are not supported in columns 1..l");
  BlockCheck c;
  c.shape = true;
  for (std::size_t i = 0; i < l && c.shape; ++i)
    for (std::size_t j = l; j < r; ++j)
      if (b(i, j) != 0) {
        c.shape = false;
        break;
      }
  c.det_b = determinant(b);
  if (!c.shape) return c;
  c.det_hat = determinant(submatrix(b, 0, l, 0, l));
  c.det_q = determinant(submatrix(b, l, r, l, r));
  c.determinant_identity = c.det_hat * c.det_q == c.det_b;
  c.restricted_unit = is_unit_mod(c.det_hat, Integer(n));
  return c;
}

IntMatrix truncate_columns(const IntMatrix& m, std::size_t l) {
  return submatrix(m, 0, m.rows(), 0, l);
}

}  // namespace primus
