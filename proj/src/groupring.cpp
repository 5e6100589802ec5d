#include "primus/groupring.hpp"

#include "primus/error.hpp"

namespace primus {

GroupRingElement::GroupRingElement(const Word& w, Integer coeff) : rank_(w.rank()) {
  add_term(w, coeff);
}

Integer GroupRingElement::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Integer(0) : it->second;
}

void GroupRingElement::add_term(const Word& w, const Integer& c) {
  if (w.rank() != rank_) throw RankMismatch("group ring term of wrong rank");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void GroupRingElement::check_rank(const GroupRingElement& other) const {
  if (rank_ != other.rank_)
    throw RankMismatch("group ring elements of rank " + std::to_string(rank_) + " and " +
                       std::to_string(other.rank_));
}

GroupRingElement GroupRingElement::operator-() const {
  GroupRingElement out = *this;
  for (auto& [w, c] : out.terms_) c = -c;
  return out;
}

GroupRingElement operator+(const GroupRingElement& x, const GroupRingElement& y) {
  x.check_rank(y);
  GroupRingElement out = x;
  for (const auto& [w, c] : y.terms_) out.add_term(w, c);
  return out;
}

GroupRingElement operator-(const GroupRingElement& x, const GroupRingElement& y) {
  x.check_rank(y);
  GroupRingElement out = x;
  for (const auto& [w, c] : y.terms_) out.add_term(w, -c);
  return out;
}

GroupRingElement operator*(const GroupRingElement& x, const GroupRingElement& y) {
  x.check_rank(y);
  GroupRingElement out(x.rank_);
  for (const auto& [u, a] : x.terms_)
    for (const auto& [v, b] : y.terms_) out.add_term(u * v, a * b);
  return out;
}

GroupRingElement GroupRingElement::apply(const Endomorphism& phi) const {
  if (phi.rank() != rank_) throw RankMismatch("endomorphism rank mismatch");
  GroupRingElement out(rank_);
  for (const auto& [w, c] : terms_) out.add_term(phi.apply(w), c);
  return out;
}

GroupRingElement GroupRingElement::with_rank(int rank) const {
  GroupRingElement out(rank);
  for (const auto& [w, c] : terms_) out.add_term(w.with_rank(rank), c);
  return out;
}

bool GroupRingElement::supported_in(int l) const {
  for (const auto& [w, c] : terms_)
    if (!w.supported_in(l)) return false;
  return true;
}

std::string GroupRingElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    const bool negative = c < 0;
    const Integer mag = abs(c);
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    if (w.is_identity()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += w.to_string();
    }
    first = false;
  }
  return out;
}

GroupRingMatrix zero_matrix(std::size_t rows, std::size_t cols, int rank) {
  return GroupRingMatrix(rows, cols, GroupRingElement::zero(rank));
}

GroupRingMatrix identity_matrix(std::size_t n, int rank) {
  return identity_matrix(n, GroupRingElement::zero(rank), GroupRingElement::one(rank));
}

GroupRingMatrix multiply(const GroupRingMatrix& a, const GroupRingMatrix& b) {
  const int rank = a.rows() && a.cols() ? a(0, 0).rank() : (b.rows() && b.cols() ? b(0, 0).rank() : 1);
  return multiply(a, b, GroupRingElement::zero(rank));
}

GroupRingElement fox_derivative(int j, const Word& u) {
  if (j < 1 || j > u.rank())
    throw DomainError("Fox derivative index " + std::to_string(j) + " out of range 1.." +
                      std::to_string(u.rank()));
  const int rank = u.rank();
  GroupRingElement out(rank);
  Word prefix = Word::identity(rank);
  for (const auto& s : u.syllables()) {
    if (s.gen == j) {
      // ∂(a^e) = 1 + a + ... + a^(e-1) for e > 0; -(a^-1 + ... + a^e) for e < 0.
      if (s.exp > 0) {
        for (std::int64_t p = 0; p < s.exp; ++p)
          out.add_term(prefix * Word::generator(rank, j, p), 1);
      } else {
        for (std::int64_t p = -1; p >= s.exp; --p)
          out.add_term(prefix * Word::generator(rank, j, p), -1);
      }
    }
    prefix = prefix * Word::generator(rank, s.gen, s.exp);
  }
  return out;
}

GroupRingElement fox_derivative(int j, const GroupRingElement& x) {
  GroupRingElement out(x.rank());
  for (const auto& [w, c] : x.terms()) {
    const auto d_w = fox_derivative(j, w);
    for (const auto& [v, d] : d_w.terms()) out.add_term(v, c * d);
  }
  return out;
}

GroupRingMatrix jacobian(std::span<const Word> set, int rank) {
  GroupRingMatrix jac = zero_matrix(set.size(), rank, rank);
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i].rank() != rank) throw RankMismatch("jacobian: word of wrong rank");
    for (int j = 1; j <= rank; ++j) jac(i, j - 1) = fox_derivative(j, set[i]);
  }
  return jac;
}

bool verify_right_inverse(const GroupRingMatrix& j, const GroupRingMatrix& p) {
  if (p.rows() != j.cols() || p.cols() != j.rows())
    throw ShapeMismatch("right inverse must be " + std::to_string(j.cols()) + "x" +
                        std::to_string(j.rows()));
  if (j.rows() == 0) return true;
  const int rank = j(0, 0).rank();
  return multiply(j, p) == identity_matrix(j.rows(), rank);
}

SupportSplit split_by_support(const GroupRingElement& x, int l) {
  SupportSplit out{GroupRingElement(x.rank()), GroupRingElement(x.rank())};
  for (const auto& [w, c] : x.terms()) (w.supported_in(l) ? out.local : out.involving).add_term(w, c);
  return out;
}

std::pair<GroupRingMatrix, GroupRingMatrix> split_matrix_by_support(const GroupRingMatrix& p,
                                                                    int l) {
  GroupRingMatrix q = p, r = p;
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) {
      auto parts = split_by_support(p(i, j), l);
      q(i, j) = std::move(parts.involving);
      r(i, j) = std::move(parts.local);
    }
  return {std::move(q), std::move(r)};
}

GroupRingMatrix restrict_jacobian(const GroupRingMatrix& j, int l) {
  if (l < 1 || static_cast<std::size_t>(l) > j.cols())
    throw DomainError("restriction index out of range");
  GroupRingMatrix out = zero_matrix(j.rows(), l, l);
  for (std::size_t i = 0; i < j.rows(); ++i) {
    for (std::size_t c = l; c < j.cols(); ++c)
      if (!j(i, c).is_zero())
        throw DomainError("column " + std::to_string(c + 1) +
                          " is nonzero: the set is not supported in a1..a" + std::to_string(l));
    for (int c = 0; c < l; ++c) {
      if (!j(i, c).supported_in(l))
        throw DomainError("entry (" + std::to_string(i + 1) + "," + std::to_string(c + 1) +
                          ") involves generators beyond a" + std::to_string(l));
      out(i, c) = j(i, c).with_rank(l);
    }
  }
  return out;
}

GroupRingMatrix restrict_rows(const GroupRingMatrix& r, int l) {
  if (l < 1 || static_cast<std::size_t>(l) > r.rows())
    throw DomainError("restriction index out of range");
  GroupRingMatrix out = zero_matrix(l, r.cols(), l);
  for (int i = 0; i < l; ++i)
    for (std::size_t c = 0; c < r.cols(); ++c) out(i, c) = r(i, c).with_rank(l);
  return out;
}

GroupRingMatrix chain_rule_full_inverse(const Automorphism& phi) {
  const int r = phi.rank();
  // ∂_j(psi(phi(a_m))) = δ_mj expands by the chain rule to
  // Σ_l psi(∂_l phi(a_m)) ∂_j psi(a_l) = δ_mj; applying phi gives J·P = I.
  GroupRingMatrix p = zero_matrix(r, r, r);
  for (int l = 1; l <= r; ++l) {
    const Word& psi_l = phi.inverse.image(l);
    for (int j = 1; j <= r; ++j) p(l - 1, j - 1) = fox_derivative(j, psi_l).apply(phi.forward);
  }
  return p;
}

JacobianWitness chain_rule_inverse_witness(const Automorphism& phi, int k) {
  const int r = phi.rank();
  if (k < 1 || k > r) throw DomainError("witness size k out of range");
  const auto set = apply_to_basis_prefix(phi, k);
  JacobianWitness w{jacobian(set, r), zero_matrix(r, k, r)};
  const auto full = chain_rule_full_inverse(phi);
  for (int l = 0; l < r; ++l)
    for (int j = 0; j < k; ++j) w.right_inverse(l, j) = full(l, j);
  if (!verify_right_inverse(w.jacobian, w.right_inverse))
    throw InvalidWitness("chain-rule right inverse failed J*P = I_k");
  return w;
}

std::string to_string(const GroupRingMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += m(i, j).to_string();
    }
    out += '\n';
  }
  return out;
}

}  // namespace primus
