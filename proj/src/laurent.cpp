#include "primus/laurent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

#include "primus/error.hpp"

namespace primus {

bool MonomialLess::operator()(const Exponents& a, const Exponents& b) const {
  std::int64_t da = 0, db = 0;
  for (auto e : a) da += e < 0 ? -e : e;
  for (auto e : b) db += e < 0 ? -e : e;
  if (da != db) return da < db;
  return a < b;
}

LaurentElement::LaurentElement(int rank, long m, long n) : rank_(rank), m_(m), n_(n) {
  if (rank < 1) throw DomainError("Laurent ring rank must be positive");
  if (m < 0 || n < 0) throw DomainError("moduli must be nonnegative");
}

LaurentElement LaurentElement::one(int rank, long m, long n) {
  return monomial(rank, m, n, Exponents(rank, 0));
}

LaurentElement LaurentElement::monomial(int rank, long m, long n, Exponents e, Integer coeff) {
  LaurentElement x(rank, m, n);
  x.add_term(std::move(e), coeff);
  return x;
}

void LaurentElement::normalize(Exponents& e) const {
  if (static_cast<int>(e.size()) != rank_) throw RankMismatch("monomial of wrong rank");
  if (n_ > 0)
    for (auto& x : e) x = ((x % n_) + n_) % n_;
}

void LaurentElement::add_term(Exponents e, const Integer& c) {
  normalize(e);
  const Integer cm = reduce_mod(c, Integer(m_));
  if (cm == 0) return;
  auto [it, inserted] = terms_.try_emplace(std::move(e), cm);
  if (!inserted) {
    it->second = reduce_mod(it->second + cm, Integer(m_));
    if (it->second == 0) terms_.erase(it);
  }
}

void LaurentElement::check_compatible(const LaurentElement& other) const {
  if (rank_ != other.rank_) throw RankMismatch("Laurent elements of different rank");
  if (m_ != other.m_ || n_ != other.n_)
    throw DomainError("Laurent elements over different rings (mixed moduli)");
}

LaurentElement LaurentElement::operator-() const {
  LaurentElement out(rank_, m_, n_);
  for (const auto& [e, c] : terms_) out.add_term(e, -c);
  return out;
}

LaurentElement operator+(const LaurentElement& x, const LaurentElement& y) {
  x.check_compatible(y);
  LaurentElement out = x;
  for (const auto& [e, c] : y.terms_) out.add_term(e, c);
  return out;
}

LaurentElement operator-(const LaurentElement& x, const LaurentElement& y) {
  x.check_compatible(y);
  LaurentElement out = x;
  for (const auto& [e, c] : y.terms_) out.add_term(e, -c);
  return out;
}

LaurentElement operator*(const LaurentElement& x, const LaurentElement& y) {
  x.check_compatible(y);
  LaurentElement out(x.rank_, x.m_, x.n_);
  Exponents sum(x.rank_);
  for (const auto& [a, c] : x.terms_)
    for (const auto& [b, d] : y.terms_) {
      for (int i = 0; i < x.rank_; ++i) sum[i] = a[i] + b[i];
      out.add_term(sum, c * d);
    }
  return out;
}

LaurentElement LaurentElement::shifted(const Exponents& e) const {
  LaurentElement out(rank_, m_, n_);
  Exponents sum(rank_);
  for (const auto& [a, c] : terms_) {
    for (int i = 0; i < rank_; ++i) sum[i] = a[i] + e[i];
    out.add_term(sum, c);
  }
  return out;
}

LaurentElement LaurentElement::reduced(long p, long q) const {
  if ((n_ > 0 && (q == 0 || n_ % q != 0)) || (m_ > 0 && (p == 0 || m_ % p != 0)))
    throw DomainError("reduction is not a ring homomorphism for these moduli");
  LaurentElement out(rank_, p, q);
  for (const auto& [e, c] : terms_) out.add_term(e, c);
  return out;
}

Integer LaurentElement::augmentation() const {
  Integer s = 0;
  for (const auto& [e, c] : terms_) s += c;
  return reduce_mod(s, Integer(m_));
}

bool LaurentElement::supported_in(int l) const {
  for (const auto& [e, c] : terms_)
    for (int i = l; i < rank_; ++i)
      if (e[i] != 0) return false;
  return true;
}

LaurentElement LaurentElement::with_rank(int rank) const {
  LaurentElement out(rank, m_, n_);
  for (const auto& [e, c] : terms_) {
    for (int i = rank; i < rank_; ++i)
      if (e[i] != 0) throw DomainError("element involves t" + std::to_string(i + 1));
    Exponents f(rank, 0);
    for (int i = 0; i < std::min(rank, rank_); ++i) f[i] = e[i];
    out.add_term(std::move(f), c);
  }
  return out;
}

std::string LaurentElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string mono;
    for (int i = 0; i < rank_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += ' ';
      mono += "t" + std::to_string(i + 1);
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    const bool negative = c < 0;
    const Integer mag = abs(c);
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    if (mono.empty())
      out += mag.get_str();
    else
      out += (mag == 1 ? std::string() : mag.get_str() + "*") + mono;
    first = false;
  }
  return out;
}

LaurentMatrix laurent_zero_matrix(std::size_t rows, std::size_t cols, int rank, long m, long n) {
  return LaurentMatrix(rows, cols, LaurentElement::zero(rank, m, n));
}

LaurentMatrix laurent_identity(std::size_t size, int rank, long m, long n) {
  return identity_matrix(size, LaurentElement::zero(rank, m, n), LaurentElement::one(rank, m, n));
}

LaurentMatrix multiply(const LaurentMatrix& a, const LaurentMatrix& b) {
  const LaurentElement& probe = a.rows() && a.cols() ? a(0, 0) : b(0, 0);
  return multiply(a, b,
                  LaurentElement::zero(probe.rank(), probe.coefficient_modulus(),
                                       probe.exponent_modulus()));
}

std::string to_string(const LaurentMatrix& m) {
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

LaurentElement project_word(const Word& w, long m, long n) {
  Exponents e(w.rank(), 0);
  for (const auto& s : w.syllables()) e[s.gen - 1] += s.exp;
  return LaurentElement::monomial(w.rank(), m, n, std::move(e));
}

LaurentElement project_to_quotient(const GroupRingElement& x, long m, long n) {
  LaurentElement out(x.rank(), m, n);
  Exponents e(x.rank());
  for (const auto& [w, c] : x.terms()) {
    std::fill(e.begin(), e.end(), 0);
    for (const auto& s : w.syllables()) e[s.gen - 1] += s.exp;
    out.add_term(e, c);
  }
  return out;
}

LaurentMatrix project_matrix(const GroupRingMatrix& a, long m, long n) {
  const int rank = a.rows() && a.cols() ? a(0, 0).rank() : 1;
  LaurentMatrix out = laurent_zero_matrix(a.rows(), a.cols(), rank, m, n);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = project_to_quotient(a(i, j), m, n);
  return out;
}

LaurentMatrix induced_jacobian(std::span<const Word> set, int rank, long m, long n) {
  return project_matrix(jacobian(set, rank), m, n);
}

std::vector<LaurentElement> kth_minors(const LaurentMatrix& j) {
  const std::size_t k = j.rows(), r = j.cols();
  if (k > r) throw DomainError("more rows than columns: no maximal minors");
  if (r > 24) throw DomainError("too many columns for minor expansion");
  if (k == 0) return {};
  const LaurentElement& probe = j(0, 0);
  const LaurentElement zero =
      LaurentElement::zero(probe.rank(), probe.coefficient_modulus(), probe.exponent_modulus());
  // dp[mask] = minor on rows 0..|mask|-1 and the columns in mask, by Laplace
  // expansion along the last row.
  std::unordered_map<std::uint32_t, LaurentElement> dp;
  dp.emplace(0u, LaurentElement::one(probe.rank(), probe.coefficient_modulus(),
                                     probe.exponent_modulus()));
  for (std::size_t i = 0; i < k; ++i) {
    std::unordered_map<std::uint32_t, LaurentElement> next;
    for (const auto& [mask, minor] : dp) {
      if (minor.is_zero()) continue;
      for (std::size_t c = 0; c < r; ++c) {
        if (mask & (1u << c)) continue;
        if (j(i, c).is_zero()) continue;
        const std::uint32_t grown = mask | (1u << c);
        const int above = std::popcount(mask >> c);
        LaurentElement term = j(i, c) * minor;
        if (above % 2) term = -term;
        auto [it, inserted] = next.try_emplace(grown, term);
        if (!inserted) it->second = it->second + term;
      }
    }
    dp = std::move(next);
  }
  std::vector<LaurentElement> out;
  std::vector<std::size_t> cols(k);
  for (std::size_t i = 0; i < k; ++i) cols[i] = i;
  for (;;) {
    std::uint32_t mask = 0;
    for (auto c : cols) mask |= 1u << c;
    auto it = dp.find(mask);
    out.push_back(it == dp.end() ? zero : it->second);
    std::size_t i = k;
    while (i > 0 && cols[i - 1] == r - k + i - 1) --i;
    if (i == 0) break;
    ++cols[i - 1];
    for (std::size_t t = i; t < k; ++t) cols[t] = cols[t - 1] + 1;
  }
  return out;
}

LaurentElement determinant(const LaurentMatrix& a) {
  if (a.rows() != a.cols()) throw ShapeMismatch("determinant of non-square matrix");
  return kth_minors(a).front();
}

std::string to_string(IdealStatus s) {
  switch (s) {
    case IdealStatus::Found: return "Found";
    case IdealStatus::NotIdeal: return "NotIdeal";
    case IdealStatus::Unknown: return "Unknown";
  }
  return {};
}

namespace {

/// Incremental triangular basis of the lattice spanned by generator vectors
/// (plus m·Z^N when m > 0), tracking each row as a combination of generators.
class LatticeSolver {
 public:
  using Combo = std::map<std::size_t, Integer>;

  LatticeSolver(std::size_t dim, long m) : dim_(dim), m_(m), rows_(dim) {
    if (m_ > 0)
      for (std::size_t i = 0; i < dim_; ++i) {
        rows_[i].emplace();
        rows_[i]->vec.assign(dim_, 0);
        rows_[i]->vec[i] = m_;
      }
  }

  void insert(std::vector<Integer> v, std::size_t generator) {
    Combo combo{{generator, Integer(1)}};
    reduce(v, 0);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (v[i] == 0) continue;
      if (!rows_[i]) {
        if (v[i] < 0) negate(v, combo);
        rows_[i] = Row{std::move(v), std::move(combo)};
        return;
      }
      Row& b = *rows_[i];
      Integer s, t;
      const Integer g = xgcd(b.vec[i], v[i], s, t);
      const Integer bi = b.vec[i] / g, vi = v[i] / g;
      std::vector<Integer> nb(dim_), nv(dim_);
      for (std::size_t c = i; c < dim_; ++c) {
        nb[c] = s * b.vec[c] + t * v[c];
        nv[c] = bi * v[c] - vi * b.vec[c];
      }
      Combo cb = combine(s, b.combo, t, combo);
      Combo cv = combine(bi, combo, -vi, b.combo);
      b.vec = std::move(nb);
      b.combo = std::move(cb);
      reduce(b.vec, i + 1);
      v = std::move(nv);
      combo = std::move(cv);
      reduce(v, i + 1);
    }
  }

  std::optional<Combo> solve(std::vector<Integer> target) const {
    Combo combo;
    reduce(target, 0);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (target[i] == 0) continue;
      if (!rows_[i]) return std::nullopt;
      const Row& b = *rows_[i];
      if (!mpz_divisible_p(target[i].get_mpz_t(), b.vec[i].get_mpz_t())) return std::nullopt;
      const Integer q = target[i] / b.vec[i];
      for (std::size_t c = i; c < dim_; ++c) target[c] -= q * b.vec[c];
      reduce(target, i + 1);
      combo = combine(Integer(1), combo, q, b.combo);
    }
    return combo;
  }

 private:
  struct Row {
    std::vector<Integer> vec;
    Combo combo;
  };

  void reduce(std::vector<Integer>& v, std::size_t from) const {
    if (m_ == 0) return;
    const Integer mm(m_);
    for (std::size_t c = from; c < dim_; ++c) v[c] = reduce_mod(v[c], mm);
  }

  Combo combine(const Integer& a, const Combo& x, const Integer& b, const Combo& y) const {
    Combo out;
    auto put = [&](std::size_t g, const Integer& c) {
      Integer& slot = out[g];
      slot = reduce_mod(slot + c, Integer(m_));
      if (slot == 0) out.erase(g);
    };
    if (a != 0)
      for (const auto& [g, c] : x) put(g, a * c);
    if (b != 0)
      for (const auto& [g, c] : y) put(g, b * c);
    return out;
  }

  static void negate(std::vector<Integer>& v, Combo& combo) {
    for (auto& x : v) x = -x;
    for (auto& [g, c] : combo) c = -c;
  }

  std::size_t dim_;
  long m_;
  std::vector<std::optional<Row>> rows_;
};

bool same_ring(std::span<const LaurentElement> xs) {
  for (const auto& x : xs)
    if (x.rank() != xs[0].rank() || x.coefficient_modulus() != xs[0].coefficient_modulus() ||
        x.exponent_modulus() != xs[0].exponent_modulus())
      return false;
  return true;
}

/// Solves Σ minors[i]·p_i = 1 with p_i ranging over the given shift monomials.
std::optional<std::vector<LaurentElement>> solve_over_shifts(
    std::span<const LaurentElement> minors, const std::vector<Exponents>& shifts) {
  const LaurentElement& probe = minors[0];
  const int rank = probe.rank();
  const long m = probe.coefficient_modulus(), n = probe.exponent_modulus();
  std::map<Exponents, std::size_t, MonomialLess> index;
  std::vector<std::vector<std::pair<Exponents, Integer>>> gens;
  for (const auto& minor : minors)
    for (const auto& e : shifts) {
      const LaurentElement g = minor.shifted(e);
      std::vector<std::pair<Exponents, Integer>> col(g.terms().begin(), g.terms().end());
      for (const auto& [mono, c] : col) index.try_emplace(mono, 0);
      gens.push_back(std::move(col));
    }
  const Exponents unit(rank, 0);
  index.try_emplace(unit, 0);
  std::size_t next = 0;
  for (auto& [mono, i] : index) i = next++;
  LatticeSolver solver(index.size(), m);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    std::vector<Integer> v(index.size(), 0);
    for (const auto& [mono, c] : gens[g]) v[index.at(mono)] = c;
    solver.insert(std::move(v), g);
  }
  std::vector<Integer> target(index.size(), 0);
  target[index.at(unit)] = 1;
  const auto combo = solver.solve(std::move(target));
  if (!combo) return std::nullopt;
  std::vector<LaurentElement> cofactors(minors.size(), LaurentElement(rank, m, n));
  for (const auto& [g, c] : *combo)
    cofactors[g / shifts.size()].add_term(shifts[g % shifts.size()], c);
  return cofactors;
}

std::vector<Exponents> all_shifts(int rank, std::int64_t lo, std::int64_t hi) {
  std::vector<Exponents> out;
  Exponents e(rank, lo);
  for (;;) {
    out.push_back(e);
    int i = 0;
    while (i < rank && e[i] == hi) e[i++] = lo;
    if (i == rank) break;
    ++e[i];
  }
  return out;
}

bool certificate_holds(std::span<const LaurentElement> minors,
                       std::span<const LaurentElement> cofactors) {
  const LaurentElement& probe = minors[0];
  LaurentElement sum(probe.rank(), probe.coefficient_modulus(), probe.exponent_modulus());
  for (std::size_t i = 0; i < minors.size(); ++i) sum = sum + minors[i] * cofactors[i];
  return sum == LaurentElement::one(probe.rank(), probe.coefficient_modulus(),
                                    probe.exponent_modulus());
}

constexpr double kFiniteDimensionGuard = 1e6;

}  // namespace

IdealCertificate ideal_contains_one(std::span<const LaurentElement> minors, int degree_bound,
                                    long obstruction_limit) {
  IdealCertificate cert;
  cert.degree_bound = degree_bound;
  cert.minors.assign(minors.begin(), minors.end());
  std::vector<LaurentElement> nonzero;
  for (const auto& x : minors)
    if (!x.is_zero()) nonzero.push_back(x);
  if (!same_ring(minors)) throw DomainError("ideal generators over mixed rings");
  if (nonzero.empty()) {
    // The zero ideal; it contains 1 only in the zero ring Z_1.
    const bool zero_ring = !minors.empty() && minors[0].coefficient_modulus() == 1;
    cert.status = zero_ring ? IdealStatus::Found : IdealStatus::NotIdeal;
    if (zero_ring) cert.cofactors.assign(minors.size(), minors[0]);
    if (!zero_ring) cert.obstruction_quotient = 1;
    return cert;
  }
  const int rank = nonzero[0].rank();
  const long m = nonzero[0].coefficient_modulus(), n = nonzero[0].exponent_modulus();

  auto expand = [&](const std::vector<LaurentElement>& cof) {
    // Map cofactors of the nonzero minors back to the full minor list.
    std::vector<LaurentElement> full;
    std::size_t t = 0;
    for (const auto& x : minors) full.push_back(x.is_zero() ? LaurentElement(rank, m, n) : cof[t++]);
    return full;
  };

  if (n > 0) {
    if (std::pow(static_cast<double>(n), rank) > kFiniteDimensionGuard)
      throw BudgetExceeded("n^r exceeds the 10^6 dense-dimension guard");
    const auto sol = solve_over_shifts(nonzero, all_shifts(rank, 0, n - 1));
    if (!sol) {
      cert.status = IdealStatus::NotIdeal;
      cert.obstruction_quotient = n;
      return cert;
    }
    cert.cofactors = expand(*sol);
  } else {
    for (long q = 1; q <= obstruction_limit; ++q) {
      std::vector<LaurentElement> images;
      for (const auto& x : nonzero) images.push_back(x.reduced(m, q));
      bool all_zero = std::all_of(images.begin(), images.end(),
                                  [](const LaurentElement& x) { return x.is_zero(); });
      if (all_zero || !solve_over_shifts(images, all_shifts(rank, 0, q - 1))) {
        cert.status = IdealStatus::NotIdeal;
        cert.obstruction_quotient = q;
        return cert;
      }
    }
    const auto sol = solve_over_shifts(nonzero, all_shifts(rank, -degree_bound, degree_bound));
    if (!sol) {
      cert.status = IdealStatus::Unknown;
      return cert;
    }
    cert.cofactors = expand(*sol);
  }
  if (!certificate_holds(cert.minors, cert.cofactors))
    throw InvalidWitness("ideal certificate failed re-verification");
  cert.status = IdealStatus::Found;
  return cert;
}

bool amAn_criterion_applies(long m, long n, std::size_t k, int rank) {
  return !(m == 0 && n > 0 && static_cast<int>(k) == rank - 1);
}

AmAnVerdict is_primitive_AmAn(std::span<const Word> set, int rank, long m, long n,
                              int degree_bound) {
  if (!amAn_criterion_applies(m, n, set.size(), rank))
    throw UnsupportedConfiguration(
        "the Jacobian criterion is not available when m = 0, n > 0 and k = r - 1");
  AmAnVerdict v;
  v.abelian = is_primitive_abelian(abelianize(set, rank), n);
  v.ideal = ideal_contains_one(kth_minors(induced_jacobian(set, rank, m, n)), degree_bound);
  if (v.abelian.status == Status::NotPrimitive || v.ideal.status == IdealStatus::NotIdeal)
    v.status = Status::NotPrimitive;
  else if (v.ideal.status == IdealStatus::Found)
    v.status = Status::Primitive;
  else
    v.status = Status::Unknown;
  return v;
}

LaurentSplit split_by_support_laurent(const LaurentElement& x, int l) {
  LaurentSplit out{LaurentElement(x.rank(), x.coefficient_modulus(), x.exponent_modulus()),
                   LaurentElement(x.rank(), x.coefficient_modulus(), x.exponent_modulus())};
  for (const auto& [e, c] : x.terms()) {
    const bool local = std::all_of(e.begin() + l, e.end(), [](auto v) { return v == 0; });
    (local ? out.local : out.involving).add_term(e, c);
  }
  return out;
}

RestrictionIdentity verify_restriction_identity(std::span<const LaurentElement> minors,
                                                std::span<const LaurentElement> cofactors,
                                                int l) {
  if (minors.empty() || minors.size() != cofactors.size())
    throw InvalidWitness("certificate size does not match the minors");
  const LaurentElement& probe = minors[0];
  const int rank = probe.rank();
  const long m = probe.coefficient_modulus(), n = probe.exponent_modulus();
  if (l < 1 || l > rank) throw DomainError("restriction index out of range");
  for (const auto& x : minors)
    if (!x.supported_in(l)) throw DomainError("minor involves coordinates beyond l");
  if (!certificate_holds(minors, cofactors))
    throw InvalidWitness("sum of minors times cofactors is not 1");

  RestrictionIdentity out;
  LaurentElement local_sum(rank, m, n), involving_sum(rank, m, n);
  std::vector<LaurentElement> locals;
  for (std::size_t i = 0; i < minors.size(); ++i) {
    const auto parts = split_by_support_laurent(cofactors[i], l);
    local_sum = local_sum + minors[i] * parts.local;
    involving_sum = involving_sum + minors[i] * parts.involving;
    locals.push_back(parts.local);
  }
  out.local_residual_zero = (LaurentElement::one(rank, m, n) - local_sum).is_zero();
  out.involving_sum_zero = involving_sum.is_zero();
  std::vector<LaurentElement> hat_minors;
  for (std::size_t i = 0; i < minors.size(); ++i) {
    hat_minors.push_back(minors[i].with_rank(l));
    out.restricted_cofactors.push_back(locals[i].with_rank(l));
  }
  out.restricted_certificate = certificate_holds(hat_minors, out.restricted_cofactors);
  return out;
}

}  // namespace primus
