#include "primus/nilpotent.hpp"

#include <numeric>
#include <set>

#include "primus/error.hpp"

namespace primus {

AbelianVerdict is_primitive_nilpotent(std::span<const Word> set, int rank, int nil_class,
                                      long exponent) {
  if (nil_class < 1) throw DomainError("nilpotency class must be at least 1");
  return is_primitive_abelian(abelianize(set, rank), exponent);
}

Class2Element Class2Element::identity(int rank) {
  return {rank, std::vector<std::int64_t>(rank, 0),
          std::vector<std::int64_t>(rank * (rank - 1) / 2, 0)};
}

std::size_t Class2Element::pair_index(int rank, int i, int j) {
  // Pairs (0,1), (0,2), ..., (0,r-1), (1,2), ...
  return static_cast<std::size_t>(i * (2 * rank - i - 1) / 2 + (j - i - 1));
}

Class2Element class2_multiply(const Class2Element& x, const Class2Element& y) {
  if (x.rank != y.rank) throw RankMismatch("class-2 elements of different rank");
  Class2Element z = x;
  for (int i = 0; i < x.rank; ++i) z.abelian[i] += y.abelian[i];
  for (int i = 0; i < x.rank; ++i)
    for (int j = i + 1; j < x.rank; ++j) {
      const auto p = Class2Element::pair_index(x.rank, i, j);
      // a_j^{α_j} must pass a_i^{β_i}: a_j^p a_i^q = a_i^q a_j^p [a_i,a_j]^{-pq}.
      z.commutator[p] += y.commutator[p] - y.abelian[i] * x.abelian[j];
    }
  return z;
}

Class2Element class2_inverse(const Class2Element& x) {
  Class2Element z = x;
  for (int i = 0; i < x.rank; ++i) z.abelian[i] = -x.abelian[i];
  for (int i = 0; i < x.rank; ++i)
    for (int j = i + 1; j < x.rank; ++j) {
      const auto p = Class2Element::pair_index(x.rank, i, j);
      z.commutator[p] = -x.commutator[p] - x.abelian[i] * x.abelian[j];
    }
  return z;
}

Class2Element class2_commutator(const Class2Element& x, const Class2Element& y) {
  return class2_multiply(class2_multiply(class2_inverse(x), class2_inverse(y)),
                         class2_multiply(x, y));
}

Class2Element class2_from_word(const Word& w) {
  Class2Element z = Class2Element::identity(w.rank());
  for (const auto& s : w.syllables()) {
    Class2Element g = Class2Element::identity(w.rank());
    g.abelian[s.gen - 1] = s.exp;
    z = class2_multiply(z, g);
  }
  return z;
}

namespace {

Integer small_det(std::vector<std::vector<Integer>> a) {
  IntMatrix m = int_matrix(a.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m(i, j) = a[i][j];
  return determinant(m);
}

// gcd of all k×k minors, by enumerating column subsets.
Integer minor_gcd(const std::vector<std::vector<std::int64_t>>& rows, int rank) {
  const std::size_t k = rows.size();
  Integer g = 0;
  std::vector<int> cols(k);
  std::iota(cols.begin(), cols.end(), 0);
  for (;;) {
    std::vector<std::vector<Integer>> sub(k, std::vector<Integer>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub[i][j] = rows[i][cols[j]];
    g = gcd(g, small_det(sub));
    std::size_t i = k;
    while (i > 0 && cols[i - 1] == rank - static_cast<int>(k) + static_cast<int>(i) - 1) --i;
    if (i == 0) break;
    ++cols[i - 1];
    for (std::size_t t = i; t < k; ++t) cols[t] = cols[t - 1] + 1;
  }
  return g;
}

}  // namespace

bool class2_generates(std::span<const Class2Element> tuple) {
  if (tuple.empty()) return false;
  const int r = tuple[0].rank;
  if (static_cast<int>(tuple.size()) != r) return false;
  std::vector<std::vector<Integer>> ab(r, std::vector<Integer>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) ab[i][j] = tuple[i].abelian[j];
  if (abs(small_det(ab)) != 1) return false;
  if (r < 2) return true;
  // With a basis on top, the subgroup meets γ_2 in the span of [t_a, t_b].
  std::vector<std::vector<Integer>> comm;
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b) {
      const auto c = class2_commutator(tuple[a], tuple[b]);
      comm.emplace_back(c.commutator.begin(), c.commutator.end());
    }
  return abs(small_det(comm)) == 1;
}

Class2OracleVerdict class2_primitivity_oracle(std::span<const Word> set, int rank, int bound) {
  Class2OracleVerdict v;
  v.bound = bound;
  const int k = static_cast<int>(set.size());
  if (k > rank || k == 0) {
    v.status = Status::NotPrimitive;
    return v;
  }
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& w : set) rows.push_back(class2_from_word(w).abelian);
  if (minor_gcd(rows, rank) != 1) {
    v.status = Status::NotPrimitive;
    return v;
  }
  std::vector<Class2Element> base;
  for (const auto& w : set) base.push_back(class2_from_word(w));
  // Candidate completions, deduplicated by class-2 image.
  std::vector<std::pair<Class2Element, Word>> pool;
  {
    std::set<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>> seen;
    for (const auto& w : all_reduced_words(rank, bound)) {
      if (w.is_identity()) continue;
      auto c = class2_from_word(w);
      if (seen.insert({c.abelian, c.commutator}).second) pool.emplace_back(std::move(c), w);
    }
  }
  const int need = rank - k;
  std::vector<std::size_t> pick(need, 0);
  std::vector<Class2Element> tuple = base;
  tuple.resize(rank, Class2Element::identity(rank));
  if (need == 0) {
    v.status = class2_generates(tuple) ? Status::Primitive : Status::Unknown;
    return v;
  }
  // Nondecreasing index tuples: the generated subgroup ignores order.
  for (;;) {
    for (int i = 0; i < need; ++i) tuple[k + i] = pool[pick[i]].first;
    if (class2_generates(tuple)) {
      v.status = Status::Primitive;
      for (int i = 0; i < need; ++i) v.completion.push_back(pool[pick[i]].second);
      return v;
    }
    int i = need - 1;
    while (i >= 0 && pick[i] + 1 == pool.size()) --i;
    if (i < 0) break;
    ++pick[i];
    for (int t = i + 1; t < need; ++t) pick[t] = pick[i];
  }
  v.status = Status::Unknown;
  return v;
}

}  // namespace primus
