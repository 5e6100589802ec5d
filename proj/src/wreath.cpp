#include "primus/wreath.hpp"

#include <deque>
#include <unordered_set>

#include "primus/error.hpp"

namespace primus {

WreathModel::WreathModel(int m, int n, int rank) : m_(m), n_(n), rank_(rank), points_(1) {
  if (m <= 0 || n <= 0 || m >= 256 || n >= 256 || rank < 1)
    throw DomainError("wreath model needs 0 < m, n < 256 and rank >= 1");
  for (int i = 0; i < rank; ++i) {
    points_ *= n;
    if (points_ > 4096) throw BudgetExceeded("wreath model base group too large");
  }
  shift_.resize(static_cast<std::size_t>(points_) * points_);
  auto digits = [&](int x) {
    std::vector<int> d(rank_);
    for (int i = 0; i < rank_; ++i, x /= n_) d[i] = x % n_;
    return d;
  };
  for (int a = 0; a < points_; ++a)
    for (int x = 0; x < points_; ++x) {
      const auto da = digits(a), dx = digits(x);
      int idx = 0;
      for (int i = rank_ - 1; i >= 0; --i) idx = idx * n_ + ((dx[i] - da[i]) % n_ + n_) % n_;
      shift_[a * points_ + x] = idx;
    }
}

WreathModel::Element WreathModel::identity() const {
  return Element(static_cast<std::size_t>(rank_) * (1 + points_), '\0');
}

WreathModel::Element WreathModel::generator(int gen) const {
  if (gen < 1 || gen > rank_) throw DomainError("generator index out of range");
  Element e = identity();
  e[gen - 1] = 1;
  e[rank_ + (gen - 1)] = static_cast<char>(1 % m_);  // δ_0 · e_gen at point 0
  return e;
}

WreathModel::Element WreathModel::multiply(const Element& x, const Element& y) const {
  Element z = identity();
  int a = 0;
  for (int i = rank_ - 1; i >= 0; --i) a = a * n_ + static_cast<unsigned char>(x[i]);
  for (int i = 0; i < rank_; ++i)
    z[i] = static_cast<char>((static_cast<unsigned char>(x[i]) + static_cast<unsigned char>(y[i])) % n_);
  for (int p = 0; p < points_; ++p) {
    const int q = shift_[a * points_ + p];
    for (int i = 0; i < rank_; ++i) {
      const std::size_t at = rank_ + static_cast<std::size_t>(p) * rank_ + i;
      const std::size_t from = rank_ + static_cast<std::size_t>(q) * rank_ + i;
      z[at] = static_cast<char>((static_cast<unsigned char>(x[at]) + static_cast<unsigned char>(y[from])) % m_);
    }
  }
  return z;
}

WreathModel::Element WreathModel::inverse(const Element& x) const {
  // (a, f)^-1 = (-a, -(-a)·f).
  Element neg_top = identity();
  for (int i = 0; i < rank_; ++i)
    neg_top[i] = static_cast<char>((n_ - static_cast<unsigned char>(x[i])) % n_);
  Element bottom = identity();
  for (std::size_t j = rank_; j < x.size(); ++j)
    bottom[j] = static_cast<char>((m_ - static_cast<unsigned char>(x[j])) % m_);
  return multiply(neg_top, bottom);
}

WreathModel::Element WreathModel::evaluate(const Word& w) const {
  if (w.rank() != rank_) throw RankMismatch("word rank differs from model rank");
  Element z = identity();
  for (const auto& s : w.syllables()) {
    const Element g = s.exp > 0 ? generator(s.gen) : inverse(generator(s.gen));
    for (std::int64_t i = 0; i < (s.exp < 0 ? -s.exp : s.exp); ++i) z = multiply(z, g);
  }
  return z;
}

std::vector<WreathModel::Element> WreathModel::subgroup(std::span<const Element> gens,
                                                        std::size_t limit) const {
  std::unordered_set<Element> seen{identity()};
  std::vector<Element> order{identity()};
  for (std::size_t head = 0; head < order.size(); ++head)
    for (const auto& g : gens) {
      // In a finite group right multiplication by generators alone closes.
      auto z = multiply(order[head], g);
      if (seen.insert(z).second) {
        order.push_back(std::move(z));
        if (order.size() > limit) throw BudgetExceeded("subgroup order exceeds limit");
      }
    }
  return order;
}

std::size_t WreathModel::subgroup_order(std::span<const Element> gens, std::size_t limit) const {
  return subgroup(gens, limit).size();
}

WreathVerdict wreath_primitivity(const WreathModel& model, std::span<const Word> set,
                                 std::size_t limit) {
  WreathVerdict v;
  std::vector<WreathModel::Element> gens;
  for (int i = 1; i <= model.rank(); ++i) gens.push_back(model.generator(i));
  const auto group = model.subgroup(gens, limit);
  v.group_order = group.size();
  const int k = static_cast<int>(set.size());
  const int need = model.rank() - k;
  if (need < 0) return v;
  std::vector<WreathModel::Element> tuple;
  for (const auto& w : set) tuple.push_back(model.evaluate(w));
  tuple.resize(model.rank());
  std::vector<std::size_t> pick(need, 0);
  for (;;) {
    for (int i = 0; i < need; ++i) tuple[k + i] = group[pick[i]];
    ++v.candidates;
    if (model.subgroup_order(tuple, limit) == group.size()) {
      v.primitive = true;
      v.completion.assign(tuple.begin() + k, tuple.end());
      return v;
    }
    int i = need - 1;
    while (i >= 0 && pick[i] + 1 == group.size()) --i;
    if (i < 0) break;
    ++pick[i];
    for (int t = i + 1; t < need; ++t) pick[t] = pick[i];
  }
  return v;
}

}  // namespace primus
