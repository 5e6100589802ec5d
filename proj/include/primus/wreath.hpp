#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "primus/word.hpp"

namespace primus {

/// Finite model of the relatively free A_mA_n group of rank r inside
/// Z_m^r wr Z_n^r: the subgroup generated by a_i = (e_i, δ_0·e_i), with
/// (a, f)(b, g) = (a + b, f + a·g) and (a·g)(x) = g(x - a).
/// An element is stored as a byte string: r top coordinates, then the
/// bottom table (n^r points, r coordinates each).
class WreathModel {
 public:
  using Element = std::string;

  /// Requires 0 < m, n < 256 (DomainError) and n^r <= 4096 (BudgetExceeded).
  WreathModel(int m, int n, int rank);

  int m() const { return m_; }
  int n() const { return n_; }
  int rank() const { return rank_; }

  Element identity() const;
  Element generator(int gen) const;
  Element multiply(const Element& x, const Element& y) const;
  Element inverse(const Element& x) const;
  Element evaluate(const Word& w) const;

  /// Closure of the subgroup generated by `gens`; throws BudgetExceeded
  /// past `limit` elements.
  std::vector<Element> subgroup(std::span<const Element> gens, std::size_t limit = 100000) const;
  std::size_t subgroup_order(std::span<const Element> gens, std::size_t limit = 100000) const;

 private:
  int m_, n_, rank_;
  int points_;  // n^r
  std::vector<int> shift_;  // shift_[a * points + x] = index of x - a
};

struct WreathVerdict {
  bool primitive = false;
  std::vector<WreathModel::Element> completion;
  std::size_t group_order = 0;
  std::size_t candidates = 0;
};

/// Ground truth by exhaustive search: S is primitive iff some tuple of r - |S|
/// group elements together with the image of S generates the whole group
/// (a generating r-tuple of a finite relatively free group is a basis).
WreathVerdict wreath_primitivity(const WreathModel& model, std::span<const Word> set,
                                 std::size_t limit = 100000);

}  // namespace primus
