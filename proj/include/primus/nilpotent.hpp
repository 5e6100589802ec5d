#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "primus/abelian.hpp"
#include "primus/verdict.hpp"
#include "primus/word.hpp"

namespace primus {

/// Primitivity mod γ_{c+1}(F)·F^n. A set generates a nilpotent group iff its
/// image generates the abelianization, so a set is primitive modulo the
/// nilpotent variety exactly when it is primitive mod F'F^n: any completion
/// mod F'F^n lifts to a tuple generating F/γ_{c+1}F·F^n, and a generating
/// r-tuple of a relatively free group is a basis (Hopf property).
AbelianVerdict is_primitive_nilpotent(std::span<const Word> set, int rank, int nil_class,
                                      long exponent);

/// Element a_1^{e_1}···a_r^{e_r}·Π_{i<j}[a_i,a_j]^{c_ij} of the free class-2
/// nilpotent group, with [x,y] = x⁻¹y⁻¹xy.
struct Class2Element {
  int rank = 1;
  std::vector<std::int64_t> abelian;     // length r
  std::vector<std::int64_t> commutator;  // length r(r-1)/2, pairs (i,j), i<j, lexicographic

  static Class2Element identity(int rank);
  static std::size_t pair_index(int rank, int i, int j);  // 0-based i < j
  bool operator==(const Class2Element&) const = default;
};

/// Collection in class 2: (α, γ)·(β, δ) = (α+β, γ+δ - β_i α_j for i<j).
Class2Element class2_multiply(const Class2Element& x, const Class2Element& y);
Class2Element class2_inverse(const Class2Element& x);
Class2Element class2_commutator(const Class2Element& x, const Class2Element& y);
Class2Element class2_from_word(const Word& w);

struct Class2OracleVerdict {
  Status status = Status::Unknown;
  std::vector<Word> completion;  // extra elements making a basis, when Primitive
  int bound = 0;
};

/// Searches completions by words of length <= bound and tests whether the
/// resulting r-tuple generates the free class-2 group (abelian images span
/// Z^r and the commutators of the tuple span the commutator lattice).
/// NotPrimitive only through the abelian obstruction; Unknown when the search
/// is exhausted.
Class2OracleVerdict class2_primitivity_oracle(std::span<const Word> set, int rank, int bound);

/// Whether an r-tuple of class-2 elements generates the free class-2 group.
bool class2_generates(std::span<const Class2Element> tuple);

}  // namespace primus
