#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "primus/rng.hpp"
#include "primus/word.hpp"

namespace primus {

/// Endomorphism of F_r given by the images of a1..ar.
class Endomorphism {
 public:
  Endomorphism(int rank, std::vector<Word> images);
  static Endomorphism identity(int rank);

  int rank() const { return rank_; }
  const std::vector<Word>& images() const { return images_; }
  const Word& image(int gen) const { return images_[gen - 1]; }

  Word apply(const Word& w) const;
  /// (this ∘ inner)(w) = this(inner(w)).
  Endomorphism after(const Endomorphism& inner) const;

  bool operator==(const Endomorphism&) const = default;

 private:
  int rank_;
  std::vector<Word> images_;
};

/// An automorphism paired with its exact inverse.
struct Automorphism {
  Endomorphism forward;
  Endomorphism inverse;

  static Automorphism identity(int rank) {
    return {Endomorphism::identity(rank), Endomorphism::identity(rank)};
  }
  int rank() const { return forward.rank(); }
  /// this ∘ inner, with inverse inner⁻¹ ∘ this⁻¹.
  Automorphism after(const Automorphism& inner) const;
  Automorphism inverted() const { return {inverse, forward}; }
  /// Exact check that both composites fix every generator.
  bool is_consistent() const;
};

/// Elementary Nielsen automorphisms.
enum class NielsenKind { RightMultiply, LeftMultiply, Invert, Swap };

struct NielsenMove {
  NielsenKind kind;
  int target;         // generator whose image changes
  int other = 0;      // multiplier / swap partner
  int sign = 1;       // exponent of the multiplier
  Automorphism automorphism(int rank) const;
  std::string to_string() const;
};

/// Generators a move may modify and multipliers it may use.
struct MoveSpace {
  std::vector<int> targets;
  std::vector<int> multipliers;
  static MoveSpace full(int rank);
};

NielsenMove random_nielsen_move(const MoveSpace& space, Rng& rng);

/// Composite of `steps` random elementary Nielsen moves (as phi = m1 ∘ m2 ∘ ...),
/// with the inverse composed alongside; deterministic in `seed`.
Automorphism random_automorphism(int rank, int steps, std::uint64_t seed);
Automorphism random_automorphism(int rank, int steps, const MoveSpace& space, Rng& rng);

/// Images of a1..ak under a random automorphism.
std::vector<Word> apply_to_basis_prefix(const Automorphism& phi, int k);

}  // namespace primus
