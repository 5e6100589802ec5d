#include "primus/automorphism.hpp"

#include "primus/error.hpp"

namespace primus {

Endomorphism::Endomorphism(int rank, std::vector<Word> images)
    : rank_(rank), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != rank_)
    throw RankMismatch("endomorphism needs " + std::to_string(rank_) + " images, got " +
                       std::to_string(images_.size()));
  for (const auto& w : images_)
    if (w.rank() != rank_) throw RankMismatch("endomorphism image has wrong rank");
}

Endomorphism Endomorphism::identity(int rank) {
  std::vector<Word> images;
  for (int i = 1; i <= rank; ++i) images.push_back(Word::generator(rank, i));
  return Endomorphism(rank, std::move(images));
}

Word Endomorphism::apply(const Word& w) const {
  if (w.rank() != rank_) throw RankMismatch("endomorphism applied to word of other rank");
  Word out = Word::identity(rank_);
  for (const auto& s : w.syllables()) out = out * power(images_[s.gen - 1], s.exp);
  return out;
}

Endomorphism Endomorphism::after(const Endomorphism& inner) const {
  if (inner.rank_ != rank_) throw RankMismatch("endomorphism composition rank mismatch");
  std::vector<Word> images;
  images.reserve(rank_);
  for (const auto& w : inner.images_) images.push_back(apply(w));
  return Endomorphism(rank_, std::move(images));
}

Automorphism Automorphism::after(const Automorphism& inner) const {
  return {forward.after(inner.forward), inner.inverse.after(inverse)};
}

bool Automorphism::is_consistent() const {
  const auto a = forward.after(inverse);
  const auto b = inverse.after(forward);
  const auto id = Endomorphism::identity(rank());
  return a == id && b == id;
}

Automorphism NielsenMove::automorphism(int rank) const {
  auto fwd = Endomorphism::identity(rank).images();
  auto inv = fwd;
  const Word t = Word::generator(rank, target);
  switch (kind) {
    case NielsenKind::RightMultiply:
      fwd[target - 1] = t * Word::generator(rank, other, sign);
      inv[target - 1] = t * Word::generator(rank, other, -sign);
      break;
    case NielsenKind::LeftMultiply:
      fwd[target - 1] = Word::generator(rank, other, sign) * t;
      inv[target - 1] = Word::generator(rank, other, -sign) * t;
      break;
    case NielsenKind::Invert:
      fwd[target - 1] = t.inverse();
      inv[target - 1] = t.inverse();
      break;
    case NielsenKind::Swap:
      std::swap(fwd[target - 1], fwd[other - 1]);
      std::swap(inv[target - 1], inv[other - 1]);
      break;
  }
  return {Endomorphism(rank, std::move(fwd)), Endomorphism(rank, std::move(inv))};
}

std::string NielsenMove::to_string() const {
  const std::string t = "a" + std::to_string(target);
  const std::string o = "a" + std::to_string(other) + (sign < 0 ? "^-1" : "");
  switch (kind) {
    case NielsenKind::RightMultiply: return t + "->" + t + " " + o;
    case NielsenKind::LeftMultiply: return t + "->" + o + " " + t;
    case NielsenKind::Invert: return t + "->" + t + "^-1";
    case NielsenKind::Swap: return t + "<->a" + std::to_string(other);
  }
  return {};
}

MoveSpace MoveSpace::full(int rank) {
  MoveSpace s;
  for (int i = 1; i <= rank; ++i) {
    s.targets.push_back(i);
    s.multipliers.push_back(i);
  }
  return s;
}

NielsenMove random_nielsen_move(const MoveSpace& space, Rng& rng) {
  if (space.targets.empty()) throw DomainError("move space has no targets");
  const int target = space.targets[rng.uniform(0, space.targets.size() - 1)];
  std::vector<int> others;
  for (int m : space.multipliers)
    if (m != target) others.push_back(m);
  std::vector<int> swaps;
  for (int m : space.targets)
    if (m != target) swaps.push_back(m);
  // Multiplications dominate; inversions and swaps keep the sample spread.
  const auto roll = rng.uniform(0, 9);
  if (!others.empty() && roll < 8) {
    const int other = others[rng.uniform(0, others.size() - 1)];
    const int sign = rng.coin() ? 1 : -1;
    return {roll < 4 ? NielsenKind::RightMultiply : NielsenKind::LeftMultiply, target, other,
            sign};
  }
  if (!swaps.empty() && roll == 9)
    return {NielsenKind::Swap, target, swaps[rng.uniform(0, swaps.size() - 1)], 1};
  return {NielsenKind::Invert, target, 0, 1};
}

Automorphism random_automorphism(int rank, int steps, const MoveSpace& space, Rng& rng) {
  if (steps < 0) throw DomainError("steps must be nonnegative");
  Automorphism phi = Automorphism::identity(rank);
  for (int i = 0; i < steps; ++i)
    phi = phi.after(random_nielsen_move(space, rng).automorphism(rank));
  return phi;
}

Automorphism random_automorphism(int rank, int steps, std::uint64_t seed) {
  Rng rng(seed);
  return random_automorphism(rank, steps, MoveSpace::full(rank), rng);
}

std::vector<Word> apply_to_basis_prefix(const Automorphism& phi, int k) {
  if (k < 0 || k > phi.rank()) throw DomainError("prefix size out of range");
  return {phi.forward.images().begin(), phi.forward.images().begin() + k};
}

}  // namespace primus
