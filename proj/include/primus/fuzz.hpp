#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "primus/io.hpp"

namespace primus {

struct FuzzConfig {
  VarietySpec variety;
  int rank = 3;
  int l = 2;
  int k = 1;
  int trials = 100;
  int max_steps = 8;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: hardware concurrency
  Budgets budgets;
};

struct FuzzTrial {
  int index = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> set;
  Status full = Status::Unknown;        // verdict at rank r
  Status restricted = Status::Unknown;  // verdict at rank l
  std::string detail;
};

struct FuzzReport {
  int trials = 0;
  int passes = 0;
  int unknowns = 0;
  std::vector<FuzzTrial> failures;  // any NotPrimitive verdict
  std::vector<FuzzTrial> all;

  Json to_json(const FuzzConfig& config) const;
};

/// Primitive k-subset of F_l generated by a random automorphism of F_l
/// (images of a1..ak), viewed in F_r. Deterministic in `seed`.
std::vector<Word> fuzz_instance(int rank, int l, int k, int max_steps, std::uint64_t seed);

/// Decides every instance at rank r and again at rank l. Trials run in
/// parallel and are merged in index order.
FuzzReport run_fuzz(const FuzzConfig& config);

}  // namespace primus
