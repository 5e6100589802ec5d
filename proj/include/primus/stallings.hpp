#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "primus/automorphism.hpp"
#include "primus/verdict.hpp"
#include "primus/word.hpp"

namespace primus {

struct GraphEdge {
  int from = 0;
  int to = 0;
  int label = 1;  // generator index; the edge reads a_label from `from` to `to`
  auto operator<=>(const GraphEdge&) const = default;
};

/// Folded labelled graph of a finitely generated subgroup of F_r.
/// Vertices are 0..vertex_count-1. A based core keeps its base even if it has
/// degree 1; an unbased core (base = -1) represents the conjugacy class.
struct StallingsGraph {
  int rank = 1;
  int vertex_count = 1;
  int base = 0;
  std::vector<GraphEdge> edges;  // sorted

  std::size_t size() const { return edges.size(); }
  bool is_rose() const { return vertex_count == 1; }
  /// Labels on the loops of a one-vertex graph.
  std::vector<int> rose_labels() const;
  /// Vertex-relabelling invariant code; equal iff the graphs are isomorphic
  /// (as unbased graphs when base < 0, else fixing the base).
  std::vector<int> canonical_code() const;
  std::string to_dot() const;
};

/// Folds the wedge of loops reading the words and returns the based core.
StallingsGraph build_subgroup_graph(std::span<const Word> set, int rank);
/// Same, with folds performed in an order shuffled by `seed`.
StallingsGraph build_subgroup_graph(std::span<const Word> set, int rank, std::uint64_t seed);
StallingsGraph unbased_core(const StallingsGraph& g);
int subgroup_rank(const StallingsGraph& g);
/// Free basis read off a spanning tree rooted at the base (or vertex 0).
std::vector<Word> graph_basis(const StallingsGraph& g);
bool graph_accepts(const StallingsGraph& g, const Word& w);

/// Whitehead automorphism (A, a): generator `multiplier` with sign, and for
/// every other generator x an option 0: x, 1: x·a, 2: a⁻¹·x, 3: a⁻¹·x·a.
struct WhiteheadMove {
  int multiplier = 1;
  int sign = 1;
  std::vector<int> options;  // indexed by generator - 1; ignored at the multiplier
  Automorphism automorphism(int rank) const;
  std::string to_string() const;
};

/// All nontrivial Whitehead moves in the fixed tie-breaking order.
std::vector<WhiteheadMove> whitehead_moves(int rank);

struct MinimizeResult {
  StallingsGraph graph;                   // unbased core of theta(H)
  std::vector<WhiteheadMove> log;
  Automorphism theta = Automorphism::identity(1);
  bool complete = true;                   // false when the level-set budget ran out
  std::size_t nodes = 0;
};

/// Greedy strict descent in edge count, then exploration of the equal-size
/// level set choosing the least canonical code. Stops at once on a rose.
MinimizeResult whitehead_minimize(const StallingsGraph& g, std::size_t node_budget = 20000);

struct FreeVerdict {
  Status status = Status::Unknown;
  int subgroup_rank = 0;
  std::vector<Word> completion;  // S ∪ completion is a basis, when Primitive
  std::vector<WhiteheadMove> log;
  std::size_t nodes = 0;
  std::string reason;
};

FreeVerdict is_primitive_free(std::span<const Word> set, int rank,
                              std::size_t node_budget = 20000);

/// Whether r words form a basis of F_r: their folded graph is the rose on all
/// generators.
bool is_free_basis(std::span<const Word> tuple, int rank);

std::vector<Word> random_primitive_set(int rank, int k, int steps, std::uint64_t seed);

/// Primitive k-tuples of total length <= cap, by closure of (a1,...,ak) under
/// Whitehead and permutation/inversion moves, allowing intermediate tuples up
/// to cap + slack. Guarded to rank <= 3 and cap <= 8.
std::set<std::vector<Word>> enumerate_primitive_orbit(int rank, int k, int cap, int slack = 4);

}  // namespace primus
