#include "primus/stallings.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include "primus/error.hpp"
#include "primus/rng.hpp"

namespace primus {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Wedge of loops at vertex 0, one subdivided loop per word.
std::pair<int, std::vector<GraphEdge>> wedge(std::span<const Word> set, int rank) {
  int vertices = 1;
  std::vector<GraphEdge> edges;
  for (const auto& w : set) {
    if (w.rank() != rank) throw RankMismatch("word rank differs from graph rank");
    std::vector<int> letters;
    for (const auto& s : w.syllables())
      for (std::int64_t i = 0; i < (s.exp < 0 ? -s.exp : s.exp); ++i)
        letters.push_back(s.exp < 0 ? -s.gen : s.gen);
    int cur = 0;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      const int next = i + 1 == letters.size() ? 0 : vertices++;
      if (letters[i] > 0)
        edges.push_back({cur, next, letters[i]});
      else
        edges.push_back({next, cur, -letters[i]});
      cur = next;
    }
  }
  return {vertices, edges};
}

// Identifies vertices until no vertex has two equally labelled edges leaving
// (or entering) it, then deduplicates edges.
std::vector<GraphEdge> fold(int vertices, std::vector<GraphEdge> edges, UnionFind& uf) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::pair<int, int>, int> out, in;
    for (const auto& e : edges) {
      const int u = uf.find(e.from);
      const int v = uf.find(e.to);
      if (auto it = out.find({u, e.label}); it != out.end()) {
        if (uf.find(it->second) != v) {
          uf.unite(it->second, v);
          changed = true;
        }
      } else {
        out[{u, e.label}] = v;
      }
      if (auto it = in.find({v, e.label}); it != in.end()) {
        if (uf.find(it->second) != uf.find(u)) {
          uf.unite(it->second, u);
          changed = true;
        }
      } else {
        in[{v, e.label}] = u;
      }
    }
  }
  (void)vertices;
  for (auto& e : edges) {
    e.from = uf.find(e.from);
    e.to = uf.find(e.to);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

// Removes hanging trees (keeping `base` unless it is negative) and renumbers
// the survivors breadth-first from the base, or from the least survivor.
StallingsGraph prune(int rank, int vertices, const std::vector<GraphEdge>& edges, int base) {
  std::vector<int> degree(vertices, 0);
  std::vector<bool> present(vertices, false);
  std::vector<std::vector<int>> incident(vertices);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    ++degree[e.from];
    ++degree[e.to];
    present[e.from] = present[e.to] = true;
    incident[e.from].push_back(static_cast<int>(i));
    if (e.to != e.from) incident[e.to].push_back(static_cast<int>(i));
  }
  if (base >= 0) present[base] = true;
  std::vector<bool> edge_alive(edges.size(), true);
  std::deque<int> queue;
  for (int v = 0; v < vertices; ++v)
    if (present[v] && v != base && degree[v] <= 1) queue.push_back(v);
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (!present[v]) continue;
    present[v] = false;
    for (int i : incident[v]) {
      if (!edge_alive[i]) continue;
      edge_alive[i] = false;
      const int w = edges[i].from == v ? edges[i].to : edges[i].from;
      --degree[v];
      if (--degree[w] <= 1 && present[w] && w != base) queue.push_back(w);
    }
  }
  StallingsGraph g;
  g.rank = rank;
  int root = base;
  if (root < 0)
    for (int v = 0; v < vertices && root < 0; ++v)
      if (present[v]) root = v;
  if (root < 0) {
    g.vertex_count = 0;
    g.base = -1;
    return g;
  }
  std::vector<int> number(vertices, -1);
  std::deque<int> bfs{root};
  number[root] = 0;
  int next = 1;
  while (!bfs.empty()) {
    const int v = bfs.front();
    bfs.pop_front();
    for (int i : incident[v]) {
      if (!edge_alive[i]) continue;
      const int w = edges[i].from == v ? edges[i].to : edges[i].from;
      if (number[w] < 0) {
        number[w] = next++;
        bfs.push_back(w);
      }
    }
  }
  g.vertex_count = next;
  g.base = base < 0 ? -1 : 0;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edge_alive[i]) g.edges.push_back({number[edges[i].from], number[edges[i].to], edges[i].label});
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

struct Adjacency {
  int rank;
  std::vector<int> out, in;  // [v * (rank+1) + label], -1 when absent
  explicit Adjacency(const StallingsGraph& g)
      : rank(g.rank),
        out(static_cast<std::size_t>(g.vertex_count) * (g.rank + 1), -1),
        in(out.size(), -1) {
    for (const auto& e : g.edges) {
      out[e.from * (rank + 1) + e.label] = e.to;
      in[e.to * (rank + 1) + e.label] = e.from;
    }
  }
  int step(int v, int letter) const {
    return letter > 0 ? out[v * (rank + 1) + letter] : in[v * (rank + 1) - letter];
  }
};

StallingsGraph build(std::span<const Word> set, int rank, std::optional<std::uint64_t> seed,
                     bool keep_base) {
  auto [vertices, edges] = wedge(set, rank);
  if (seed) {
    Rng rng(*seed);
    for (std::size_t i = edges.size(); i > 1; --i)
      std::swap(edges[i - 1], edges[rng.uniform(0, static_cast<std::int64_t>(i) - 1)]);
  }
  UnionFind uf(vertices);
  auto folded = fold(vertices, std::move(edges), uf);
  return prune(rank, vertices, folded, keep_base ? uf.find(0) : -1);
}

std::vector<Word> tree_paths(const StallingsGraph& g, int root, std::vector<bool>* tree_edge) {
  std::vector<Word> path(g.vertex_count, Word::identity(g.rank));
  std::vector<bool> seen(g.vertex_count, false);
  if (tree_edge) tree_edge->assign(g.edges.size(), false);
  std::vector<std::vector<int>> incident(g.vertex_count);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    incident[g.edges[i].from].push_back(static_cast<int>(i));
    incident[g.edges[i].to].push_back(static_cast<int>(i));
  }
  std::deque<int> bfs{root};
  seen[root] = true;
  while (!bfs.empty()) {
    const int v = bfs.front();
    bfs.pop_front();
    for (int i : incident[v]) {
      const auto& e = g.edges[i];
      const bool forward = e.from == v;
      const int w = forward ? e.to : e.from;
      if (seen[w]) continue;
      seen[w] = true;
      if (tree_edge) (*tree_edge)[i] = true;
      path[w] = path[v] * Word::generator(g.rank, e.label, forward ? 1 : -1);
      bfs.push_back(w);
    }
  }
  return path;
}

StallingsGraph apply_move(const StallingsGraph& g, const Automorphism& a) {
  std::vector<Word> images;
  for (const auto& w : graph_basis(g)) images.push_back(a.forward.apply(w));
  return build(images, g.rank, std::nullopt, false);
}

}  // namespace

std::vector<int> StallingsGraph::rose_labels() const {
  std::vector<int> labels;
  if (vertex_count != 1) return labels;
  for (const auto& e : edges) labels.push_back(e.label);
  return labels;
}

std::vector<int> StallingsGraph::canonical_code() const {
  std::vector<int> best;
  const Adjacency adj(*this);
  const int first = base >= 0 ? base : 0;
  const int last = base >= 0 ? base : vertex_count - 1;
  for (int root = first; root <= last; ++root) {
    std::vector<int> number(vertex_count, -1), order{root};
    number[root] = 0;
    std::vector<int> code{vertex_count, static_cast<int>(edges.size())};
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (int l = 1; l <= rank; ++l)
        for (int letter : {l, -l}) {
          const int w = adj.step(order[i], letter);
          if (w < 0) {
            code.push_back(-1);
            continue;
          }
          if (number[w] < 0) {
            number[w] = static_cast<int>(order.size());
            order.push_back(w);
          }
          code.push_back(number[w]);
        }
      if (!best.empty() && std::lexicographical_compare(best.begin(), best.end(), code.begin(), code.end()))
        break;  // already worse than the best prefix
    }
    if (best.empty() || code < best) best = std::move(code);
  }
  if (best.empty()) best = {vertex_count, static_cast<int>(edges.size())};
  return best;
}

std::string StallingsGraph::to_dot() const {
  std::ostringstream os;
  os << "digraph subgroup {\n";
  for (int v = 0; v < vertex_count; ++v)
    os << "  v" << v << (v == base ? " [shape=doublecircle];\n" : " [shape=circle];\n");
  for (const auto& e : edges)
    os << "  v" << e.from << " -> v" << e.to << " [label=\"a" << e.label << "\"];\n";
  os << "}\n";
  return os.str();
}

StallingsGraph build_subgroup_graph(std::span<const Word> set, int rank) {
  return build(set, rank, std::nullopt, true);
}

StallingsGraph build_subgroup_graph(std::span<const Word> set, int rank, std::uint64_t seed) {
  return build(set, rank, seed, true);
}

StallingsGraph unbased_core(const StallingsGraph& g) {
  if (g.base < 0) return g;
  return prune(g.rank, g.vertex_count, g.edges, -1);
}

int subgroup_rank(const StallingsGraph& g) {
  if (g.vertex_count == 0) return 0;
  return static_cast<int>(g.edges.size()) - g.vertex_count + 1;
}

std::vector<Word> graph_basis(const StallingsGraph& g) {
  std::vector<Word> basis;
  if (g.vertex_count == 0) return basis;
  std::vector<bool> tree;
  const auto path = tree_paths(g, g.base >= 0 ? g.base : 0, &tree);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (tree[i]) continue;
    const auto& e = g.edges[i];
    basis.push_back(path[e.from] * Word::generator(g.rank, e.label) * path[e.to].inverse());
  }
  return basis;
}

bool graph_accepts(const StallingsGraph& g, const Word& w) {
  if (g.vertex_count == 0) return w.is_identity();
  const Adjacency adj(g);
  const int start = g.base >= 0 ? g.base : 0;
  int v = start;
  for (const auto& s : w.syllables())
    for (std::int64_t i = 0; i < (s.exp < 0 ? -s.exp : s.exp); ++i) {
      v = adj.step(v, s.exp < 0 ? -s.gen : s.gen);
      if (v < 0) return false;
    }
  return v == start;
}

Automorphism WhiteheadMove::automorphism(int rank) const {
  const Word a = Word::generator(rank, multiplier, sign);
  auto fwd = Endomorphism::identity(rank).images();
  auto inv = fwd;
  for (int x = 1; x <= rank; ++x) {
    if (x == multiplier) continue;
    const Word g = Word::generator(rank, x);
    for (auto [images, m] : {std::pair{&fwd, a}, std::pair{&inv, a.inverse()}}) {
      switch (options[x - 1]) {
        case 1: (*images)[x - 1] = g * m; break;
        case 2: (*images)[x - 1] = m.inverse() * g; break;
        case 3: (*images)[x - 1] = m.inverse() * g * m; break;
        default: break;
      }
    }
  }
  return {Endomorphism(rank, std::move(fwd)), Endomorphism(rank, std::move(inv))};
}

std::string WhiteheadMove::to_string() const {
  std::string s = "(a" + std::to_string(multiplier) + (sign < 0 ? "^-1" : "") + ";";
  for (std::size_t x = 0; x < options.size(); ++x)
    if (static_cast<int>(x) + 1 != multiplier) s += " " + std::to_string(options[x]);
  return s + ")";
}

std::vector<WhiteheadMove> whitehead_moves(int rank) {
  std::vector<WhiteheadMove> moves;
  int combos = 1;
  for (int i = 1; i < rank; ++i) combos *= 4;
  for (int m = 1; m <= rank; ++m)
    for (int sign : {1, -1})
      for (int code = 1; code < combos; ++code) {
        WhiteheadMove mv{m, sign, std::vector<int>(rank, 0)};
        int c = code;
        for (int x = 1; x <= rank; ++x) {
          if (x == m) continue;
          mv.options[x - 1] = c % 4;
          c /= 4;
        }
        moves.push_back(std::move(mv));
      }
  return moves;
}

MinimizeResult whitehead_minimize(const StallingsGraph& g, std::size_t node_budget) {
  MinimizeResult res;
  res.graph = unbased_core(g);
  res.theta = Automorphism::identity(g.rank);
  const int rank_h = subgroup_rank(res.graph);
  const auto moves = whitehead_moves(g.rank);
  std::vector<Automorphism> autos;
  for (const auto& mv : moves) autos.push_back(mv.automorphism(g.rank));

  for (;;) {
    // Greedy descent: first strictly shrinking move in the fixed order.
    bool shrunk = true;
    while (shrunk && static_cast<int>(res.graph.size()) > rank_h) {
      shrunk = false;
      for (std::size_t i = 0; i < moves.size(); ++i) {
        auto img = apply_move(res.graph, autos[i]);
        if (img.size() < res.graph.size()) {
          res.graph = std::move(img);
          res.theta = autos[i].after(res.theta);
          res.log.push_back(moves[i]);
          shrunk = true;
          break;
        }
      }
    }
    if (static_cast<int>(res.graph.size()) == rank_h) return res;

    // Level set of the local minimum, visited breadth-first by canonical code.
    struct Node {
      StallingsGraph graph;
      int parent;
      int move;
    };
    std::vector<Node> nodes{{res.graph, -1, -1}};
    std::set<std::vector<int>> seen{res.graph.canonical_code()};
    std::size_t best = 0;
    auto best_code = *seen.begin();
    int escaped = -1;
    for (std::size_t head = 0; head < nodes.size() && escaped < 0; ++head) {
      for (std::size_t i = 0; i < moves.size(); ++i) {
        auto img = apply_move(nodes[head].graph, autos[i]);
        if (img.size() < res.graph.size()) {
          nodes.push_back({std::move(img), static_cast<int>(head), static_cast<int>(i)});
          escaped = static_cast<int>(nodes.size()) - 1;
          break;
        }
        if (img.size() > res.graph.size()) continue;
        auto code = img.canonical_code();
        if (!seen.insert(code).second) continue;
        if (seen.size() > node_budget) {
          res.complete = false;
          res.nodes += seen.size();
          return res;
        }
        nodes.push_back({std::move(img), static_cast<int>(head), static_cast<int>(i)});
        if (code < best_code) {
          best_code = std::move(code);
          best = nodes.size() - 1;
        }
      }
    }
    res.nodes += seen.size();
    const std::size_t target = escaped >= 0 ? static_cast<std::size_t>(escaped) : best;
    std::vector<int> path;
    for (int at = static_cast<int>(target); nodes[at].parent >= 0; at = nodes[at].parent)
      path.push_back(nodes[at].move);
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      res.theta = autos[*it].after(res.theta);
      res.log.push_back(moves[*it]);
    }
    res.graph = nodes[target].graph;
    if (escaped < 0) return res;
  }
}

bool is_free_basis(std::span<const Word> tuple, int rank) {
  if (static_cast<int>(tuple.size()) != rank) return false;
  const auto g = build_subgroup_graph(tuple, rank);
  return g.vertex_count == 1 && static_cast<int>(g.edges.size()) == rank;
}

FreeVerdict is_primitive_free(std::span<const Word> set, int rank, std::size_t node_budget) {
  FreeVerdict v;
  const int k = static_cast<int>(set.size());
  if (k > rank) {
    v.status = Status::NotPrimitive;
    v.reason = "more elements than the rank";
    return v;
  }
  if (k == 0) {
    v.status = Status::Primitive;
    for (int i = 1; i <= rank; ++i) v.completion.push_back(Word::generator(rank, i));
    return v;
  }
  const auto g = build_subgroup_graph(set, rank);
  v.subgroup_rank = subgroup_rank(g);
  if (v.subgroup_rank != k) {
    v.status = Status::NotPrimitive;
    v.reason = "subgroup has rank " + std::to_string(v.subgroup_rank) + ", set has " +
               std::to_string(k) + " elements";
    return v;
  }
  auto res = whitehead_minimize(g, node_budget);
  v.log = res.log;
  v.nodes = res.nodes;
  if (static_cast<int>(res.graph.size()) != k) {
    if (res.complete) {
      v.status = Status::NotPrimitive;
      v.reason = "minimal graph has " + std::to_string(res.graph.size()) + " edges, not a rose on " +
                 std::to_string(k) + " loops";
    } else {
      v.status = Status::Unknown;
      v.reason = "level-set node budget " + std::to_string(node_budget) + " exhausted";
    }
    return v;
  }
  // theta<S> = g <a_J> g^-1 for the labels J of the rose; the missing
  // generators conjugated by g and pulled back complete S.
  std::vector<Word> image;
  for (const auto& w : set) image.push_back(res.theta.forward.apply(w));
  const auto based = build_subgroup_graph(image, rank);
  int hub = -1;
  for (const auto& e : based.edges)
    if (e.from == e.to) hub = e.from;
  const Word tail = tree_paths(based, based.base, nullptr)[hub];
  const auto labels = res.graph.rose_labels();
  for (int j = 1; j <= rank; ++j) {
    if (std::find(labels.begin(), labels.end(), j) != labels.end()) continue;
    v.completion.push_back(
        res.theta.inverse.apply(tail * Word::generator(rank, j) * tail.inverse()));
  }
  std::vector<Word> full(set.begin(), set.end());
  full.insert(full.end(), v.completion.begin(), v.completion.end());
  if (!is_free_basis(full, rank)) throw InvalidWitness("free completion failed to fold to a rose");
  v.status = Status::Primitive;
  return v;
}

std::vector<Word> random_primitive_set(int rank, int k, int steps, std::uint64_t seed) {
  if (k > rank) throw DomainError("k exceeds rank");
  return apply_to_basis_prefix(random_automorphism(rank, steps, seed), k);
}

std::set<std::vector<Word>> enumerate_primitive_orbit(int rank, int k, int cap, int slack) {
  if (rank > 3 || cap > 8) throw BudgetExceeded("orbit enumeration limited to rank <= 3, cap <= 8");
  if (k < 1 || k > rank) throw DomainError("k must lie in 1..rank");
  std::vector<Automorphism> autos;
  for (const auto& mv : whitehead_moves(rank)) autos.push_back(mv.automorphism(rank));
  for (int i = 1; i <= rank; ++i) {
    autos.push_back(NielsenMove{NielsenKind::Invert, i}.automorphism(rank));
    if (i < rank) autos.push_back(NielsenMove{NielsenKind::Swap, i, i + 1}.automorphism(rank));
  }
  auto total = [](const std::vector<Word>& t) {
    std::int64_t n = 0;
    for (const auto& w : t) n += w.length();
    return n;
  };
  std::vector<Word> start;
  for (int i = 1; i <= k; ++i) start.push_back(Word::generator(rank, i));
  std::set<std::vector<Word>> seen{start};
  std::deque<std::vector<Word>> queue{start};
  while (!queue.empty()) {
    const auto t = std::move(queue.front());
    queue.pop_front();
    for (const auto& a : autos) {
      std::vector<Word> img;
      for (const auto& w : t) img.push_back(a.forward.apply(w));
      if (total(img) > cap + slack) continue;
      if (seen.insert(img).second) queue.push_back(std::move(img));
    }
  }
  std::set<std::vector<Word>> out;
  for (const auto& t : seen)
    if (total(t) <= cap) out.insert(t);
  return out;
}

}  // namespace primus
