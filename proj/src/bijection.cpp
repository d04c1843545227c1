#include "mfact/bijection.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mfact {

LabeledTree::LabeledTree(PlaneTree t)
    : shape(std::move(t)),
      vertex_labels(static_cast<std::size_t>(shape.size()), 0),
      edge_labels(static_cast<std::size_t>(shape.size()), 0) {}

LabeledTree::LabeledTree(PlaneTree t, std::vector<int> vl, std::vector<int> el)
    : shape(std::move(t)), vertex_labels(std::move(vl)), edge_labels(std::move(el)) {
  const auto n = static_cast<std::size_t>(shape.size());
  if (vertex_labels.size() != n || edge_labels.size() != n) {
    throw std::invalid_argument("label arrays must have one entry per vertex");
  }
  if (edge_labels[0] != 0) throw std::invalid_argument("the root has no parent edge to label");
}

bool LabeledTree::fully_labeled() const {
  const bool vertices = std::all_of(vertex_labels.begin(), vertex_labels.end(), [](int x) { return x != 0; });
  const bool edges = std::all_of(edge_labels.begin() + 1, edge_labels.end(), [](int x) { return x != 0; });
  return vertices && edges;
}

bool LabeledTree::labels_consistent() const {
  const int n = size();
  std::vector<char> seen_v(n + 1, 0), seen_e(n + 1, 0);
  for (int x : vertex_labels) {
    if (x == 0) continue;
    if (x < 0 || x > n || seen_v[x]) return false;
    seen_v[x] = 1;
  }
  if (vertex_labels[0] != 0 && vertex_labels[0] != 1) return false;
  for (int v = 1; v < n; ++v) {
    const int x = edge_labels[v];
    if (x == 0) continue;
    if (x < 0 || x > n - 1 || seen_e[x]) return false;
    seen_e[x] = 1;
  }
  for (const auto& kids : shape.children_lists()) {
    int last = 0;
    for (int c : kids) {
      if (edge_labels[c] == 0) continue;
      if (edge_labels[c] < last) return false;
      last = edge_labels[c];
    }
  }
  return true;
}

LabeledTree LabeledTree::without_vertex_labels() const {
  LabeledTree out = *this;
  std::fill(out.vertex_labels.begin(), out.vertex_labels.end(), 0);
  return out;
}

LabeledTree t1_forward(const Factorisation& f) {
  const int n = f.n();
  // adjacency[x] = (edge label, neighbour) pairs on vertex labels 1..n
  std::vector<std::vector<std::pair<int, int>>> adjacency(n + 1);
  for (int k = 1; k <= n - 1; ++k) {
    const auto& t = f.at(k);
    adjacency[t.a].emplace_back(k, t.b);
    adjacency[t.b].emplace_back(k, t.a);
  }
  // Edge labels were appended in increasing order, so each list is sorted.

  std::vector<int> counts, vertex_labels, edge_labels;
  counts.reserve(n);
  vertex_labels.reserve(n);
  edge_labels.reserve(n);
  std::vector<char> visited(n + 1, 0);
  // Iterative preorder: (vertex label, parent label, label of edge to parent)
  struct Frame {
    int vertex, parent, edge;
  };
  std::vector<Frame> stack{{1, 0, 0}};
  while (!stack.empty()) {
    const Frame fr = stack.back();
    stack.pop_back();
    if (visited[fr.vertex]) throw std::invalid_argument("transpositions contain a cycle; not a minimal factorisation");
    visited[fr.vertex] = 1;
    vertex_labels.push_back(fr.vertex);
    edge_labels.push_back(fr.edge);
    int children = 0;
    const auto& adj = adjacency[fr.vertex];
    for (auto it = adj.rbegin(); it != adj.rend(); ++it) {
      if (it->second == fr.parent && it->first == fr.edge) continue;
      stack.push_back({it->second, fr.vertex, it->first});
      ++children;
    }
    counts.push_back(children);
  }
  if (static_cast<int>(vertex_labels.size()) != n) {
    throw std::invalid_argument("transpositions do not connect {1..n}; not a minimal factorisation");
  }
  return LabeledTree(PlaneTree(std::move(counts)), std::move(vertex_labels), std::move(edge_labels));
}

namespace {

// Edge-successor walker over a fully edge-labeled tree.
class NextWalker {
public:
  explicit NextWalker(const LabeledTree& t) : n_(t.size()), parent_(t.shape.parents()) {
    const int edges = n_ - 1;
    endpoint_.assign(static_cast<std::size_t>(edges) + 1, {0, 0});
    std::vector<char> seen(static_cast<std::size_t>(edges) + 1, 0);
    for (int v = 1; v < n_; ++v) {
      const int label = t.edge_labels[v];
      if (label < 1 || label > edges || seen[label]) {
        throw std::invalid_argument("edge labels must be a permutation of 1..n-1");
      }
      seen[label] = 1;
      endpoint_[label] = {parent_[v], v};
    }
    incident_.assign(n_, {});
    for (int label = 1; label <= edges; ++label) {
      incident_[endpoint_[label].first].push_back(label);
      incident_[endpoint_[label].second].push_back(label);
    }
    // Children edges must increase left to right.
    for (const auto& kids : t.shape.children_lists()) {
      for (std::size_t i = 1; i < kids.size(); ++i) {
        if (t.edge_labels[kids[i]] < t.edge_labels[kids[i - 1]]) {
          throw std::invalid_argument("edge labels are not compatible with the plane order");
        }
      }
    }
  }

  int walk_from(int start) {
    const auto& first = incident_[start];
    if (first.empty()) return start;  // single-vertex tree
    int here = start;
    int label = first.front();
    for (;;) {
      here = other_end(label, here);
      ++moves_;
      const auto& inc = incident_[here];
      auto it = std::upper_bound(inc.begin(), inc.end(), label);
      if (it == inc.end()) return here;
      label = *it;
    }
  }

  std::uint64_t moves() const { return moves_; }

private:
  int other_end(int label, int v) const {
    const auto& e = endpoint_[label];
    return e.first == v ? e.second : e.first;
  }

  int n_;
  std::vector<int> parent_;
  std::vector<std::pair<int, int>> endpoint_;
  std::vector<std::vector<int>> incident_;
  std::uint64_t moves_ = 0;
};

}  // namespace

int next_vertex(const LabeledTree& t, int k) {
  const int n = t.size();
  if (k < 0 || k > n - 1) throw std::out_of_range("next_vertex: k must lie in [0, n-1]");
  if (k == 0) return 0;
  std::vector<int> where(n + 1, -1);
  for (int v = 0; v < n; ++v) {
    const int x = t.vertex_labels[v];
    if (x >= 1 && x <= n) where[x] = v;
  }
  for (int x = 1; x <= k; ++x) {
    if (where[x] < 0) throw std::invalid_argument("next_vertex: vertex label " + std::to_string(x) + " missing");
  }
  NextWalker walker(t);
  return walker.walk_from(where[k]);
}

Factorisation factorisation_from_edge_labels(const LabeledTree& t, std::uint64_t& edge_moves) {
  const int n = t.size();
  NextWalker walker(t);
  std::vector<int> label_of(n, 0);
  int v = 0;
  label_of[0] = 1;
  for (int k = 1; k <= n - 1; ++k) {
    v = walker.walk_from(v);
    if (label_of[v] != 0) throw std::invalid_argument("Next revisited a labeled vertex; edge labels are not realizable");
    label_of[v] = k + 1;
  }
  edge_moves = walker.moves();
  LabeledTree full(t.shape, std::move(label_of), t.edge_labels);
  return factorisation_from_labels(full);
}

Factorisation factorisation_from_edge_labels(const LabeledTree& t) {
  std::uint64_t moves = 0;
  return factorisation_from_edge_labels(t, moves);
}

Factorisation factorisation_from_labels(const LabeledTree& t) {
  const int n = t.size();
  const auto parent = t.shape.parents();
  std::vector<Transposition> taus(static_cast<std::size_t>(n - 1));
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int v = 1; v < n; ++v) {
    const int label = t.edge_labels[v];
    if (label < 1 || label > n - 1 || seen[label]) throw std::invalid_argument("edge labels must be a permutation of 1..n-1");
    seen[label] = 1;
    const int x = t.vertex_labels[parent[v]];
    const int y = t.vertex_labels[v];
    if (x < 1 || y < 1) throw std::invalid_argument("every vertex must be labeled");
    taus[label - 1] = Transposition(x, y);
  }
  return Factorisation(n, std::move(taus));
}

LabeledTree decreasing_labels(const PlaneTree& t) {
  const int n = t.size();
  LabeledTree out(t);
  const auto kids = t.children_lists();
  // Edges from v_i take (n-1-C_i, n-1-C_{i-1}], where C_i counts the
  // children of v_1..v_i, i.e. C_i = S_i + i.
  int used = 0;
  for (int v = 0; v < n; ++v) {
    out.vertex_labels[v] = v + 1;
    int label = n - 1 - (used + t.children(v));
    for (int c : kids[v]) out.edge_labels[c] = ++label;
    used += t.children(v);
  }
  return out;
}

Factorisation decreasing_factorisation_of_tree(const PlaneTree& t) {
  return factorisation_from_labels(decreasing_labels(t));
}

PlaneTree tree_of_decreasing_factorisation(const Factorisation& f) {
  if (!is_decreasing(f)) throw std::invalid_argument("factorisation is not decreasing");
  if (!is_cycle_factorisation(f)) throw std::invalid_argument("factorisation does not multiply to (1 ... n)");
  return t1_forward(f).shape;
}

std::vector<int> vertex_types(const PlaneTree& t) {
  const auto h = vertex_heights(t);
  std::vector<int> type(h.size());
  for (std::size_t v = 0; v < h.size(); ++v) {
    type[v] = (t.children(static_cast<int>(v)) == 0 || h[v] % 2 == 0) ? 1 : 2;
  }
  return type;
}

LabeledTree increasing_labels(const PlaneTree& t, int max_stage) {
  const int n = t.size();
  LabeledTree out(t);
  const auto kids = t.children_lists();
  const auto parent = t.parents();
  const auto sub = t.subtree_sizes();
  const auto type = vertex_types(t);

  std::vector<char> vertex_used(static_cast<std::size_t>(n) + 2, 0);
  int nu = 1;       // smallest unused vertex label
  int epsilon = 1;  // smallest unused edge label
  auto claim_vertex = [&](int v, int label) {
    out.vertex_labels[v] = label;
    vertex_used[label] = 1;
    while (nu <= n && vertex_used[nu]) ++nu;
  };
  auto label_children = [&](int v) {
    for (int c : kids[v]) out.edge_labels[c] = epsilon++;
  };

  // Stage 1: the root and its children edges.
  claim_vertex(0, 1);
  label_children(0);
  int stage = 1;
  int v = 0;  // vertex that received the most recent nu
  // In lexicographic order the successor of v is v + 1.
  while (v != n - 1 && (max_stage < 0 || stage < max_stage)) {
    const int u_prime = v + 1;
    const int u = parent[u_prime];
    const int label = nu;
    if (t.children(u_prime) == 0) {
      // Case 1
      claim_vertex(u_prime, label);
      if (out.edge_labels[u_prime] == 0) out.edge_labels[u_prime] = epsilon++;
      v = u_prime;
    } else if (type[u] == 2) {
      // Case 2
      claim_vertex(u_prime, label);
      label_children(u_prime);
      out.edge_labels[u_prime] = epsilon++;
      v = u_prime;
    } else {
      // Case 3: u'' is the first child of u'.
      const int u_second = u_prime + 1;
      claim_vertex(u_prime, label + sub[u_prime] - 1);
      claim_vertex(u_second, label);
      label_children(u_second);
      out.edge_labels[u_second] = epsilon++;
      v = u_second;
    }
    ++stage;
  }
  return out;
}

Factorisation increasing_factorisation_of_tree(const PlaneTree& t) {
  return factorisation_from_labels(increasing_labels(t));
}

PlaneTree tree_of_increasing_factorisation(const Factorisation& f) {
  if (!is_increasing(f)) throw std::invalid_argument("factorisation is not increasing");
  if (!is_cycle_factorisation(f)) throw std::invalid_argument("factorisation does not multiply to (1 ... n)");
  return t1_forward(f).shape;
}

}  // namespace mfact
