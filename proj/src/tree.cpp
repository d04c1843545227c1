#include "mfact/tree.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mfact {

PlaneTree::PlaneTree(std::vector<int> children_counts) : counts_(std::move(children_counts)) {
  if (counts_.empty()) throw std::invalid_argument("plane tree needs at least one vertex");
  std::int64_t height = 0;
  for (std::size_t k = 0; k < counts_.size(); ++k) {
    if (counts_[k] < 0) throw std::invalid_argument("negative children count");
    height += counts_[k] - 1;
    const bool last = k + 1 == counts_.size();
    if (!last && height < 0) {
      throw std::invalid_argument("children counts close the tree before vertex " + std::to_string(k + 2));
    }
    if (last && height != -1) {
      throw std::invalid_argument("children counts must sum to n-1");
    }
  }
}

std::vector<int> PlaneTree::parents() const {
  const int n = size();
  std::vector<int> parent(n, -1);
  // Vertices still owed children, innermost last.
  std::vector<std::pair<int, int>> open;
  for (int v = 0; v < n; ++v) {
    if (v > 0) {
      auto& top = open.back();
      parent[v] = top.first;
      if (--top.second == 0) open.pop_back();
    }
    if (counts_[v] > 0) open.emplace_back(v, counts_[v]);
  }
  return parent;
}

std::vector<std::vector<int>> PlaneTree::children_lists() const {
  const auto parent = parents();
  std::vector<std::vector<int>> out(counts_.size());
  for (std::size_t v = 0; v < counts_.size(); ++v) out[v].reserve(counts_[v]);
  for (int v = 1; v < size(); ++v) out[parent[v]].push_back(v);
  return out;
}

std::vector<int> PlaneTree::subtree_sizes() const {
  const auto parent = parents();
  std::vector<int> sizes(counts_.size(), 1);
  for (int v = size() - 1; v > 0; --v) sizes[parent[v]] += sizes[v];
  return sizes;
}

LukaPath lukasiewicz_path(const PlaneTree& t) {
  LukaPath path;
  path.values.reserve(t.size() + 1);
  path.values.push_back(0);
  std::int64_t s = 0;
  for (int c : t.children_counts()) {
    s += c - 1;
    path.values.push_back(s);
  }
  return path;
}

PlaneTree tree_from_path(const LukaPath& path) {
  if (path.values.size() < 2 || path.values.front() != 0) {
    throw std::invalid_argument("Lukasiewicz path must start at 0 and have at least one step");
  }
  std::vector<int> counts;
  counts.reserve(path.values.size() - 1);
  for (std::size_t k = 1; k < path.values.size(); ++k) {
    const auto step = path.values[k] - path.values[k - 1];
    if (step < -1) throw std::invalid_argument("Lukasiewicz steps must be >= -1");
    counts.push_back(static_cast<int>(step + 1));
  }
  return PlaneTree(std::move(counts));
}

PlaneTree tree_from_parents(std::span<const int> parents) {
  const auto n = parents.size();
  if (n == 0 || parents[0] != -1) throw std::invalid_argument("parent array must start with the root (-1)");
  std::vector<int> counts(n, 0);
  // Depth-first order check: each vertex's parent is on the current root path.
  std::vector<int> path{0};
  for (std::size_t v = 1; v < n; ++v) {
    const int p = parents[v];
    while (!path.empty() && path.back() != p) path.pop_back();
    if (path.empty()) throw std::invalid_argument("parent array is not in depth-first order");
    ++counts[static_cast<std::size_t>(p)];
    path.push_back(static_cast<int>(v));
  }
  return PlaneTree(std::move(counts));
}

std::uint64_t catalan(int m) {
  if (m < 0) return 0;
  std::uint64_t c = 1;
  for (int k = 0; k < m; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

void for_each_plane_tree(int n, const std::function<bool(const PlaneTree&)>& visit) {
  if (n < 1 || n > kMaxTreeEnumerationSize) {
    throw std::out_of_range("enumerate_plane_trees supports 1 <= n <= " +
                            std::to_string(kMaxTreeEnumerationSize));
  }
  std::vector<int> counts(n, 0);
  bool keep_going = true;
  // Position k chooses counts[k]; `height` is S_k before the choice.
  std::function<void(int, int)> fill = [&](int k, int height) {
    if (!keep_going) return;
    if (k == n - 1) {
      // The last vertex must close the path: S_n = height + counts - 1 = -1.
      if (height != 0) return;
      counts[k] = 0;
      keep_going = visit(PlaneTree(counts));
      return;
    }
    const int remaining = n - 1 - k;  // vertices after this one
    // S_{k+1} = height + c - 1 must stay >= 0 and be reachable back to 0.
    for (int c = std::max(0, 1 - height); height + c - 1 <= remaining - 1; ++c) {
      counts[k] = c;
      fill(k + 1, height + c - 1);
      if (!keep_going) return;
    }
  };
  if (n == 1) {
    visit(PlaneTree());
    return;
  }
  fill(0, 0);
}

std::vector<PlaneTree> enumerate_plane_trees(int n) {
  std::vector<PlaneTree> out;
  for_each_plane_tree(n, [&](const PlaneTree& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

PlaneTree sample_uniform_plane_tree(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("tree size must be positive");
  const std::size_t len = 2 * static_cast<std::size_t>(n) - 1;
  // +1 up-step, -1 down-step; uniform arrangement by Fisher-Yates.
  std::vector<signed char> word(len, -1);
  std::fill(word.begin(), word.begin() + (n - 1), 1);
  for (std::size_t i = len - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i + 1));
    std::swap(word[i], word[j]);
  }
  // Start right after the first position where the walk reaches its minimum.
  std::int64_t height = 0, lowest = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < len; ++i) {
    height += word[i];
    if (height < lowest) {
      lowest = height;
      start = i + 1;
    }
  }
  std::vector<int> counts;
  counts.reserve(n);
  int run = 0;
  for (std::size_t k = 0; k < len; ++k) {
    if (word[(start + k) % len] > 0) {
      ++run;
    } else {
      counts.push_back(run);
      run = 0;
    }
  }
  return PlaneTree(std::move(counts));
}

PlaneTree sample_uniform_plane_tree(int n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_uniform_plane_tree(n, rng);
}

std::vector<int> vertex_heights(const PlaneTree& t) {
  const auto parent = t.parents();
  std::vector<int> h(parent.size(), 0);
  for (std::size_t v = 1; v < parent.size(); ++v) h[v] = h[static_cast<std::size_t>(parent[v])] + 1;
  return h;
}

int count_non_leaves(const PlaneTree& t) {
  const auto& c = t.children_counts();
  return static_cast<int>(std::count_if(c.begin(), c.end(), [](int x) { return x > 0; }));
}

}  // namespace mfact
