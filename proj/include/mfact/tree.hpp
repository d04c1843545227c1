#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mfact/rng.hpp"

namespace mfact {

// Rooted plane tree in canonical form: the number of children of each vertex,
// vertices listed in lexicographic (depth-first) order. Vertex 0 is the root.
class PlaneTree {
public:
  // Single-vertex tree.
  PlaneTree() : counts_{0} {}
  // Throws std::invalid_argument unless the counts form a Lukasiewicz word.
  explicit PlaneTree(std::vector<int> children_counts);

  int size() const { return static_cast<int>(counts_.size()); }
  const std::vector<int>& children_counts() const { return counts_; }
  int children(int v) const { return counts_[static_cast<std::size_t>(v)]; }

  // parent[v] for v >= 1; parent[0] = -1.
  std::vector<int> parents() const;
  // children_of[v] lists the children of v left to right.
  std::vector<std::vector<int>> children_lists() const;
  std::vector<int> subtree_sizes() const;

  friend bool operator==(const PlaneTree&, const PlaneTree&) = default;
  friend auto operator<=>(const PlaneTree&, const PlaneTree&) = default;

private:
  std::vector<int> counts_;
};

// S_0..S_n with S_k = (children of the first k vertices) - k.
struct LukaPath {
  std::vector<std::int64_t> values;

  int steps() const { return static_cast<int>(values.size()) - 1; }
  std::int64_t operator[](std::size_t k) const { return values[k]; }
};

LukaPath lukasiewicz_path(const PlaneTree& t);
// Inverse of lukasiewicz_path; throws if the values are not a valid path.
PlaneTree tree_from_path(const LukaPath& path);

// Inverse of parents(): rebuilds the tree from a parent array in which every
// parent precedes its children and siblings appear in plane order.
PlaneTree tree_from_parents(std::span<const int> parents);

constexpr int kMaxTreeEnumerationSize = 12;

std::uint64_t catalan(int m);

// All plane trees with n vertices (1 <= n <= 12) in lexicographic order of
// their children counts.
std::vector<PlaneTree> enumerate_plane_trees(int n);
// Streaming form of the above; stops early if `visit` returns false.
void for_each_plane_tree(int n, const std::function<bool(const PlaneTree&)>& visit);

// Uniform over plane trees with n vertices. Draws a uniform arrangement of
// n-1 up-steps and n down-steps and rotates it to its unique rotation that
// stays non-negative until the final step (cycle lemma).
PlaneTree sample_uniform_plane_tree(int n, Rng& rng);
PlaneTree sample_uniform_plane_tree(int n, std::uint64_t seed);

std::vector<int> vertex_heights(const PlaneTree& t);
int count_non_leaves(const PlaneTree& t);

}  // namespace mfact
