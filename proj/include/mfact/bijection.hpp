#pragma once

#include <cstdint>
#include <vector>

#include "mfact/perm.hpp"
#include "mfact/tree.hpp"

namespace mfact {

// Plane tree with partial vertex labels (1..n) and partial edge labels
// (1..n-1). Both arrays are indexed by lexicographic vertex index; an edge is
// identified by its child endpoint, so edge_labels[0] is always 0. Label 0
// means "unlabeled".
struct LabeledTree {
  PlaneTree shape;
  std::vector<int> vertex_labels;
  std::vector<int> edge_labels;

  LabeledTree() = default;
  explicit LabeledTree(PlaneTree t);
  LabeledTree(PlaneTree t, std::vector<int> vertex_labels, std::vector<int> edge_labels);

  int size() const { return shape.size(); }
  bool fully_labeled() const;
  // Labels in range and injective, and edge labels increase left to right
  // among siblings where both are present.
  bool labels_consistent() const;
  LabeledTree without_vertex_labels() const;

  friend bool operator==(const LabeledTree&, const LabeledTree&) = default;
};

// Tree whose edge k joins vertices a_k and b_k, rooted at vertex 1, with each
// vertex's children ordered by edge label. Throws if the transpositions do not
// form a tree on {1..n}.
LabeledTree t1_forward(const Factorisation& f);

// Vertex index reached by the Next exploration from the vertex labeled k
// (the root when k = 0). Requires full edge labels and vertex labels 1..k.
int next_vertex(const LabeledTree& t, int k);

// Recovers the vertex labels by iterating Next, then reads tau_k off edge k.
// Vertex labels present on the input are ignored. Throws if the edge labels
// are not a compatible labeling by 1..n-1.
Factorisation factorisation_from_edge_labels(const LabeledTree& t);

// Same, also reporting the total number of edge moves performed by Next.
Factorisation factorisation_from_edge_labels(const LabeledTree& t, std::uint64_t& edge_moves);

// Reads tau_k = (min, max) of the vertex labels at the ends of edge k.
Factorisation factorisation_from_labels(const LabeledTree& t);

// Vertex v_i gets label i; the children edges of v_i get, left to right, the
// largest labels not yet used by earlier vertices.
LabeledTree decreasing_labels(const PlaneTree& t);
Factorisation decreasing_factorisation_of_tree(const PlaneTree& t);
// Throws unless f is a decreasing minimal factorisation.
PlaneTree tree_of_decreasing_factorisation(const Factorisation& f);

// Vertex types used by the increasing labeling: type 1 is a leaf or a vertex
// at even height, type 2 everything else.
std::vector<int> vertex_types(const PlaneTree& t);

// Runs the increasing labeling. `max_stage` stops after that many stages
// (stage 1 labels the root and its edges); the default runs to completion.
LabeledTree increasing_labels(const PlaneTree& t, int max_stage = -1);
Factorisation increasing_factorisation_of_tree(const PlaneTree& t);
// Throws unless f is an increasing minimal factorisation.
PlaneTree tree_of_increasing_factorisation(const Factorisation& f);

}  // namespace mfact
