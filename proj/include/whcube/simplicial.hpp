#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace whcube {

using Simplex = std::vector<int>;  // sorted, no repeats

/// Finite abstract simplicial complex. Vertex ids are opaque integers; each
/// vertex may carry an integer label (for Whitehead complexes the label is
/// the wall id). Simplices are kept downward closed.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Adds a simplex together with all of its faces.
  void add_simplex(Simplex s);
  void add_vertex(int v) { add_simplex({v}); }
  void set_label(int v, int label) { labels_[v] = label; }

  std::optional<int> label(int v) const;
  const std::map<int, int>& labels() const { return labels_; }

  bool has_vertex(int v) const { return simplices_.count({v}) > 0; }
  bool has_simplex(const Simplex& s) const { return simplices_.count(s) > 0; }
  bool adjacent(int u, int v) const;
  bool empty() const { return simplices_.empty(); }

  std::vector<int> vertices() const;
  std::vector<std::pair<int, int>> edges() const;
  /// Simplices in canonical order: by dimension, then lexicographically.
  std::vector<Simplex> simplices() const;
  const std::set<Simplex>& simplex_set() const { return simplices_; }
  std::vector<int> neighbours(int v) const;
  int dimension() const;
  std::size_t size() const { return simplices_.size(); }

  /// Full subcomplex spanned by a vertex set (labels carried along).
  SimplicialComplex induced(const std::set<int>& vs) const;
  /// Link of a single vertex.
  SimplicialComplex link(int v) const;

  bool operator==(const SimplicialComplex& o) const {
    return simplices_ == o.simplices_ && labels_ == o.labels_;
  }

 private:
  std::set<Simplex> simplices_;
  std::map<int, int> labels_;
};

/// Representative of a non-zero class in reduced H^0(S; Z/2): a proper,
/// non-empty union of connected components, stored as its vertex support.
struct ZeroCohomologyClass {
  std::vector<int> components;  // indices into components(S)
  std::set<int> support;        // vertices where the cocycle is 1

  bool value(int v) const { return support.count(v) > 0; }
};

struct CutWitness {
  int k = 0;
  std::vector<int> vertices;
};

/// Partition of the vertex set by 1-skeleton connectivity. Components are
/// ordered by least vertex id, each sorted.
std::vector<std::vector<int>> components(const SimplicialComplex& s);
int betti0(const SimplicialComplex& s);

/// A minus the open star of the full subcomplex spanned by `b`: exactly the
/// simplices disjoint from b.
SimplicialComplex remove_open_star(const SimplicialComplex& s,
                                   const std::set<int>& b);
/// Same, with B given as a subcomplex; throws simplicial.not_full if B is not
/// a full subcomplex of S.
SimplicialComplex remove_open_star(const SimplicialComplex& s,
                                   const SimplicialComplex& b);

/// True iff removing the open star of the pairwise non-adjacent set `vs`
/// leaves at least two components. Throws simplicial.adjacent on adjacency.
bool is_cut_set(const SimplicialComplex& s, const std::set<int>& vs);

/// Least k <= k_max admitting a cut set of size k, with the
/// lexicographically least witness. Throws simplicial.disconnected.
std::optional<CutWitness> min_cut_cardinality(const SimplicialComplex& s,
                                              int k_max);

/// All cut pairs (non-adjacent vertex pairs whose removal disconnects), in
/// lexicographic order.
std::vector<std::pair<int, int>> cut_pairs(const SimplicialComplex& s);

/// Least simplex (canonical order) whose open-star removal disconnects S.
std::optional<Simplex> find_cut_simplex(const SimplicialComplex& s);

struct ConnectedSum {
  SimplicialComplex complex;
  std::map<int, int> b_vertex_map;  // B vertex id -> id in the sum
};

/// A_a glued to B_b along phi : Lk_A(a) -> Lk_B(b). A's vertex ids are kept;
/// B vertices outside the link get fresh ids above A's maximum, in B-id
/// order. Throws simplicial.bad_link_map if phi is not an isomorphism.
ConnectedSum connected_sum(const SimplicialComplex& a, int a_vertex,
                           const SimplicialComplex& b, int b_vertex,
                           const std::map<int, int>& phi);

bool is_flag(const SimplicialComplex& s);
/// Clique complex of a simple graph.
SimplicialComplex flag_complete(const std::vector<int>& vertices,
                                const std::vector<std::pair<int, int>>& edges);
SimplicialComplex flag_complete(const SimplicialComplex& one_skeleton_of);

std::vector<ZeroCohomologyClass> reduced_h0_classes(const SimplicialComplex& s);

/// Simplicial isomorphism A -> B as a vertex map, or none. With
/// respect_labels, labels must match (unlabelled vertices match unlabelled).
std::optional<std::map<int, int>> isomorphism(const SimplicialComplex& a,
                                              const SimplicialComplex& b,
                                              bool respect_labels);

/// Image of a complex under a vertex relabelling.
SimplicialComplex relabel(const SimplicialComplex& s,
                          const std::map<int, int>& m);

std::string to_dot(const SimplicialComplex& s, const std::string& name = "S");
nlohmann::json to_json(const SimplicialComplex& s);
SimplicialComplex simplicial_from_json(const nlohmann::json& j);

}  // namespace whcube
