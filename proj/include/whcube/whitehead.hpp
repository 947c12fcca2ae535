#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "whcube/cover.hpp"
#include "whcube/simplicial.hpp"

namespace whcube {

/// Vertices are wall ids (each labelled by itself); a set of walls spans a
/// simplex iff they pairwise cross.
struct WhiteheadComplex {
  SimplicialComplex complex;
  std::vector<int> bounding;  // sorted wall ids
  int search_radius = 0;
  int margin = 0;
  /// Crossings seen at corners of Y agree with crossings seen anywhere in
  /// the patch. With margin >= 2 every crossing of two bounding walls has a
  /// square with a corner in Y, so this is a consistency check on the patch.
  bool stabilized = false;
};

/// Walls dual to edges with exactly one endpoint in Y. Throws
/// whitehead.not_convex if such a wall also has an edge inside Y.
std::vector<int> bounding_walls(const CubicalPatch& p, const std::vector<int>& y);
/// Throws whitehead.insufficient_margin when margin(Y) < 2.
WhiteheadComplex whitehead_complex(const CubicalPatch& p, const std::vector<int>& y);

std::vector<int> bounding_walls(const CoverBall& ball, const ConvexSubcomplex& y);
WhiteheadComplex whitehead_complex(const CoverBall& ball, const ConvexSubcomplex& y);

/// The cube structure a wall inherits from the ball: one vertex per dual
/// edge (depth = depth of its deeper end), one (k-1)-cube per dual k-cube.
struct HyperplanePatch {
  int wall = 0;
  CubicalPatch patch;
  std::vector<int> edge;       // patch vertex -> ball edge
  std::map<int, int> index;    // ball edge -> patch vertex
};
HyperplanePatch hyperplane_patch(const CoverBall& ball, int wall);

struct HyperplaneComponent {
  int wall = 0;
  std::vector<int> edges;       // ball edges dual to the wall with an end in Y
  std::vector<int> y_ends;      // the end of each edge lying in Y
  int orientation = 0;          // side of the wall containing Y
};
/// Throws whitehead.not_bounding if the wall does not bound Y.
HyperplaneComponent hyperplane_component(const CoverBall& ball, const ConvexSubcomplex& y, int wall);
/// Patch vertices of the component inside a hyperplane patch.
std::vector<int> component_vertices(const HyperplanePatch& hp, const HyperplaneComponent& k);

struct LinkCheck {
  SimplicialComplex link;          // Lk of the wall in Wh(Y)
  SimplicialComplex component_wh;  // Wh of the component inside the wall
  std::optional<std::map<int, int>> isomorphism;
  bool stabilized = false;
};
/// Needs margin(Y) >= 3 so that the component has margin 2 in the wall.
LinkCheck wh_link_check(const CoverBall& ball, const ConvexSubcomplex& y, int wall);

/// Pieces of Y on the basepoint side of the wall and on the far side.
/// Throws whitehead.not_crossing if the wall has no edge inside Y.
std::pair<ConvexSubcomplex, ConvexSubcomplex> cut_subcomplex(const CoverBall& ball, const ConvexSubcomplex& y,
                                                             int wall);

struct ConnectedSumCheck {
  WhiteheadComplex whole, first, second;
  SimplicialComplex sum;
  bool isomorphic = false;
  std::string failure;
};
/// Wh(Y1) #_H Wh(Y2), gluing the two links of H by the identity on wall
/// ids, compared with Wh(Y) as labelled complexes.
ConnectedSumCheck connected_sum_check(const CoverBall& ball, const ConvexSubcomplex& y, int wall);

/// Components of the ball vertices of depth <= r-1 outside Y (r <= radius).
int complement_b0(const CoverBall& ball, const std::vector<int>& y, int r);

nlohmann::json to_json(const WhiteheadComplex& w);

}  // namespace whcube
