#pragma once

#include <limits>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include <nlohmann/json.hpp>

#include "whcube/cube_complex.hpp"
#include "whcube/words.hpp"

namespace whcube {

/// A finite piece of a CAT(0) cube complex: vertices with a depth (distance
/// from some basepoint) and cubes given by their corners and the wall dual to
/// each axis. Used both for balls in universal covers and for the induced
/// cube structure on a single hyperplane.
struct PatchCube {
  std::vector<int> corners;  // corners[mask], bit i = far side along axis i
  std::vector<int> walls;    // walls[i] = wall dual to axis i
};

class CubicalPatch {
 public:
  static constexpr int kUnbounded = std::numeric_limits<int>::max() / 4;

  int radius = 0;
  bool complete = false;  // the whole (finite) space is present
  std::vector<int> depth;
  std::vector<std::vector<PatchCube>> cubes;  // cubes[k], k >= 1; cubes[0] unused

  int vertex_count() const { return static_cast<int>(depth.size()); }
  int wall_count() const { return walls_; }
  const std::vector<PatchCube>& of_dim(int k) const;

  /// R - (max depth over vs), or kUnbounded for a complete patch.
  int margin(const std::vector<int>& vs) const;

  /// Edge / square indices touching a vertex, and squares dual to a wall.
  const std::vector<int>& edges_at(int v) const { return edges_at_[v]; }
  const std::vector<int>& squares_at(int v) const { return squares_at_[v]; }
  const std::vector<int>& squares_of_wall(int w) const { return squares_of_wall_[w]; }
  const std::vector<int>& edges_of_wall(int w) const { return edges_of_wall_[w]; }
  int other_end(int edge, int v) const;

  /// Builds the incidence indices; call after filling depth and cubes.
  void finalize();

 private:
  int walls_ = 0;
  std::vector<std::vector<int>> edges_at_, squares_at_, squares_of_wall_, edges_of_wall_;
};

struct BallVertex {
  int base = 0;
  int depth = 0;
  int parent = -1;        // neighbour one step closer giving the normal form
  Word normal_form;       // shortlex-least geodesic edge path from the basepoint
  std::vector<int> sep;   // sorted walls separating it from the basepoint
};

struct BallCube {
  int base_id = 0;  // cube of the base complex it covers
  std::vector<int> corners;
  std::vector<int> walls;
};

/// Ball of radius R about a lift of a base vertex in the universal cover.
/// Vertex ids are assigned in order of (depth, normal form), so the ball of
/// radius R' < R is an id-prefix of the ball of radius R, and wall ids agree.
class CoverBall {
 public:
  const CubeComplex& base() const { return base_; }
  int base_vertex() const { return base_vertex_; }
  int radius() const { return patch_.radius; }
  bool complete() const { return patch_.complete; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  const BallVertex& vertex(int v) const { return vertices_[v]; }
  const std::vector<BallCube>& cubes(int dim) const;
  int dimension() const { return static_cast<int>(cubes_.size()) - 1; }
  int wall_count() const { return patch_.wall_count(); }
  const CubicalPatch& patch() const { return patch_; }

  /// Neighbour across a port (edge-end code of the base vertex), if present.
  std::optional<int> neighbour(int v, int port) const;
  /// Ball edge index across a port, if present.
  std::optional<int> edge_at(int v, int port) const;
  /// Ports of v's base vertex, in the order used by neighbour tables.
  const std::vector<int>& ports_of(int v) const;
  int edge_wall(int e) const { return cubes_[1][e].walls[0]; }

  bool interior(int v) const { return complete() || vertex(v).depth < radius(); }
  /// 0 on the basepoint's side of the wall, 1 on the other.
  int side(int v, int wall) const;
  int margin(const std::vector<int>& vs) const { return patch_.margin(vs); }
  /// Endpoint of the edge path (signed base edge ids) starting at a ball
  /// vertex, if the path stays inside the ball.
  std::optional<int> walk(int from, const Word& path) const;

  nlohmann::json to_json() const;

 private:
  friend CoverBall develop_ball(const CubeComplex&, int, int);
  CubeComplex base_;
  int base_vertex_ = 0;
  std::vector<BallVertex> vertices_;
  std::vector<std::vector<int>> nbr_, edge_;      // aligned with ports_of
  std::vector<std::vector<BallCube>> cubes_;      // cubes_[k], k >= 1
  std::map<int, std::vector<int>> ports_;         // base vertex -> sorted ports
  CubicalPatch patch_;
};

/// Throws cover.not_npc for non-NPC input, cover.bad_vertex for a missing
/// vertex, cover.bad_radius for R < 0.
CoverBall develop_ball(const CubeComplex& x, int v, int radius);

int l1_distance(const CoverBall& ball, int u, int v);
std::vector<int> separating_walls(const CoverBall& ball, int u, int v);

struct ConvexSubcomplex {
  std::vector<int> vertices;  // sorted ball vertex ids
  int margin = 0;
};

/// Smallest convex subcomplex containing S. Throws cover.boundary_touched
/// when the hull reaches the boundary shell, cover.boundary_vertex when S
/// itself does.
ConvexSubcomplex convex_hull(const CoverBall& ball, const std::vector<int>& s);
/// Same, for the vertex set of a list of ball cubes (dim, index).
ConvexSubcomplex convex_hull_of_cubes(const CoverBall& ball,
                                      const std::vector<std::pair<int, int>>& cubes);

/// Connected and every square at a vertex of Y spanned by two Y-edges has
/// all its corners in Y (links of Y are full in the ambient links).
bool is_convex(const CoverBall& ball, const std::vector<int>& vertices);
/// For an explicit cube list: additionally the list must be full, i.e. any
/// ball cube whose corners all lie in the list's vertices is listed.
bool is_convex_cubes(const CoverBall& ball, const std::vector<std::pair<int, int>>& cubes);

/// Full subcomplex on a vertex set, as (dim, ball cube index) pairs.
std::vector<std::pair<int, int>> cubes_spanned(const CoverBall& ball, const std::vector<int>& vertices);

}  // namespace whcube
