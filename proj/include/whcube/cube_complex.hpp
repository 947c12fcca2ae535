#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "whcube/simplicial.hpp"

namespace whcube {

/// Gluing of one codimension-1 face of a cube onto a (k-1)-cube.
/// alignment[j] = +(p+1) means target coordinate j equals face coordinate p;
/// -(p+1) means it equals 1 - (face coordinate p). The face coordinates of
/// face (axis i, side s) are the cube's remaining axes in increasing order.
struct FaceRef {
  int target = 0;
  std::vector<int> alignment;
};

struct Cube {
  int dim = 0;
  int id = 0;
  std::vector<FaceRef> faces;  // faces[2*axis + side]; edges use target only
};

/// Result of following face maps down to a face of a cube: the face cube
/// and, for each of its coordinates, the original axis and whether it is
/// reversed.
struct ResolvedFace {
  int dim = 0;
  int id = 0;
  std::vector<std::pair<int, bool>> axes;
};

/// Edge-ends are encoded as 2*edge + end (end 0 = start, 1 = finish).
inline int edge_end_code(int edge, int end) { return 2 * edge + end; }
inline int edge_of(int code) { return code / 2; }
inline int end_of(int code) { return code % 2; }

class CubeComplex {
 public:
  void add_vertex(int id);
  void add_edge(int id, int from, int to);
  /// Boundary word: bottom, right, top reversed, left reversed, as signed
  /// edge ids.
  void add_square(int id, const std::array<int, 4>& boundary);
  void add_cube(int dim, int id, std::vector<FaceRef> faces);
  void remove_cube(int dim, int id);

  /// Throws whcube::Error on dangling references, bad alignments,
  /// inconsistent face-of-face gluings or non-simplicial links.
  void validate() const;

  int dimension() const;
  bool has_cube(int dim, int id) const;
  const Cube& cube(int dim, int id) const;
  const std::map<int, Cube>& cubes(int dim) const;
  std::vector<int> ids(int dim) const;
  std::size_t count(int dim) const;
  int euler_characteristic() const;

  int edge_vertex(int edge, int end) const;
  std::array<int, 4> square_boundary(int id) const;

  /// assignment[i] in {0, 1} fixes axis i, -1 leaves it free. `order` lists
  /// the preferred order in which fixed axes are peeled off.
  ResolvedFace resolve(int dim, int id, const std::vector<int>& assignment,
                       const std::vector<int>& order = {}) const;
  int corner_vertex(int dim, int id, unsigned corner) const;
  /// Edge-end code of the axis-i edge at the given corner, for each axis.
  std::vector<int> corner_ports(int dim, int id, unsigned corner) const;
  /// Sorted edge-end codes at a vertex.
  std::vector<int> ports(int vertex) const;

  nlohmann::json to_json() const;
  static CubeComplex from_json(const nlohmann::json& j, bool validate = true);

 private:
  std::vector<std::map<int, Cube>> cubes_;
  std::map<int, Cube>& level(int dim);
};

/// Simplicial link of a vertex: vertices are edge-end codes at v, simplices
/// are cube corners at v.
SimplicialComplex vertex_link(const CubeComplex& x, int v);

struct NpcVerdict {
  bool npc = true;
  std::optional<int> vertex;
  std::string reason;
};
NpcVerdict check_npc(const CubeComplex& x);

struct Midcube {
  int dim = 0;
  int id = 0;
  int axis = 0;
  auto operator<=>(const Midcube&) const = default;
};

struct Hyperplane {
  int id = 0;
  std::vector<Midcube> midcubes;
  std::vector<int> parity;  // transverse orientation of each midcube
  bool two_sided = true;
  bool embedded = true;
  std::vector<int> dual_edges() const;
};

/// Hyperplanes ordered by least dual edge id.
std::vector<Hyperplane> hyperplanes(const CubeComplex& x);

struct Attachment {
  int dim = 0;   // dimension of the attaching face
  int id = 0;
  int side = 0;  // which side of the hyperplane
};

struct CutResult {
  std::vector<CubeComplex> components;
  std::vector<Attachment> attachments;
  int hyperplane_euler = 0;
};

/// Components of X minus the open carrier of an embedded two-sided
/// hyperplane, with the faces where the carrier was attached.
CutResult cut_along(const CubeComplex& x, const Hyperplane& h);

struct CollapseStep {
  int face_dim = 0;
  int face_id = 0;
  int cube_id = 0;
};
CubeComplex collapse_free_faces(const CubeComplex& x,
                                std::vector<CollapseStep>* trace = nullptr);

struct Homology1 {
  int rank = 0;
  std::vector<long long> torsion;  // invariant factors > 1
  bool operator==(const Homology1&) const = default;
};
Homology1 homology_h1(const CubeComplex& x);

/// Invariant factors (non-zero diagonal of the Smith normal form).
std::vector<long long> smith_invariants(std::vector<std::vector<long long>> m);

std::vector<CubeComplex> connected_components(const CubeComplex& x);

std::string to_dot(const CubeComplex& x, const std::string& name = "X");

}  // namespace whcube
