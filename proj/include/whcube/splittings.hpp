#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "whcube/cover.hpp"
#include "whcube/cube_complex.hpp"
#include "whcube/simplicial.hpp"
#include "whcube/whitehead.hpp"
#include "whcube/words.hpp"

namespace whcube {

struct LemmaCertificate {
  bool certified = false;
  std::optional<int> vertex;           // first offending vertex
  std::string reason;                  // "disconnected link" / "cut simplex"
  std::string link_shape;              // e.g. "4-cycle ⊔ point"
  std::optional<Simplex> cut_simplex;  // when the link is connected
};

/// Every vertex link connected with no cut simplex. Throws
/// splittings.not_npc for non-NPC input.
LemmaCertificate whitehead_lemma_certificate(const CubeComplex& x);

/// Short description of a link: its components as "point", "n-cycle",
/// "segment", or "V vertices, E edges", joined by " ⊔ ".
std::string describe_shape(const SimplicialComplex& s);

struct CutReport {
  ConvexSubcomplex y;
  int k = 0;
  std::vector<int> cut_walls;
  int width = 0;
  std::vector<ZeroCohomologyClass> classes;
  WhiteheadComplex wh;
};

/// Candidate convex subcomplexes of a ball: hulls of an anchor and one more
/// vertex, one anchor per base vertex. Only margin >= 2 hulls are kept,
/// ordered by (size, vertex list) without repeats.
std::vector<ConvexSubcomplex> candidate_subcomplexes(const CoverBall& ball);

/// First candidate whose Whitehead complex is empty or disconnected, as a
/// k = 0 report. None means nothing found at this radius.
std::optional<CutReport> search_free_splitting(const CoverBall& ball);
std::optional<CutReport> search_free_splitting(const CubeComplex& x, int radius);

/// One more than the edge distance between the two walls' carriers, so
/// walls on either side of a single vertex have width 1.
int carrier_width(const CoverBall& ball, int wall_a, int wall_b);

/// Minimal cut set of Wh(Y) up to k_max. Throws splittings.not_stabilized
/// when crossings of bounding walls are not all seen from Y.
std::optional<CutReport> classify_cut(const CoverBall& ball, const ConvexSubcomplex& y, int k_max);

struct AbstractHyperplaneComponent {
  ConvexSubcomplex y;
  HyperplaneComponent component;
  SimplicialComplex wh;        // Lk of the wall in Wh(Y), labelled by wall ids
  std::set<int> c_k;           // walls where the pulled back class is 1
};

/// Restricts the class (given by its support) to the link of H in Wh(Y),
/// normalised so the least wall has value 0. Throws
/// splittings.trivial_pullback when the restriction is constant.
AbstractHyperplaneComponent abstract_component(const CoverBall& ball, const ConvexSubcomplex& y, int wall,
                                               const std::set<int>& c_y);

struct DeckWitness {
  Word element;                    // freely reduced loop at the base vertex
  std::map<int, int> vertex_map;   // ball vertex -> ball vertex, near Y
  std::map<int, int> wall_map;     // walls of Lk(H) -> walls of Lk(H')
};

/// A covering transformation taking K to K' with reversed orientations and
/// c_K = phi^* c_K'. The shortlex-least such element, or none.
std::optional<DeckWitness> opposite_type(const AbstractHyperplaneComponent& a,
                                         const AbstractHyperplaneComponent& b, const CoverBall& ball);

struct PeriodicCut {
  CutReport cut;
  std::set<int> c_y;
  AbstractHyperplaneComponent first, second;
  DeckWitness phi;
};

/// Preflight: throws splittings.preflight_zero_cut or
/// splittings.preflight_one_cut when some candidate has a 0- or 1-cut.
/// Then searches 2-cuts of width <= width_max in candidate order. A
/// non-empty `edges` keeps only cut walls dual to lifts of those base edges.
std::optional<PeriodicCut> detect_periodic_2cut(const CoverBall& ball, int width_max,
                                                const std::set<int>& edges = {});
std::optional<PeriodicCut> detect_periodic_2cut(const CubeComplex& x, int radius, int width_max,
                                                const std::set<int>& edges = {});

/// Recomputes the two components from the ball and checks the witness.
bool verify_periodic_2cut(const CoverBall& ball, const PeriodicCut& p);

struct UnfoldStep {
  int vertex = 0;
  int port = 0;                   // cut vertex of the link (edge-end code)
  std::vector<int> new_vertices;
  std::vector<int> new_edges;
};

struct GrushkoReport {
  CubeComplex unfolded;
  CubeComplex graph;              // the graph part
  int graph_rank = 0;
  std::vector<CubeComplex> factors;
  std::vector<CubeComplex> squares;
  std::vector<UnfoldStep> trace;
};

/// Unfolds edges at cut vertices of links until none remain, then splits
/// wedges. Throws splittings.not_square_complex, splittings.not_npc, or
/// splittings.iteration_cap after `cap` steps (default 10 * #squares).
GrushkoReport unfold_grushko(const CubeComplex& x, int cap = -1);

nlohmann::json to_json(const LemmaCertificate& c);
nlohmann::json to_json(const CutReport& r);
nlohmann::json to_json(const PeriodicCut& p);
nlohmann::json to_json(const GrushkoReport& g);

}  // namespace whcube
