#include "whcube/whitehead.hpp"

#include <algorithm>
#include <set>

#include "whcube/error.hpp"

namespace whcube {

namespace {

std::vector<char> member(int n, const std::vector<int>& vs) {
  std::vector<char> in(n, 0);
  for (int v : vs) {
    if (v < 0 || v >= n) throw Error("whitehead.bad_vertex", "no vertex " + std::to_string(v));
    in[v] = 1;
  }
  return in;
}

}  // namespace

std::vector<int> bounding_walls(const CubicalPatch& p, const std::vector<int>& y) {
  const auto in = member(p.vertex_count(), y);
  std::set<int> leaving, inside;
  for (int v : y)
    for (int e : p.edges_at(v)) {
      const int w = p.of_dim(1)[e].walls[0];
      (in[p.other_end(e, v)] ? inside : leaving).insert(w);
    }
  for (int w : leaving)
    if (inside.count(w))
      throw Error("whitehead.not_convex", "wall " + std::to_string(w) + " both crosses and leaves Y");
  return {leaving.begin(), leaving.end()};
}

WhiteheadComplex whitehead_complex(const CubicalPatch& p, const std::vector<int>& y) {
  if (y.empty()) throw Error("whitehead.empty", "Y is empty");
  WhiteheadComplex out;
  out.margin = p.margin(y);
  out.search_radius = p.radius;
  if (out.margin < 2)
    throw Error("whitehead.insufficient_margin",
                "Y needs margin 2 in a patch of radius " + std::to_string(p.radius) + ", has " +
                    std::to_string(out.margin));
  out.bounding = bounding_walls(p, y);
  std::vector<char> bounding(p.wall_count(), 0);
  for (int w : out.bounding) bounding[w] = 1;

  const auto in = member(p.vertex_count(), y);
  std::set<std::pair<int, int>> at_corners, anywhere;
  for (int v : y)
    for (int sq : p.squares_at(v)) {
      const auto& w = p.of_dim(2)[sq].walls;
      if (bounding[w[0]] && bounding[w[1]]) at_corners.insert(std::minmax(w[0], w[1]));
    }
  for (int w : out.bounding)
    for (int sq : p.squares_of_wall(w)) {
      const auto& ws = p.of_dim(2)[sq].walls;
      if (bounding[ws[0]] && bounding[ws[1]]) anywhere.insert(std::minmax(ws[0], ws[1]));
    }
  out.stabilized = at_corners == anywhere;
  out.complex = flag_complete(out.bounding, {at_corners.begin(), at_corners.end()});
  for (int w : out.bounding) out.complex.set_label(w, w);
  return out;
}

std::vector<int> bounding_walls(const CoverBall& ball, const ConvexSubcomplex& y) {
  return bounding_walls(ball.patch(), y.vertices);
}

WhiteheadComplex whitehead_complex(const CoverBall& ball, const ConvexSubcomplex& y) {
  return whitehead_complex(ball.patch(), y.vertices);
}

HyperplanePatch hyperplane_patch(const CoverBall& ball, int wall) {
  HyperplanePatch hp;
  hp.wall = wall;
  const auto& p = ball.patch();
  if (wall < 0 || wall >= p.wall_count()) throw Error("whitehead.bad_wall", "no wall " + std::to_string(wall));
  for (int e : p.edges_of_wall(wall)) {
    hp.index[e] = static_cast<int>(hp.edge.size());
    hp.edge.push_back(e);
    const auto& c = p.of_dim(1)[e].corners;
    hp.patch.depth.push_back(std::max(p.depth[c[0]], p.depth[c[1]]));
  }
  hp.patch.radius = p.radius;
  hp.patch.complete = p.complete;
  hp.patch.cubes.assign(std::max<std::size_t>(p.cubes.size() - 1, 1), {});

  // ball edge between two corners of a cube
  auto edge_between = [&](int a, int b) {
    for (int e : p.edges_at(a))
      if (p.other_end(e, a) == b) return e;
    throw Error("whitehead.internal", "missing cube edge");
  };
  for (int k = 2; k < static_cast<int>(p.cubes.size()); ++k) {
    for (const auto& c : p.cubes[k]) {
      const auto axis_it = std::find(c.walls.begin(), c.walls.end(), wall);
      if (axis_it == c.walls.end()) continue;
      const int axis = static_cast<int>(axis_it - c.walls.begin());
      PatchCube pc;
      for (int i = 0; i < k; ++i)
        if (i != axis) pc.walls.push_back(c.walls[i]);
      for (unsigned m = 0; m < (1u << (k - 1)); ++m) {
        // insert a 0 bit at position `axis`
        const unsigned low = m & ((1u << axis) - 1);
        const unsigned full = low | ((m >> axis) << (axis + 1));
        const int e = edge_between(c.corners[full], c.corners[full | (1u << axis)]);
        pc.corners.push_back(hp.index.at(e));
      }
      hp.patch.cubes[k - 1].push_back(std::move(pc));
    }
  }
  hp.patch.finalize();
  return hp;
}

HyperplaneComponent hyperplane_component(const CoverBall& ball, const ConvexSubcomplex& y, int wall) {
  const auto& p = ball.patch();
  const auto in = member(p.vertex_count(), y.vertices);
  HyperplaneComponent k;
  k.wall = wall;
  bool crosses = false;
  for (int v : y.vertices)
    for (int e : p.edges_at(v)) {
      if (p.of_dim(1)[e].walls[0] != wall) continue;
      if (in[p.other_end(e, v)]) {
        crosses = true;
      } else {
        k.edges.push_back(e);
        k.y_ends.push_back(v);
      }
    }
  if (crosses || k.edges.empty())
    throw Error("whitehead.not_bounding", "wall " + std::to_string(wall) + " does not bound Y");
  k.orientation = ball.side(y.vertices.front(), wall);
  return k;
}

std::vector<int> component_vertices(const HyperplanePatch& hp, const HyperplaneComponent& k) {
  std::vector<int> out;
  for (int e : k.edges) out.push_back(hp.index.at(e));
  std::sort(out.begin(), out.end());
  return out;
}

LinkCheck wh_link_check(const CoverBall& ball, const ConvexSubcomplex& y, int wall) {
  LinkCheck out;
  const auto wh = whitehead_complex(ball, y);
  if (!std::binary_search(wh.bounding.begin(), wh.bounding.end(), wall))
    throw Error("whitehead.not_bounding", "wall " + std::to_string(wall) + " does not bound Y");
  out.link = wh.complex.link(wall);
  const auto hp = hyperplane_patch(ball, wall);
  const auto k = hyperplane_component(ball, y, wall);
  const auto whk = whitehead_complex(hp.patch, component_vertices(hp, k));
  out.component_wh = whk.complex;
  out.stabilized = wh.stabilized && whk.stabilized;
  out.isomorphism = isomorphism(out.link, out.component_wh, true);
  return out;
}

std::pair<ConvexSubcomplex, ConvexSubcomplex> cut_subcomplex(const CoverBall& ball, const ConvexSubcomplex& y,
                                                             int wall) {
  const auto& p = ball.patch();
  const auto in = member(p.vertex_count(), y.vertices);
  bool crosses = false;
  for (int v : y.vertices)
    for (int e : p.edges_at(v))
      if (p.of_dim(1)[e].walls[0] == wall && in[p.other_end(e, v)]) crosses = true;
  if (!crosses) throw Error("whitehead.not_crossing", "wall " + std::to_string(wall) + " does not cross Y");
  ConvexSubcomplex a, b;
  for (int v : y.vertices) (ball.side(v, wall) == 0 ? a : b).vertices.push_back(v);
  a.margin = ball.margin(a.vertices);
  b.margin = ball.margin(b.vertices);
  return {a, b};
}

ConnectedSumCheck connected_sum_check(const CoverBall& ball, const ConvexSubcomplex& y, int wall) {
  ConnectedSumCheck out;
  auto [y1, y2] = cut_subcomplex(ball, y, wall);
  out.whole = whitehead_complex(ball, y);
  out.first = whitehead_complex(ball, y1);
  out.second = whitehead_complex(ball, y2);
  std::map<int, int> phi;
  for (int v : out.first.complex.link(wall).vertices()) phi[v] = v;
  try {
    out.sum = connected_sum(out.first.complex, wall, out.second.complex, wall, phi).complex;
  } catch (const Error& e) {
    out.failure = e.what();
    return out;
  }
  out.isomorphic = isomorphism(out.sum, out.whole.complex, true).has_value();
  if (!out.isomorphic) out.failure = "connected sum is not isomorphic to Wh(Y)";
  return out;
}

int complement_b0(const CoverBall& ball, const std::vector<int>& y, int r) {
  const auto& p = ball.patch();
  const auto in = member(p.vertex_count(), y);
  auto keep = [&](int v) { return !in[v] && p.depth[v] <= r - 1; };
  std::vector<char> seen(p.vertex_count(), 0);
  int count = 0;
  for (int s = 0; s < p.vertex_count(); ++s) {
    if (!keep(s) || seen[s]) continue;
    ++count;
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      for (int e : p.edges_at(a)) {
        const int b = p.other_end(e, a);
        if (keep(b) && !seen[b]) {
          seen[b] = 1;
          stack.push_back(b);
        }
      }
    }
  }
  return count;
}

nlohmann::json to_json(const WhiteheadComplex& w) {
  nlohmann::json j = to_json(w.complex);
  j["bounding_walls"] = w.bounding;
  j["search_radius"] = w.search_radius;
  j["margin"] = w.margin >= CubicalPatch::kUnbounded ? nlohmann::json("unbounded") : nlohmann::json(w.margin);
  j["stabilized"] = w.stabilized;
  return j;
}

}  // namespace whcube
