#include "whcube/cover.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "whcube/error.hpp"

namespace whcube {

namespace {

// plain union-find over 0..n-1, roots are the least member
struct IndexDsu {
  std::vector<int> p;
  explicit IndexDsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int v) {
    while (p[v] != v) v = p[v] = p[p[v]];
    return v;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    p[b] = a;
  }
};

int reverse_port(int port) { return edge_end_code(edge_of(port), 1 - end_of(port)); }
int letter_of(int port) { return end_of(port) == 0 ? edge_of(port) : -edge_of(port); }
int port_of_letter(int letter) { return letter > 0 ? edge_end_code(letter, 0) : edge_end_code(-letter, 1); }

// ports at every corner of a base cube, and the base vertex there
struct BaseCube {
  int dim = 0;
  int id = 0;
  std::vector<std::vector<int>> ports;
  std::vector<int> vertex;
};

std::vector<BaseCube> base_cubes(const CubeComplex& x, int dim) {
  std::vector<BaseCube> out;
  for (int id : x.ids(dim)) {
    BaseCube c;
    c.dim = dim;
    c.id = id;
    for (unsigned m = 0; m < (1u << dim); ++m) {
      c.ports.push_back(x.corner_ports(dim, id, m));
      c.vertex.push_back(x.corner_vertex(dim, id, m));
    }
    out.push_back(std::move(c));
  }
  return out;
}

int port_index(const std::vector<int>& ports, int port) {
  auto it = std::lower_bound(ports.begin(), ports.end(), port);
  if (it == ports.end() || *it != port) return -1;
  return static_cast<int>(it - ports.begin());
}

std::vector<char> membership(int n, const std::vector<int>& vs) {
  std::vector<char> in(n, 0);
  for (int v : vs) {
    if (v < 0 || v >= n) throw Error("cover.bad_vertex", "no ball vertex " + std::to_string(v));
    in[v] = 1;
  }
  return in;
}

}  // namespace

const std::vector<PatchCube>& CubicalPatch::of_dim(int k) const {
  static const std::vector<PatchCube> none;
  if (k < 1 || k >= static_cast<int>(cubes.size())) return none;
  return cubes[k];
}

int CubicalPatch::margin(const std::vector<int>& vs) const {
  if (complete) return kUnbounded;
  int m = 0;
  for (int v : vs) m = std::max(m, depth.at(v));
  return radius - m;
}

int CubicalPatch::other_end(int edge, int v) const {
  const auto& c = cubes[1][edge].corners;
  return c[0] == v ? c[1] : c[0];
}

void CubicalPatch::finalize() {
  walls_ = 0;
  for (const auto& level : cubes)
    for (const auto& c : level)
      for (int w : c.walls) walls_ = std::max(walls_, w + 1);
  const int n = vertex_count();
  edges_at_.assign(n, {});
  squares_at_.assign(n, {});
  edges_of_wall_.assign(walls_, {});
  squares_of_wall_.assign(walls_, {});
  const auto& es = of_dim(1);
  for (int i = 0; i < static_cast<int>(es.size()); ++i) {
    edges_at_[es[i].corners[0]].push_back(i);
    edges_at_[es[i].corners[1]].push_back(i);
    edges_of_wall_[es[i].walls[0]].push_back(i);
  }
  const auto& sq = of_dim(2);
  for (int i = 0; i < static_cast<int>(sq.size()); ++i) {
    for (int v : sq[i].corners) squares_at_[v].push_back(i);
    for (int w : sq[i].walls) squares_of_wall_[w].push_back(i);
  }
}

const std::vector<BallCube>& CoverBall::cubes(int dim) const {
  static const std::vector<BallCube> none;
  if (dim < 1 || dim >= static_cast<int>(cubes_.size())) return none;
  return cubes_[dim];
}

const std::vector<int>& CoverBall::ports_of(int v) const { return ports_.at(vertices_[v].base); }

std::optional<int> CoverBall::neighbour(int v, int port) const {
  const int i = port_index(ports_of(v), port);
  if (i < 0 || nbr_[v][i] < 0) return std::nullopt;
  return nbr_[v][i];
}

std::optional<int> CoverBall::edge_at(int v, int port) const {
  const int i = port_index(ports_of(v), port);
  if (i < 0 || edge_[v][i] < 0) return std::nullopt;
  return edge_[v][i];
}

int CoverBall::side(int v, int wall) const {
  const auto& s = vertices_[v].sep;
  return std::binary_search(s.begin(), s.end(), wall) ? 1 : 0;
}

std::optional<int> CoverBall::walk(int from, const Word& path) const {
  int cur = from;
  for (int l : path) {
    auto next = neighbour(cur, port_of_letter(l));
    if (!next) return std::nullopt;
    cur = *next;
  }
  return cur;
}

nlohmann::json CoverBall::to_json() const {
  nlohmann::json j;
  j["radius"] = radius();
  j["base_vertex"] = base_vertex_;
  j["complete"] = complete();
  j["vertices"] = nlohmann::json::array();
  for (int v = 0; v < vertex_count(); ++v) {
    const auto& bv = vertices_[v];
    j["vertices"].push_back({{"id", v},
                             {"base", bv.base},
                             {"depth", bv.depth},
                             {"normal_form", bv.normal_form},
                             {"walls", bv.sep}});
  }
  j["cubes"] = nlohmann::json::object();
  for (int k = 1; k <= dimension(); ++k) {
    auto arr = nlohmann::json::array();
    for (const auto& c : cubes_[k])
      arr.push_back({{"base", c.base_id}, {"corners", c.corners}, {"walls", c.walls}});
    j["cubes"][std::to_string(k)] = arr;
  }
  j["wall_count"] = wall_count();
  return j;
}

CoverBall develop_ball(const CubeComplex& x, int v, int radius) {
  if (!x.has_cube(0, v)) throw Error("cover.bad_vertex", "no vertex " + std::to_string(v));
  if (radius < 0) throw Error("cover.bad_radius", "radius must be non-negative");
  const auto npc = check_npc(x);
  if (!npc.npc) throw Error("cover.not_npc", "not non-positively curved: " + npc.reason);

  CoverBall ball;
  ball.base_ = x;
  ball.base_vertex_ = v;
  for (int u : x.ids(0)) ball.ports_[u] = x.ports(u);

  std::vector<std::vector<BaseCube>> bcubes(x.dimension() + 1);
  for (int k = 1; k <= x.dimension(); ++k) bcubes[k] = base_cubes(x, k);
  // square corners by base vertex
  std::map<int, std::vector<std::pair<const BaseCube*, int>>> corners_at;
  if (x.dimension() >= 2)
    for (const auto& c : bcubes[2])
      for (int m = 0; m < 4; ++m) corners_at[c.vertex[m]].push_back({&c, m});

  auto& verts = ball.vertices_;
  auto& nbr = ball.nbr_;
  std::vector<int> parent_port;
  auto add_vertex = [&](int base, int depth) {
    BallVertex bv;
    bv.base = base;
    bv.depth = depth;
    verts.push_back(std::move(bv));
    nbr.emplace_back(ball.ports_.at(base).size(), -1);
    parent_port.push_back(-1);
    return static_cast<int>(verts.size()) - 1;
  };
  auto nb = [&](int u, int port) {
    const int i = port_index(ball.ports_.at(verts[u].base), port);
    return i < 0 ? -1 : nbr[u][i];
  };
  auto set_nb = [&](int u, int port, int w) {
    const int i = port_index(ball.ports_.at(verts[u].base), port);
    if (nbr[u][i] >= 0 && nbr[u][i] != w)
      throw Error("cover.not_npc", "development is not a cover (port used twice)");
    nbr[u][i] = w;
  };

  add_vertex(v, 0);
  std::vector<int> layer{0};
  for (int d = 0; d < radius && !layer.empty(); ++d) {
    // candidates: open ports of the current layer, each leading one step out
    std::vector<std::pair<int, int>> cand;
    std::map<std::pair<int, int>, int> cand_index;
    for (int u : layer) {
      const auto& ps = ball.ports_.at(verts[u].base);
      for (std::size_t i = 0; i < ps.size(); ++i)
        if (nbr[u][i] < 0) {
          cand_index[{u, ps[i]}] = static_cast<int>(cand.size());
          cand.push_back({u, ps[i]});
        }
    }
    IndexDsu dsu(static_cast<int>(cand.size()));
    if (d >= 1) {
      for (int u : layer) {
        auto it = corners_at.find(verts[u].base);
        if (it == corners_at.end()) continue;
        for (auto [sq, c] : it->second) {
          for (int a = 0; a < 2; ++a) {
            const int b = 1 - a;
            const int q = sq->ports[c][a], p = sq->ports[c][b];
            const int w = nb(u, q);
            if (w < 0 || verts[w].depth != d - 1 || nb(u, p) >= 0) continue;
            const int cw = c ^ (1 << a);
            const int u2 = nb(w, sq->ports[cw][b]);
            if (u2 < 0 || verts[u2].depth != d)
              throw Error("cover.not_npc", "square corner does not close up during development");
            const int p2 = sq->ports[cw ^ (1 << b)][a];
            auto j = cand_index.find({u2, p2});
            if (j == cand_index.end())
              throw Error("cover.not_npc", "square corner does not close up during development");
            dsu.unite(cand_index.at({u, p}), j->second);
          }
        }
      }
    }
    // one new vertex per class; normal form = least extension of a parent's
    std::map<int, std::vector<int>> classes;
    for (int i = 0; i < static_cast<int>(cand.size()); ++i) classes[dsu.find(i)].push_back(i);
    struct Fresh {
      Word nf;
      int base;
      int parent;
      int port;
      std::vector<int> members;
    };
    std::vector<Fresh> fresh;
    for (auto& [root, members] : classes) {
      Fresh f;
      f.members = members;
      for (int i : members) {
        auto [u, p] = cand[i];
        Word nf = verts[u].normal_form;
        nf.push_back(letter_of(p));
        if (f.nf.empty() || nf < f.nf) {
          f.nf = nf;
          f.parent = u;
          f.port = p;
        }
      }
      f.base = x.edge_vertex(edge_of(f.port), 1 - end_of(f.port));
      fresh.push_back(std::move(f));
    }
    std::sort(fresh.begin(), fresh.end(), [](const Fresh& a, const Fresh& b) { return a.nf < b.nf; });
    std::vector<int> next;
    for (auto& f : fresh) {
      const int id = add_vertex(f.base, d + 1);
      verts[id].normal_form = f.nf;
      verts[id].parent = f.parent;
      parent_port[id] = f.port;
      for (int i : f.members) {
        auto [u, p] = cand[i];
        set_nb(u, p, id);
        set_nb(id, reverse_port(p), u);
      }
      next.push_back(id);
    }
    layer = std::move(next);
  }

  const int n = static_cast<int>(verts.size());
  bool complete = true;
  for (int u = 0; u < n && complete; ++u)
    for (int w : nbr[u])
      if (w < 0) {
        complete = false;
        break;
      }

  // lifted cubes, keyed by the lift of corner 0
  ball.cubes_.assign(x.dimension() + 1, {});
  for (int k = 1; k <= x.dimension(); ++k) {
    std::map<int, std::vector<const BaseCube*>> by_corner0;
    for (const auto& c : bcubes[k]) by_corner0[c.vertex[0]].push_back(&c);
    auto& out = ball.cubes_[k];
    for (int u = 0; u < n; ++u) {
      auto it = by_corner0.find(verts[u].base);
      if (it == by_corner0.end()) continue;
      for (const BaseCube* c : it->second) {
        BallCube bc;
        bc.base_id = c->id;
        bc.corners.assign(1u << k, -1);
        bc.corners[0] = u;
        bool ok = true;
        for (unsigned m = 1; m < (1u << k) && ok; ++m) {
          const int low = __builtin_ctz(m);
          const int from = bc.corners[m & (m - 1)];
          const int to = nb(from, c->ports[m & (m - 1)][low]);
          if (to < 0) {
            ok = false;
            break;
          }
          if ((m & (m - 1)) != 0) {
            const int high = 31 - __builtin_clz(m);
            const unsigned m2 = m & ~(1u << high);
            const int alt = bc.corners[m2] < 0 ? -1 : nb(bc.corners[m2], c->ports[m2][high]);
            if (alt != to) throw Error("cover.not_npc", "lifted cube does not close up");
          }
          bc.corners[m] = to;
        }
        if (ok) out.push_back(std::move(bc));
      }
    }
    std::sort(out.begin(), out.end(), [](const BallCube& a, const BallCube& b) {
      const int ma = *std::max_element(a.corners.begin(), a.corners.end());
      const int mb = *std::max_element(b.corners.begin(), b.corners.end());
      if (ma != mb) return ma < mb;
      if (a.corners != b.corners) return a.corners < b.corners;
      return a.base_id < b.base_id;
    });
  }

  // edge tables
  ball.edge_.assign(n, {});
  for (int u = 0; u < n; ++u) ball.edge_[u].assign(nbr[u].size(), -1);
  auto& edges = ball.cubes_[1];
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    const int e = edges[i].base_id;
    for (int end = 0; end < 2; ++end) {
      const int u = edges[i].corners[end];
      ball.edge_[u][port_index(ball.ports_.at(verts[u].base), edge_end_code(e, end))] = i;
    }
  }
  auto edge_index = [&](int u, int port) {
    return ball.edge_[u][port_index(ball.ports_.at(verts[u].base), port)];
  };

  // walls: parallel edges of lifted cubes
  IndexDsu walls(static_cast<int>(edges.size()));
  std::vector<std::vector<std::vector<int>>> cube_axis_edges(ball.cubes_.size());
  for (int k = 2; k <= x.dimension(); ++k) {
    std::map<int, const BaseCube*> byid;
    for (const auto& c : bcubes[k]) byid[c.id] = &c;
    for (const auto& bc : ball.cubes_[k]) {
      const BaseCube* c = byid.at(bc.base_id);
      for (int i = 0; i < k; ++i) {
        const int first = edge_index(bc.corners[0], c->ports[0][i]);
        for (unsigned m = 0; m < (1u << k); ++m)
          if (!(m & (1u << i))) walls.unite(first, edge_index(bc.corners[m], c->ports[m][i]));
      }
    }
  }
  std::map<int, int> wall_id;
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    const int r = walls.find(i);
    auto it = wall_id.find(r);
    if (it == wall_id.end()) it = wall_id.emplace(r, static_cast<int>(wall_id.size())).first;
    edges[i].walls = {it->second};
  }
  for (int k = 2; k <= x.dimension(); ++k) {
    std::map<int, const BaseCube*> byid;
    for (const auto& c : bcubes[k]) byid[c.id] = &c;
    for (auto& bc : ball.cubes_[k]) {
      const BaseCube* c = byid.at(bc.base_id);
      bc.walls.clear();
      for (int i = 0; i < k; ++i) bc.walls.push_back(edges[edge_index(bc.corners[0], c->ports[0][i])].walls[0]);
    }
  }

  // separating walls from the basepoint accumulate along the normal form
  for (int u = 1; u < n; ++u) {
    const auto& par = verts[verts[u].parent];
    auto sep = par.sep;
    const int w = edges[edge_index(verts[u].parent, parent_port[u])].walls[0];
    sep.insert(std::lower_bound(sep.begin(), sep.end(), w), w);
    verts[u].sep = std::move(sep);
  }

  auto& patch = ball.patch_;
  patch.radius = radius;
  patch.complete = complete;
  for (const auto& bv : verts) patch.depth.push_back(bv.depth);
  patch.cubes.assign(ball.cubes_.size(), {});
  for (std::size_t k = 1; k < ball.cubes_.size(); ++k)
    for (const auto& bc : ball.cubes_[k]) patch.cubes[k].push_back({bc.corners, bc.walls});
  patch.finalize();
  return ball;
}

namespace {

void require_interior(const CoverBall& ball, int v) {
  if (v < 0 || v >= ball.vertex_count()) throw Error("cover.bad_vertex", "no ball vertex " + std::to_string(v));
  if (!ball.interior(v))
    throw Error("cover.boundary_vertex", "vertex " + std::to_string(v) + " lies on the boundary shell");
}

}  // namespace

int l1_distance(const CoverBall& ball, int u, int v) {
  require_interior(ball, u);
  require_interior(ball, v);
  const auto& p = ball.patch();
  std::vector<int> dist(ball.vertex_count(), -1);
  std::deque<int> q{u};
  dist[u] = 0;
  while (!q.empty()) {
    const int a = q.front();
    q.pop_front();
    if (a == v) return dist[a];
    for (int e : p.edges_at(a)) {
      const int b = p.other_end(e, a);
      if (dist[b] < 0) {
        dist[b] = dist[a] + 1;
        q.push_back(b);
      }
    }
  }
  throw Error("cover.disconnected", "vertices are not joined inside the ball");
}

std::vector<int> separating_walls(const CoverBall& ball, int u, int v) {
  require_interior(ball, u);
  require_interior(ball, v);
  const auto& a = ball.vertex(u).sep;
  const auto& b = ball.vertex(v).sep;
  std::vector<int> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ConvexSubcomplex convex_hull(const CoverBall& ball, const std::vector<int>& s) {
  if (s.empty()) throw Error("cover.empty", "hull of the empty set");
  for (int v : s) require_interior(ball, v);
  std::vector<char> crossing(ball.wall_count(), 0);
  for (int v : s)
    for (int w : separating_walls(ball, s[0], v)) crossing[w] = 1;
  const auto& p = ball.patch();
  std::vector<char> seen(ball.vertex_count(), 0);
  std::vector<int> out{s[0]};
  seen[s[0]] = 1;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int a = out[i];
    if (!ball.interior(a))
      throw Error("cover.boundary_touched", "hull reaches the boundary shell at radius " +
                                                std::to_string(ball.radius()));
    for (int e : p.edges_at(a)) {
      if (!crossing[p.of_dim(1)[e].walls[0]]) continue;
      const int b = p.other_end(e, a);
      if (!seen[b]) {
        seen[b] = 1;
        out.push_back(b);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return {out, ball.margin(out)};
}

ConvexSubcomplex convex_hull_of_cubes(const CoverBall& ball, const std::vector<std::pair<int, int>>& cubes) {
  std::vector<int> vs;
  for (auto [k, i] : cubes) {
    if (k == 0) {
      vs.push_back(i);
    } else {
      const auto& c = ball.cubes(k).at(i).corners;
      vs.insert(vs.end(), c.begin(), c.end());
    }
  }
  return convex_hull(ball, vs);
}

bool is_convex(const CoverBall& ball, const std::vector<int>& vertices) {
  if (vertices.empty()) return false;
  const auto in = membership(ball.vertex_count(), vertices);
  const auto& p = ball.patch();
  // connected
  std::vector<char> seen(ball.vertex_count(), 0);
  std::vector<int> stack{vertices[0]};
  seen[vertices[0]] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const int a = stack.back();
    stack.pop_back();
    for (int e : p.edges_at(a)) {
      const int b = p.other_end(e, a);
      if (in[b] && !seen[b]) {
        seen[b] = 1;
        ++reached;
        stack.push_back(b);
      }
    }
  }
  std::set<int> distinct(vertices.begin(), vertices.end());
  if (reached != distinct.size()) return false;
  // square closure at every corner
  for (int y : distinct)
    for (int sq : p.squares_at(y)) {
      const auto& c = p.of_dim(2)[sq].corners;
      const int m = static_cast<int>(std::find(c.begin(), c.end(), y) - c.begin());
      if (in[c[m ^ 1]] && in[c[m ^ 2]] && !in[c[m ^ 3]]) return false;
    }
  return true;
}

std::vector<std::pair<int, int>> cubes_spanned(const CoverBall& ball, const std::vector<int>& vertices) {
  const auto in = membership(ball.vertex_count(), vertices);
  std::vector<std::pair<int, int>> out;
  for (int v : std::set<int>(vertices.begin(), vertices.end())) out.push_back({0, v});
  for (int k = 1; k <= ball.dimension(); ++k) {
    const auto& cs = ball.cubes(k);
    for (int i = 0; i < static_cast<int>(cs.size()); ++i)
      if (std::all_of(cs[i].corners.begin(), cs[i].corners.end(), [&](int v) { return in[v]; }))
        out.push_back({k, i});
  }
  return out;
}

bool is_convex_cubes(const CoverBall& ball, const std::vector<std::pair<int, int>>& cubes) {
  std::set<int> vs;
  for (auto [k, i] : cubes) {
    if (k == 0) {
      vs.insert(i);
    } else {
      const auto& c = ball.cubes(k).at(i).corners;
      vs.insert(c.begin(), c.end());
    }
  }
  const std::vector<int> vlist(vs.begin(), vs.end());
  const std::set<std::pair<int, int>> listed(cubes.begin(), cubes.end());
  for (const auto& c : cubes_spanned(ball, vlist))
    if (c.first > 0 && !listed.count(c)) return false;
  return is_convex(ball, vlist);
}

}  // namespace whcube
