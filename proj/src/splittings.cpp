#include "whcube/splittings.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <tuple>

#include "whcube/error.hpp"

namespace whcube {

// ---------------------------------------------------------------------------
// certificate

std::string describe_shape(const SimplicialComplex& s) {
  if (s.empty()) return "empty";
  std::string out;
  for (const auto& comp : components(s)) {
    const auto c = s.induced({comp.begin(), comp.end()});
    const auto nv = comp.size();
    const auto ne = c.edges().size();
    std::string piece;
    if (nv == 1) {
      piece = "point";
    } else if (c.dimension() == 1) {
      std::size_t max_deg = 0;
      for (int v : comp) max_deg = std::max(max_deg, c.neighbours(v).size());
      if (ne == nv && max_deg == 2)
        piece = std::to_string(nv) + "-cycle";
      else if (ne + 1 == nv && max_deg <= 2)
        piece = "segment (" + std::to_string(nv) + " vertices)";
      else
        piece = "graph (" + std::to_string(nv) + " vertices, " + std::to_string(ne) + " edges)";
    } else {
      piece = std::to_string(c.dimension()) + "-complex (" + std::to_string(nv) + " vertices, " +
              std::to_string(c.size()) + " simplices)";
    }
    if (!out.empty()) out += " ⊔ ";
    out += piece;
  }
  return out;
}

LemmaCertificate whitehead_lemma_certificate(const CubeComplex& x) {
  const auto npc = check_npc(x);
  if (!npc.npc) throw Error("splittings.not_npc", "not NPC: " + npc.reason);
  LemmaCertificate out;
  for (int v : x.ids(0)) {
    const auto lk = vertex_link(x, v);
    if (lk.empty()) continue;
    if (betti0(lk) > 1) {
      out.vertex = v;
      out.reason = "disconnected link";
      out.link_shape = describe_shape(lk);
      return out;
    }
    if (auto sigma = find_cut_simplex(lk)) {
      out.vertex = v;
      out.reason = sigma->size() == 1 ? "cut vertex" : "cut simplex";
      out.link_shape = describe_shape(lk);
      out.cut_simplex = sigma;
      return out;
    }
  }
  out.certified = true;
  return out;
}

// ---------------------------------------------------------------------------
// cut searches

std::vector<ConvexSubcomplex> candidate_subcomplexes(const CoverBall& ball) {
  std::map<int, int> anchor;  // base vertex -> first lift
  for (int v = 0; v < ball.vertex_count(); ++v) anchor.emplace(ball.vertex(v).base, v);
  std::set<std::vector<int>> seen;
  std::vector<ConvexSubcomplex> out;
  const int reach = ball.complete() ? CubicalPatch::kUnbounded : ball.radius() - 2;
  for (const auto& [base, a] : anchor) {
    if (ball.vertex(a).depth > reach) continue;
    for (int b = 0; b < ball.vertex_count(); ++b) {
      if (ball.vertex(b).depth > reach) continue;
      ConvexSubcomplex h;
      try {
        h = convex_hull(ball, {a, b});
      } catch (const Error&) {
        continue;
      }
      if (h.margin < 2) continue;
      if (seen.insert(h.vertices).second) out.push_back(std::move(h));
    }
  }
  std::sort(out.begin(), out.end(), [](const ConvexSubcomplex& p, const ConvexSubcomplex& q) {
    if (p.vertices.size() != q.vertices.size()) return p.vertices.size() < q.vertices.size();
    return p.vertices < q.vertices;
  });
  return out;
}

namespace {

CutReport zero_cut(const ConvexSubcomplex& y, WhiteheadComplex wh) {
  CutReport r;
  r.y = y;
  r.k = 0;
  r.classes = reduced_h0_classes(wh.complex);
  r.wh = std::move(wh);
  return r;
}

bool has_zero_cut(const WhiteheadComplex& wh) { return wh.complex.empty() || betti0(wh.complex) > 1; }

std::vector<int> carrier(const CoverBall& ball, int wall) {
  std::vector<int> out;
  const auto& p = ball.patch();
  for (int e : p.edges_of_wall(wall))
    for (int c : p.of_dim(1)[e].corners) out.push_back(c);
  return out;
}

}  // namespace

std::optional<CutReport> search_free_splitting(const CoverBall& ball) {
  for (const auto& y : candidate_subcomplexes(ball)) {
    auto wh = whitehead_complex(ball, y);
    if (has_zero_cut(wh)) return zero_cut(y, std::move(wh));
  }
  return std::nullopt;
}

std::optional<CutReport> search_free_splitting(const CubeComplex& x, int radius) {
  const auto vs = x.ids(0);
  if (vs.empty()) throw Error("splittings.empty", "complex has no vertices");
  return search_free_splitting(develop_ball(x, vs.front(), radius));
}

int carrier_width(const CoverBall& ball, int wall_a, int wall_b) {
  const auto& p = ball.patch();
  if (wall_a < 0 || wall_b < 0 || wall_a >= p.wall_count() || wall_b >= p.wall_count())
    throw Error("splittings.bad_wall", "no such wall");
  std::vector<int> dist(p.vertex_count(), -1);
  std::deque<int> queue;
  for (int v : carrier(ball, wall_a))
    if (dist[v] < 0) {
      dist[v] = 0;
      queue.push_back(v);
    }
  std::vector<char> target(p.vertex_count(), 0);
  for (int v : carrier(ball, wall_b)) target[v] = 1;
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    if (target[a]) return dist[a] + 1;
    for (int e : p.edges_at(a)) {
      const int b = p.other_end(e, a);
      if (dist[b] < 0) {
        dist[b] = dist[a] + 1;
        queue.push_back(b);
      }
    }
  }
  throw Error("splittings.disconnected_ball", "carriers are not connected in the ball");
}

std::optional<CutReport> classify_cut(const CoverBall& ball, const ConvexSubcomplex& y, int k_max) {
  auto wh = whitehead_complex(ball, y);
  if (!wh.stabilized)
    throw Error("splittings.not_stabilized", "crossings of bounding walls are not all seen at Y");
  if (has_zero_cut(wh)) return zero_cut(y, std::move(wh));
  const auto w = min_cut_cardinality(wh.complex, k_max);
  if (!w) return std::nullopt;
  CutReport r;
  r.y = y;
  r.k = w->k;
  r.cut_walls = w->vertices;
  if (r.k >= 2) {
    r.width = CubicalPatch::kUnbounded;
    for (std::size_t i = 0; i < r.cut_walls.size(); ++i)
      for (std::size_t j = i + 1; j < r.cut_walls.size(); ++j)
        r.width = std::min(r.width, carrier_width(ball, r.cut_walls[i], r.cut_walls[j]));
  }
  r.classes = reduced_h0_classes(
      remove_open_star(wh.complex, std::set<int>(r.cut_walls.begin(), r.cut_walls.end())));
  r.wh = std::move(wh);
  return r;
}

// ---------------------------------------------------------------------------
// abstract components and deck transformations

AbstractHyperplaneComponent abstract_component(const CoverBall& ball, const ConvexSubcomplex& y, int wall,
                                               const std::set<int>& c_y) {
  AbstractHyperplaneComponent a;
  a.y = y;
  a.component = hyperplane_component(ball, y, wall);
  const auto wh = whitehead_complex(ball, y);
  a.wh = wh.complex.link(wall);
  const auto vs = a.wh.vertices();
  for (int v : vs)
    if (c_y.count(v)) a.c_k.insert(v);
  if (a.c_k.empty() || a.c_k.size() == vs.size())
    throw Error("splittings.trivial_pullback",
                "the class is constant on the link of wall " + std::to_string(wall));
  if (a.c_k.count(vs.front())) {
    std::set<int> flipped;
    for (int v : vs)
      if (!a.c_k.count(v)) flipped.insert(v);
    a.c_k = std::move(flipped);
  }
  return a;
}

namespace {

std::optional<int> port_between(const CoverBall& ball, int from, int to) {
  for (int p : ball.ports_of(from))
    if (ball.neighbour(from, p) == to) return p;
  return std::nullopt;
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// phi is the deck transformation with phi(y0) = z. Checks that it carries
// a's component onto b's with orientations reversed and matching classes.
std::optional<DeckWitness> try_deck(const CoverBall& ball, const AbstractHyperplaneComponent& a,
                                    const AbstractHyperplaneComponent& b, int y0, int z) {
  if (ball.vertex(y0).base != ball.vertex(z).base) return std::nullopt;
  std::set<int> in_y(a.y.vertices.begin(), a.y.vertices.end());
  std::set<int> near = in_y;
  for (int v : a.y.vertices)
    for (int p : ball.ports_of(v))
      if (auto w = ball.neighbour(v, p)) near.insert(*w);

  // transport along equal ports, Y first and then one step out
  DeckWitness out;
  auto& phi = out.vertex_map;
  phi[y0] = z;
  std::deque<int> queue{y0};
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (!in_y.count(v)) continue;
    for (int p : ball.ports_of(v)) {
      const auto w = ball.neighbour(v, p);
      if (!w || !near.count(*w)) continue;
      const auto fw = ball.neighbour(phi.at(v), p);
      if (!fw) return std::nullopt;
      auto [it, fresh] = phi.emplace(*w, *fw);
      if (!fresh) {
        if (it->second != *fw) return std::nullopt;
        continue;
      }
      queue.push_back(*w);
    }
  }
  if (phi.size() != near.size()) return std::nullopt;

  // K edges go to K' edges, Y-ends to the far ends
  const auto& k = a.component;
  const auto& kb = b.component;
  if (k.edges.size() != kb.edges.size()) return std::nullopt;
  std::set<std::pair<int, int>> kb_edges;  // (Y'-end, far end)
  for (std::size_t i = 0; i < kb.edges.size(); ++i) {
    const auto& c = ball.cubes(1)[kb.edges[i]].corners;
    const int ye = kb.y_ends[i];
    kb_edges.insert({ye, c[0] == ye ? c[1] : c[0]});
  }
  for (std::size_t i = 0; i < k.edges.size(); ++i) {
    const auto& c = ball.cubes(1)[k.edges[i]].corners;
    const int ye = k.y_ends[i];
    const int far = c[0] == ye ? c[1] : c[0];
    if (!kb_edges.count({phi.at(far), phi.at(ye)})) return std::nullopt;
  }
  // the Y side of H goes to the far side of H'
  if (ball.side(phi.at(k.y_ends.front()), kb.wall) == kb.orientation) return std::nullopt;

  // walls of the link, through edges leaving Y
  std::set<int> lk_a;
  for (int w : a.wh.vertices()) lk_a.insert(w);
  for (int v : a.y.vertices)
    for (int p : ball.ports_of(v)) {
      const auto w = ball.neighbour(v, p);
      if (!w || in_y.count(*w)) continue;
      const int wall = ball.edge_wall(*ball.edge_at(v, p));
      if (!lk_a.count(wall)) continue;
      const auto e2 = ball.edge_at(phi.at(v), p);
      if (!e2) return std::nullopt;
      const int image = ball.edge_wall(*e2);
      auto [it, fresh] = out.wall_map.emplace(wall, image);
      if (!fresh && it->second != image) return std::nullopt;
    }
  if (out.wall_map.size() != lk_a.size()) return std::nullopt;
  std::set<int> images;
  for (const auto& [w, img] : out.wall_map) images.insert(img);
  const auto lk_b = b.wh.vertices();
  if (images != std::set<int>(lk_b.begin(), lk_b.end())) return std::nullopt;
  if (relabel(a.wh, out.wall_map).simplex_set() != b.wh.simplex_set()) return std::nullopt;

  // c_K = phi^* c_K' up to a constant
  std::optional<bool> offset;
  for (const auto& [w, img] : out.wall_map) {
    const bool d = (a.c_k.count(w) > 0) != (b.c_k.count(img) > 0);
    if (offset && *offset != d) return std::nullopt;
    offset = d;
  }

  Word g = ball.vertex(z).normal_form;
  const auto back = inverse(ball.vertex(y0).normal_form);
  g.insert(g.end(), back.begin(), back.end());
  out.element = free_reduce(g);
  return out;
}

}  // namespace

std::optional<DeckWitness> opposite_type(const AbstractHyperplaneComponent& a,
                                         const AbstractHyperplaneComponent& b, const CoverBall& ball) {
  const auto& k = a.component;
  if (k.edges.empty()) return std::nullopt;
  const int y0 = k.y_ends.front();
  const auto& c0 = ball.cubes(1)[k.edges.front()].corners;
  const int x0 = c0[0] == y0 ? c0[1] : c0[0];
  const auto p = port_between(ball, y0, x0);
  if (!p) return std::nullopt;
  std::optional<DeckWitness> best;
  const auto& kb = b.component;
  for (std::size_t i = 0; i < kb.edges.size(); ++i) {
    const auto& c = ball.cubes(1)[kb.edges[i]].corners;
    const int yb = kb.y_ends[i];
    const int zb = c[0] == yb ? c[1] : c[0];
    if (ball.neighbour(zb, *p) != yb) continue;
    auto w = try_deck(ball, a, b, y0, zb);
    if (w && (!best || shortlex_less(w->element, best->element))) best = std::move(w);
  }
  return best;
}

std::optional<PeriodicCut> detect_periodic_2cut(const CoverBall& ball, int width_max, const std::set<int>& edges) {
  auto allowed = [&](int wall) {
    if (edges.empty()) return true;
    const int e = ball.patch().edges_of_wall(wall).front();
    return edges.count(ball.cubes(1)[e].base_id) > 0;
  };
  const auto candidates = candidate_subcomplexes(ball);
  std::vector<WhiteheadComplex> whs;
  for (const auto& y : candidates) {
    whs.push_back(whitehead_complex(ball, y));
    const auto& wh = whs.back();
    if (has_zero_cut(wh))
      throw Error("splittings.preflight_zero_cut",
                  "a " + std::to_string(y.vertices.size()) + "-vertex Y has a 0-cut at radius " +
                      std::to_string(ball.radius()));
    if (min_cut_cardinality(wh.complex, 1))
      throw Error("splittings.preflight_one_cut",
                  "a " + std::to_string(y.vertices.size()) + "-vertex Y has a 1-cut at radius " +
                      std::to_string(ball.radius()));
  }
  if (width_max < 1) return std::nullopt;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& y = candidates[i];
    const auto& wh = whs[i];
    if (!wh.stabilized) continue;
    std::vector<std::tuple<int, int, int>> pairs;  // (width, H, H')
    for (auto [h1, h2] : cut_pairs(wh.complex)) {
      if (!allowed(h1) || !allowed(h2)) continue;
      const int width = carrier_width(ball, h1, h2);
      if (width <= width_max) pairs.emplace_back(width, h1, h2);
    }
    std::sort(pairs.begin(), pairs.end());
    for (auto [width, h1, h2] : pairs) {
      const auto rest = remove_open_star(wh.complex, std::set<int>{h1, h2});
      for (const auto& cls : reduced_h0_classes(rest)) {
        for (auto [h, hp] : {std::pair{h1, h2}, std::pair{h2, h1}}) {
          AbstractHyperplaneComponent a, b;
          try {
            a = abstract_component(ball, y, h, cls.support);
            b = abstract_component(ball, y, hp, cls.support);
          } catch (const Error& e) {
            if (e.code() == "splittings.trivial_pullback") continue;
            throw;
          }
          if (auto phi = opposite_type(a, b, ball)) {
            PeriodicCut out;
            out.cut.y = y;
            out.cut.k = 2;
            out.cut.cut_walls = {h, hp};
            out.cut.width = width;
            out.cut.classes = reduced_h0_classes(rest);
            out.cut.wh = wh;
            out.c_y = cls.support;
            out.first = std::move(a);
            out.second = std::move(b);
            out.phi = std::move(*phi);
            return out;
          }
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<PeriodicCut> detect_periodic_2cut(const CubeComplex& x, int radius, int width_max,
                                                const std::set<int>& edges) {
  const auto vs = x.ids(0);
  if (vs.empty()) throw Error("splittings.empty", "complex has no vertices");
  return detect_periodic_2cut(develop_ball(x, vs.front(), radius), width_max, edges);
}

bool verify_periodic_2cut(const CoverBall& ball, const PeriodicCut& p) {
  if (p.cut.cut_walls.size() != 2) return false;
  const int h = p.cut.cut_walls[0], hp = p.cut.cut_walls[1];
  const auto wh = whitehead_complex(ball, p.cut.y);
  if (wh.complex.adjacent(h, hp)) return false;
  const auto rest = remove_open_star(wh.complex, std::set<int>{h, hp});
  if (betti0(rest) < 2) return false;
  // c_Y must be a union of components of Wh(Y) minus the two stars
  for (const auto& comp : components(rest)) {
    std::size_t in = 0;
    for (int v : comp) in += p.c_y.count(v);
    if (in != 0 && in != comp.size()) return false;
  }
  AbstractHyperplaneComponent a, b;
  try {
    a = abstract_component(ball, p.cut.y, h, p.c_y);
    b = abstract_component(ball, p.cut.y, hp, p.c_y);
  } catch (const Error&) {
    return false;
  }
  const int y0 = a.component.y_ends.front();
  Word path = p.phi.element;
  const auto& nf = ball.vertex(y0).normal_form;
  path.insert(path.end(), nf.begin(), nf.end());
  const auto z = ball.walk(0, free_reduce(path));
  if (!z) return false;
  const auto w = try_deck(ball, a, b, y0, *z);
  return w && w->element == p.phi.element && w->wall_map == p.phi.wall_map;
}

// ---------------------------------------------------------------------------
// Grushko unfolding

namespace {

struct Squares {
  std::map<int, std::array<int, 2>> edges;
  std::map<int, std::array<int, 4>> squares;
  std::set<int> vertices;

  static Squares from(const CubeComplex& x) {
    Squares s;
    for (int v : x.ids(0)) s.vertices.insert(v);
    for (int e : x.ids(1)) s.edges[e] = {x.edge_vertex(e, 0), x.edge_vertex(e, 1)};
    for (int q : x.ids(2)) s.squares[q] = x.square_boundary(q);
    return s;
  }

  CubeComplex build() const {
    CubeComplex x;
    for (int v : vertices) x.add_vertex(v);
    for (const auto& [e, ends] : edges) x.add_edge(e, ends[0], ends[1]);
    for (const auto& [q, b] : squares) x.add_square(q, b);
    return x;
  }

  static int start_port(int signed_edge) {
    return edge_end_code(std::abs(signed_edge), signed_edge > 0 ? 0 : 1);
  }
  static int finish_port(int signed_edge) {
    return edge_end_code(std::abs(signed_edge), signed_edge > 0 ? 1 : 0);
  }
  int vertex_of(int port) const { return edges.at(edge_of(port))[end_of(port)]; }

  // link graph at every vertex: ports and square corners
  std::map<int, SimplicialComplex> links() const {
    std::map<int, SimplicialComplex> out;
    for (int v : vertices) out[v];
    for (const auto& [e, ends] : edges)
      for (int end = 0; end < 2; ++end) out[ends[end]].add_vertex(edge_end_code(e, end));
    for (const auto& [q, b] : squares)
      for (int j = 0; j < 4; ++j) {
        const int p = start_port(b[j]), r = finish_port(b[(j + 3) % 4]);
        out[vertex_of(p)].add_simplex({std::min(p, r), std::max(p, r)});
      }
    return out;
  }
};

std::optional<std::pair<int, int>> first_cut_vertex(const std::map<int, SimplicialComplex>& links) {
  for (const auto& [v, lk] : links)
    for (const auto& comp : components(lk)) {
      if (comp.size() < 3) continue;
      const auto c = lk.induced({comp.begin(), comp.end()});
      for (int u : comp)
        if (betti0(remove_open_star(c, std::set<int>{u})) >= 2) return std::pair{v, u};
    }
  return std::nullopt;
}

UnfoldStep unfold_at(Squares& s, int v, int u, const SimplicialComplex& lk) {
  UnfoldStep step{v, u, {}, {}};
  std::vector<int> comp;
  for (const auto& c : components(lk))
    if (std::binary_search(c.begin(), c.end(), u)) comp = c;
  const auto c = lk.induced({comp.begin(), comp.end()});
  const auto parts = components(remove_open_star(c, std::set<int>{u}));
  std::map<int, int> part_of;
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (int q : parts[i]) part_of[q] = static_cast<int>(i);

  const int e = edge_of(u), eu = end_of(u);
  std::vector<int> vert{v}, copy{e};
  int next_v = *s.vertices.rbegin() + 1;
  int next_e = s.edges.rbegin()->first + 1;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    vert.push_back(next_v);
    s.vertices.insert(next_v);
    step.new_vertices.push_back(next_v++);
    copy.push_back(next_e);
    s.edges[next_e] = s.edges.at(e);
    s.edges[next_e][eu] = vert.back();
    step.new_edges.push_back(next_e++);
  }

  // each occurrence of e follows the part holding the other port at its u-end
  std::vector<std::tuple<int, int, int>> moves;  // square, position, new edge
  for (const auto& [q, b] : s.squares)
    for (int i = 0; i < 4; ++i) {
      if (std::abs(b[i]) != e) continue;
      int other;
      if (Squares::start_port(b[i]) == u)
        other = Squares::finish_port(b[(i + 3) % 4]);
      else if (Squares::finish_port(b[i]) == u)
        other = Squares::start_port(b[(i + 1) % 4]);
      else
        continue;
      moves.emplace_back(q, i, copy[part_of.at(other)]);
    }
  for (auto [q, i, ne] : moves) {
    auto& b = s.squares.at(q);
    b[i] = b[i] > 0 ? ne : -ne;
  }
  // the other ports of each part move to its vertex
  for (std::size_t i = 1; i < parts.size(); ++i)
    for (int q : parts[i]) {
      if (edge_of(q) == e) {
        for (int ce : copy) s.edges.at(ce)[end_of(q)] = vert[i];
      } else {
        s.edges.at(edge_of(q))[end_of(q)] = vert[i];
      }
    }
  return step;
}

}  // namespace

GrushkoReport unfold_grushko(const CubeComplex& x, int cap) {
  if (x.dimension() > 2) throw Error("splittings.not_square_complex", "dimension above 2");
  const auto npc = check_npc(x);
  if (!npc.npc) throw Error("splittings.not_npc", "not NPC: " + npc.reason);
  if (cap < 0) cap = 10 * static_cast<int>(x.count(2));

  GrushkoReport out;
  Squares s = Squares::from(x);
  for (;;) {
    const auto links = s.links();
    const auto hit = first_cut_vertex(links);
    if (!hit) break;
    if (static_cast<int>(out.trace.size()) >= cap)
      throw Error("splittings.iteration_cap", "no fixed point after " + std::to_string(cap) + " unfoldings");
    out.trace.push_back(unfold_at(s, hit->first, hit->second, links.at(hit->first)));
    const auto y = s.build();
    y.validate();
    const auto ok = check_npc(y);
    if (!ok.npc) throw Error("splittings.internal", "unfolding broke NPC: " + ok.reason);
  }
  out.unfolded = s.build();
  if (homology_h1(out.unfolded) != homology_h1(x))
    throw Error("splittings.internal", "unfolding changed H1");

  // split every vertex by link component; component 0 keeps the vertex
  Squares split = s;
  const auto links = s.links();
  std::map<int, std::vector<int>> node_of;  // vertex -> split vertex per link component
  int next_v = split.vertices.empty() ? 0 : *split.vertices.rbegin() + 1;
  for (const auto& [v, lk] : links) {
    const auto comps = components(lk);
    node_of[v].push_back(v);
    for (std::size_t i = 1; i < comps.size(); ++i) {
      split.vertices.insert(next_v);
      node_of[v].push_back(next_v);
      for (int q : comps[i]) split.edges.at(edge_of(q))[end_of(q)] = next_v;
      ++next_v;
    }
  }
  // pieces of the split complex
  std::map<int, int> parent;
  for (int v : split.vertices) parent[v] = v;
  std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  for (const auto& [e, ends] : split.edges) parent[find(ends[0])] = find(ends[1]);
  std::map<int, Squares> pieces;
  for (int v : split.vertices) pieces[find(v)].vertices.insert(v);
  for (const auto& [e, ends] : split.edges) pieces[find(ends[0])].edges[e] = ends;
  for (const auto& [q, b] : split.squares) pieces[find(split.edges.at(std::abs(b[0]))[0])].squares[q] = b;

  // the graph part: X' edges outside squares, plus one edge from each
  // vertex to each square piece it touches per link component
  std::set<int> in_square;
  for (const auto& [q, b] : s.squares)
    for (int e : b) in_square.insert(std::abs(e));
  std::map<int, int> piece_node;
  int node = next_v;
  for (const auto& [root, piece] : pieces) {
    if (piece.squares.empty()) continue;
    piece_node[root] = node++;
    auto c = piece.build();
    if (piece.squares.size() == 1 && piece.vertices.size() == 4)
      out.squares.push_back(std::move(c));
    else
      out.factors.push_back(std::move(c));
  }
  CubeComplex gamma;
  for (int v : s.vertices) gamma.add_vertex(v);
  for (const auto& [root, n] : piece_node) gamma.add_vertex(n);
  int next_e = s.edges.empty() ? 1 : s.edges.rbegin()->first + 1;
  for (const auto& [e, ends] : s.edges)
    if (!in_square.count(e)) gamma.add_edge(e, ends[0], ends[1]);
  for (const auto& [v, lk] : links) {
    const auto comps = components(lk);
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const int root = find(node_of[v][i]);
      if (piece_node.count(root)) gamma.add_edge(next_e++, v, piece_node[root]);
    }
  }
  out.graph_rank = static_cast<int>(gamma.count(1)) - static_cast<int>(gamma.count(0));
  {
    std::map<int, int> gp;
    for (int v : gamma.ids(0)) gp[v] = v;
    std::function<int(int)> gfind = [&](int a) { return gp[a] == a ? a : gp[a] = gfind(gp[a]); };
    for (int e : gamma.ids(1)) gp[gfind(gamma.edge_vertex(e, 0))] = gfind(gamma.edge_vertex(e, 1));
    std::set<int> roots;
    for (int v : gamma.ids(0)) roots.insert(gfind(v));
    out.graph_rank += static_cast<int>(roots.size());
  }
  out.graph = gamma.count(0) ? collapse_free_faces(gamma) : gamma;
  return out;
}

// ---------------------------------------------------------------------------
// json

nlohmann::json to_json(const LemmaCertificate& c) {
  nlohmann::json j;
  j["certified"] = c.certified;
  if (c.vertex) {
    j["vertex"] = *c.vertex;
    j["reason"] = c.reason;
    j["link"] = c.link_shape;
  }
  if (c.cut_simplex) j["cut_simplex"] = *c.cut_simplex;
  return j;
}

nlohmann::json to_json(const CutReport& r) {
  nlohmann::json j;
  j["Y"] = r.y.vertices;
  j["margin"] = r.y.margin >= CubicalPatch::kUnbounded ? nlohmann::json("unbounded") : nlohmann::json(r.y.margin);
  j["k"] = r.k;
  j["cut_walls"] = r.cut_walls;
  j["width"] = r.width;
  nlohmann::json cls = nlohmann::json::array();
  for (const auto& c : r.classes) cls.push_back(std::vector<int>(c.support.begin(), c.support.end()));
  j["classes"] = cls;
  j["whitehead"] = to_json(r.wh);
  return j;
}

namespace {

nlohmann::json component_json(const AbstractHyperplaneComponent& a) {
  nlohmann::json j;
  j["wall"] = a.component.wall;
  j["edges"] = a.component.edges;
  j["orientation"] = a.component.orientation;
  j["link"] = to_json(a.wh);
  j["c_K"] = std::vector<int>(a.c_k.begin(), a.c_k.end());
  return j;
}

}  // namespace

nlohmann::json to_json(const PeriodicCut& p) {
  nlohmann::json j;
  j["cut"] = to_json(p.cut);
  j["c_Y"] = std::vector<int>(p.c_y.begin(), p.c_y.end());
  j["K"] = component_json(p.first);
  j["K_prime"] = component_json(p.second);
  j["phi"] = {{"element", format_word(p.phi.element)}, {"letters", p.phi.element}};
  nlohmann::json wm = nlohmann::json::array();
  for (const auto& [a, b] : p.phi.wall_map) wm.push_back({a, b});
  j["phi"]["wall_map"] = wm;
  return j;
}

nlohmann::json to_json(const GrushkoReport& g) {
  nlohmann::json j;
  j["unfolded"] = g.unfolded.to_json();
  j["graph"] = g.graph.to_json();
  j["graph_rank"] = g.graph_rank;
  nlohmann::json f = nlohmann::json::array();
  for (const auto& x : g.factors) {
    nlohmann::json fj;
    fj["complex"] = x.to_json();
    fj["certificate"] = to_json(whitehead_lemma_certificate(x));
    const auto h = homology_h1(x);
    fj["h1"] = {{"rank", h.rank}, {"torsion", h.torsion}};
    f.push_back(fj);
  }
  j["factors"] = f;
  nlohmann::json sq = nlohmann::json::array();
  for (const auto& x : g.squares) sq.push_back(x.to_json());
  j["squares"] = sq;
  nlohmann::json tr = nlohmann::json::array();
  for (const auto& t : g.trace)
    tr.push_back({{"vertex", t.vertex}, {"port", t.port}, {"new_vertices", t.new_vertices},
                  {"new_edges", t.new_edges}});
  j["trace"] = tr;
  return j;
}

}  // namespace whcube
