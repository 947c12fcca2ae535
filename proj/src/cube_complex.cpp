#include "whcube/cube_complex.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "whcube/error.hpp"

namespace whcube {

namespace {

int sign(int x) { return x < 0 ? -1 : 1; }

bool valid_signed_permutation(const std::vector<int>& al, std::size_t n) {
  if (al.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (int a : al) {
    int p = std::abs(a) - 1;
    if (a == 0 || p >= static_cast<int>(n) || seen[p]) return false;
    seen[p] = true;
  }
  return true;
}

// orientation sign of a signed permutation: parity times product of signs
int orientation(const std::vector<int>& al) {
  int s = 1;
  std::vector<int> p;
  for (int a : al) {
    if (a < 0) s = -s;
    p.push_back(std::abs(a) - 1);
  }
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

std::string cube_name(int dim, int id) {
  return std::to_string(dim) + "-cube " + std::to_string(id);
}

}  // namespace

std::map<int, Cube>& CubeComplex::level(int dim) {
  if (static_cast<int>(cubes_.size()) <= dim) cubes_.resize(dim + 1);
  return cubes_[dim];
}

void CubeComplex::add_vertex(int id) {
  auto& l = level(0);
  if (l.count(id)) throw Error("cube_complex.duplicate_id", "duplicate vertex " + std::to_string(id));
  l[id] = Cube{0, id, {}};
}

void CubeComplex::add_edge(int id, int from, int to) {
  if (id < 1) throw Error("cube_complex.bad_id", "edge ids must be positive");
  auto& l = level(1);
  if (l.count(id)) throw Error("cube_complex.duplicate_id", "duplicate edge " + std::to_string(id));
  l[id] = Cube{1, id, {FaceRef{from, {}}, FaceRef{to, {}}}};
}

void CubeComplex::add_square(int id, const std::array<int, 4>& b) {
  for (int e : b)
    if (e == 0) throw Error("cube_complex.bad_id", "square boundary uses edge id 0");
  std::vector<FaceRef> faces(4);
  faces[0] = FaceRef{std::abs(b[3]), {-sign(b[3])}};  // left
  faces[1] = FaceRef{std::abs(b[1]), {sign(b[1])}};   // right
  faces[2] = FaceRef{std::abs(b[0]), {sign(b[0])}};   // bottom
  faces[3] = FaceRef{std::abs(b[2]), {-sign(b[2])}};  // top
  add_cube(2, id, std::move(faces));
}

void CubeComplex::add_cube(int dim, int id, std::vector<FaceRef> faces) {
  auto& l = level(dim);
  if (l.count(id)) throw Error("cube_complex.duplicate_id", "duplicate " + cube_name(dim, id));
  if (faces.size() != static_cast<std::size_t>(2 * dim))
    throw Error("cube_complex.bad_faces", cube_name(dim, id) + " needs " + std::to_string(2 * dim) + " faces");
  l[id] = Cube{dim, id, std::move(faces)};
}

void CubeComplex::remove_cube(int dim, int id) {
  if (dim < static_cast<int>(cubes_.size())) cubes_[dim].erase(id);
  while (!cubes_.empty() && cubes_.back().empty()) cubes_.pop_back();
}

int CubeComplex::dimension() const {
  for (int d = static_cast<int>(cubes_.size()) - 1; d >= 0; --d)
    if (!cubes_[d].empty()) return d;
  return -1;
}

bool CubeComplex::has_cube(int dim, int id) const {
  return dim >= 0 && dim < static_cast<int>(cubes_.size()) && cubes_[dim].count(id) > 0;
}

const Cube& CubeComplex::cube(int dim, int id) const {
  if (!has_cube(dim, id)) throw Error("cube_complex.dangling_face", "no " + cube_name(dim, id));
  return cubes_[dim].at(id);
}

const std::map<int, Cube>& CubeComplex::cubes(int dim) const {
  static const std::map<int, Cube> empty;
  if (dim < 0 || dim >= static_cast<int>(cubes_.size())) return empty;
  return cubes_[dim];
}

std::vector<int> CubeComplex::ids(int dim) const {
  std::vector<int> out;
  for (const auto& [id, c] : cubes(dim)) out.push_back(id);
  return out;
}

std::size_t CubeComplex::count(int dim) const { return cubes(dim).size(); }

int CubeComplex::euler_characteristic() const {
  int chi = 0;
  for (int d = 0; d <= dimension(); ++d) chi += (d % 2 ? -1 : 1) * static_cast<int>(count(d));
  return chi;
}

int CubeComplex::edge_vertex(int edge, int end) const { return cube(1, edge).faces[end].target; }

std::array<int, 4> CubeComplex::square_boundary(int id) const {
  const auto& f = cube(2, id).faces;
  return {f[2].target * f[2].alignment[0], f[1].target * f[1].alignment[0],
          -f[3].target * f[3].alignment[0], -f[0].target * f[0].alignment[0]};
}

ResolvedFace CubeComplex::resolve(int dim, int id, const std::vector<int>& assignment,
                                  const std::vector<int>& order) const {
  ResolvedFace cur{dim, id, {}};
  std::vector<int> assign = assignment;
  for (int a = 0; a < dim; ++a) cur.axes.emplace_back(a, false);
  // `order` refers to original axes; track where each original axis sits
  std::vector<int> pos(dim);
  std::iota(pos.begin(), pos.end(), 0);
  std::vector<int> preferred = order;
  for (int a = 0; a < dim; ++a) preferred.push_back(a);
  for (int orig : preferred) {
    if (assignment[orig] < 0 || pos[orig] < 0) continue;
    const int i = pos[orig];
    const int s = assign[i];
    const FaceRef& face = cube(cur.dim, cur.id).faces[2 * i + s];
    const int fd = cur.dim - 1;
    if (!has_cube(fd, face.target))
      throw Error("cube_complex.dangling_face", cube_name(cur.dim, cur.id) + " has a dangling face");
    std::vector<int> ylist;
    for (int a = 0; a < cur.dim; ++a)
      if (a != i) ylist.push_back(a);
    std::vector<int> next_assign(fd);
    std::vector<std::pair<int, bool>> next_axes(fd);
    // new position of each current coordinate
    std::vector<int> moved(cur.dim, -1);
    for (int j = 0; j < fd; ++j) {
      const int al = face.alignment[j];
      const int p = std::abs(al) - 1;
      const bool neg = al < 0;
      const int src = ylist[p];
      moved[src] = j;
      next_assign[j] = assign[src] < 0 ? -1 : (assign[src] ^ (neg ? 1 : 0));
      next_axes[j] = {cur.axes[src].first, cur.axes[src].second != neg};
    }
    for (int a = 0; a < dim; ++a) pos[a] = pos[a] < 0 ? -1 : moved[pos[a]];
    cur = ResolvedFace{fd, face.target, std::move(next_axes)};
    assign = std::move(next_assign);
  }
  return cur;
}

int CubeComplex::corner_vertex(int dim, int id, unsigned corner) const {
  std::vector<int> assign(dim);
  for (int a = 0; a < dim; ++a) assign[a] = (corner >> a) & 1u;
  return resolve(dim, id, assign).id;
}

std::vector<int> CubeComplex::corner_ports(int dim, int id, unsigned corner) const {
  std::vector<int> out;
  for (int i = 0; i < dim; ++i) {
    std::vector<int> assign(dim);
    for (int a = 0; a < dim; ++a) assign[a] = a == i ? -1 : static_cast<int>((corner >> a) & 1u);
    const auto r = resolve(dim, id, assign);
    const int end = static_cast<int>((corner >> i) & 1u) ^ (r.axes[0].second ? 1 : 0);
    out.push_back(edge_end_code(r.id, end));
  }
  return out;
}

std::vector<int> CubeComplex::ports(int vertex) const {
  std::vector<int> out;
  for (const auto& [id, e] : cubes(1))
    for (int end = 0; end < 2; ++end)
      if (e.faces[end].target == vertex) out.push_back(edge_end_code(id, end));
  std::sort(out.begin(), out.end());
  return out;
}

void CubeComplex::validate() const {
  for (int d = 1; d <= dimension(); ++d) {
    for (const auto& [id, c] : cubes(d)) {
      if (c.faces.size() != static_cast<std::size_t>(2 * d))
        throw Error("cube_complex.bad_faces", cube_name(d, id) + " has the wrong number of faces");
      for (const auto& f : c.faces) {
        if (!has_cube(d - 1, f.target))
          throw Error("cube_complex.dangling_face",
                      cube_name(d, id) + " refers to missing " + cube_name(d - 1, f.target));
        if (d >= 2 && !valid_signed_permutation(f.alignment, d - 1))
          throw Error("cube_complex.bad_alignment", cube_name(d, id) + " has an invalid alignment");
      }
    }
  }
  for (int d = 2; d <= dimension(); ++d) {
    for (const auto& [id, c] : cubes(d)) {
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
          for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 2; ++t) {
              std::vector<int> assign(d, -1);
              assign[i] = s;
              assign[j] = t;
              const auto a = resolve(d, id, assign, {i, j});
              const auto b = resolve(d, id, assign, {j, i});
              if (a.id != b.id || a.axes != b.axes)
                throw Error("cube_complex.inconsistent_faces",
                            cube_name(d, id) + ": faces along axes " + std::to_string(i) + "," +
                                std::to_string(j) + " do not agree");
            }
    }
  }
  for (int v : ids(0)) vertex_link(*this, v);
}

nlohmann::json CubeComplex::to_json() const {
  nlohmann::json j;
  j["dim"] = std::max(0, dimension());
  nlohmann::json cubes_j = nlohmann::json::object();
  cubes_j["0"] = ids(0);
  for (int d = 1; d <= dimension(); ++d) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [id, c] : cubes(d)) {
      nlohmann::json cj;
      cj["id"] = id;
      if (d == 1) {
        cj["ends"] = {c.faces[0].target, c.faces[1].target};
      } else if (d == 2) {
        auto b = square_boundary(id);
        cj["boundary"] = std::vector<int>(b.begin(), b.end());
      } else {
        nlohmann::json faces = nlohmann::json::array();
        for (const auto& f : c.faces)
          faces.push_back({{d == 3 ? "square" : "cube", f.target}, {"alignment", f.alignment}});
        cj["faces"] = faces;
      }
      arr.push_back(cj);
    }
    cubes_j[std::to_string(d)] = arr;
  }
  j["cubes"] = cubes_j;
  return j;
}

CubeComplex CubeComplex::from_json(const nlohmann::json& j, bool do_validate) {
  CubeComplex x;
  try {
    const auto& cj = j.at("cubes");
    const int dim = j.at("dim").get<int>();
    if (cj.contains("0"))
      for (int v : cj.at("0").get<std::vector<int>>()) x.add_vertex(v);
    for (int d = 1; d <= dim; ++d) {
      const auto key = std::to_string(d);
      if (!cj.contains(key)) continue;
      for (const auto& c : cj.at(key)) {
        const int id = c.at("id").get<int>();
        if (d == 1) {
          auto ends = c.at("ends").get<std::vector<int>>();
          if (ends.size() != 2) throw Error("cube_complex.bad_json", "edge needs two ends");
          x.add_edge(id, ends[0], ends[1]);
        } else if (d == 2) {
          auto b = c.at("boundary").get<std::vector<int>>();
          if (b.size() != 4) throw Error("cube_complex.bad_json", "square boundary needs 4 edges");
          x.add_square(id, {b[0], b[1], b[2], b[3]});
        } else {
          std::vector<FaceRef> faces;
          for (const auto& f : c.at("faces")) {
            FaceRef r;
            r.target = f.contains("square") ? f.at("square").get<int>() : f.at("cube").get<int>();
            r.alignment = f.at("alignment").get<std::vector<int>>();
            faces.push_back(r);
          }
          x.add_cube(d, id, std::move(faces));
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error("cube_complex.bad_json", e.what());
  }
  if (do_validate) x.validate();
  return x;
}

SimplicialComplex vertex_link(const CubeComplex& x, int v) {
  if (!x.has_cube(0, v)) throw Error("cube_complex.no_vertex", "no vertex " + std::to_string(v));
  SimplicialComplex link;
  for (int p : x.ports(v)) link.add_vertex(p);
  std::set<Simplex> seen;
  for (int d = 2; d <= x.dimension(); ++d) {
    for (const auto& [id, c] : x.cubes(d)) {
      for (unsigned corner = 0; corner < (1u << d); ++corner) {
        if (x.corner_vertex(d, id, corner) != v) continue;
        Simplex s = x.corner_ports(d, id, corner);
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
          throw Error("cube_complex.non_simplicial_link",
                      "link of vertex " + std::to_string(v) + ": a corner of " + cube_name(d, id) +
                          " meets the same edge-end twice");
        if (!seen.insert(s).second)
          throw Error("cube_complex.non_simplicial_link",
                      "link of vertex " + std::to_string(v) + ": two corners span the same simplex (" +
                          cube_name(d, id) + ")");
        link.add_simplex(s);
      }
    }
  }
  return link;
}

NpcVerdict check_npc(const CubeComplex& x) {
  for (int v : x.ids(0)) {
    SimplicialComplex link;
    try {
      link = vertex_link(x, v);
    } catch (const Error& e) {
      return {false, v, e.what()};
    }
    if (!is_flag(link)) return {false, v, "link of vertex " + std::to_string(v) + " is not flag"};
  }
  return {};
}

std::vector<int> Hyperplane::dual_edges() const {
  std::vector<int> out;
  for (const auto& m : midcubes)
    if (m.dim == 1) out.push_back(m.id);
  return out;
}

std::vector<Hyperplane> hyperplanes(const CubeComplex& x) {
  std::vector<Midcube> mids;
  std::map<Midcube, int> index;
  for (int d = 1; d <= x.dimension(); ++d)
    for (const auto& [id, c] : x.cubes(d))
      for (int a = 0; a < d; ++a) {
        index[Midcube{d, id, a}] = static_cast<int>(mids.size());
        mids.push_back(Midcube{d, id, a});
      }
  const int n = static_cast<int>(mids.size());
  std::vector<int> parent(n), par(n, 0);
  std::iota(parent.begin(), parent.end(), 0);
  // find with path parity to the root
  auto find = [&](int a) {
    int p = 0, r = a;
    while (parent[r] != r) {
      p ^= par[r];
      r = parent[r];
    }
    return std::pair<int, int>(r, p);
  };
  std::vector<std::tuple<int, int, int>> relations;
  for (int k = 0; k < n; ++k) {
    const auto& m = mids[k];
    if (m.dim < 2) continue;
    const auto& c = x.cube(m.dim, m.id);
    for (int j = 0; j < m.dim; ++j) {
      if (j == m.axis) continue;
      const int p = m.axis < j ? m.axis : m.axis - 1;
      for (int s = 0; s < 2; ++s) {
        const FaceRef& f = c.faces[2 * j + s];
        for (int t = 0; t < m.dim - 1; ++t)
          if (std::abs(f.alignment[t]) - 1 == p) {
            const int other = index.at(Midcube{m.dim - 1, f.target, t});
            const int rel = f.alignment[t] < 0 ? 1 : 0;
            relations.emplace_back(k, other, rel);
            auto [ra, pa] = find(k);
            auto [rb, pb] = find(other);
            if (ra != rb) {
              if (rb < ra) std::swap(ra, rb);
              parent[rb] = ra;
              par[rb] = pa ^ pb ^ rel;
            }
          }
      }
    }
  }
  std::map<int, Hyperplane> by_root;
  for (int k = 0; k < n; ++k) {
    auto [r, p] = find(k);
    auto& h = by_root[r];
    h.midcubes.push_back(mids[k]);
    h.parity.push_back(p);
  }
  std::set<int> one_sided;
  for (auto [a, b, rel] : relations) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if ((pa ^ pb) != rel) one_sided.insert(ra);
  }
  std::vector<std::pair<int, int>> order;  // (least dual edge, root)
  for (auto& [r, h] : by_root) {
    h.two_sided = !one_sided.count(r);
    int least = std::numeric_limits<int>::max();
    for (const auto& m : h.midcubes)
      if (m.dim == 1) least = std::min(least, m.id);
    order.emplace_back(least, r);
  }
  std::sort(order.begin(), order.end());
  std::map<int, int> hid;
  std::vector<Hyperplane> out;
  for (auto [least, r] : order) {
    hid[r] = static_cast<int>(out.size());
    out.push_back(std::move(by_root[r]));
    out.back().id = hid[r];
  }
  for (int d = 2; d <= x.dimension(); ++d)
    for (const auto& [id, c] : x.cubes(d)) {
      std::set<int> hs;
      for (int a = 0; a < d; ++a) {
        int h = hid.at(find(index.at(Midcube{d, id, a})).first);
        if (!hs.insert(h).second) out[h].embedded = false;
      }
    }
  return out;
}

std::vector<CubeComplex> connected_components(const CubeComplex& x) {
  const auto vs = x.ids(0);
  std::map<int, int> parent;
  for (int v : vs) parent[v] = v;
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& [id, e] : x.cubes(1)) {
    int a = find(e.faces[0].target), b = find(e.faces[1].target);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<int, CubeComplex> comps;
  for (int v : vs) comps[find(v)].add_vertex(v);
  for (int d = 1; d <= x.dimension(); ++d)
    for (const auto& [id, c] : x.cubes(d)) comps[find(x.corner_vertex(d, id, 0))].add_cube(d, id, c.faces);
  std::vector<CubeComplex> out;
  for (auto& [r, c] : comps) out.push_back(std::move(c));
  return out;
}

CutResult cut_along(const CubeComplex& x, const Hyperplane& h) {
  if (!h.two_sided) throw Error("cube_complex.one_sided", "cannot cut along a one-sided hyperplane");
  if (!h.embedded) throw Error("cube_complex.not_embedded", "cannot cut along a non-embedded hyperplane");
  CutResult out;
  CubeComplex rest = x;
  std::set<std::tuple<int, int, int>> att;
  for (std::size_t k = 0; k < h.midcubes.size(); ++k) {
    const auto& m = h.midcubes[k];
    const auto& c = x.cube(m.dim, m.id);
    for (int s = 0; s < 2; ++s) att.emplace(m.dim - 1, c.faces[2 * m.axis + s].target, s ^ h.parity[k]);
    out.hyperplane_euler += (m.dim % 2 == 1) ? 1 : -1;
  }
  for (const auto& m : h.midcubes) rest.remove_cube(m.dim, m.id);
  for (auto [d, id, side] : att) out.attachments.push_back(Attachment{d, id, side});
  out.components = connected_components(rest);
  return out;
}

CubeComplex collapse_free_faces(const CubeComplex& x, std::vector<CollapseStep>* trace) {
  CubeComplex cur = x;
  while (true) {
    std::map<std::pair<int, int>, int> refs;
    std::map<std::pair<int, int>, int> owner;
    for (int d = 1; d <= cur.dimension(); ++d)
      for (const auto& [id, c] : cur.cubes(d))
        for (const auto& f : c.faces) {
          ++refs[{d - 1, f.target}];
          owner[{d - 1, f.target}] = id;
        }
    std::optional<std::pair<int, int>> pick;
    for (const auto& [key, n] : refs) {
      if (n != 1) continue;
      const auto [fd, fid] = key;
      const int cid = owner[key];
      if (refs.count({fd + 1, cid})) continue;  // the coface must be maximal
      pick = key;
      break;
    }
    if (!pick) break;
    const int cid = owner[*pick];
    if (trace) trace->push_back(CollapseStep{pick->first, pick->second, cid});
    cur.remove_cube(pick->first + 1, cid);
    cur.remove_cube(pick->first, pick->second);
  }
  return cur;
}

std::vector<long long> smith_invariants(std::vector<std::vector<long long>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::vector<long long> out;
  std::size_t t = 0;
  auto min_pos = [&](std::size_t from) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = from; i < rows; ++i)
      for (std::size_t j = from; j < cols; ++j)
        if (m[i][j] != 0 && (!best || std::llabs(m[i][j]) < std::llabs(m[best->first][best->second])))
          best = {i, j};
    return best;
  };
  while (t < std::min(rows, cols)) {
    auto p = min_pos(t);
    if (!p) break;
    std::swap(m[t], m[p->first]);
    for (auto& row : m) std::swap(row[t], row[p->second]);
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        long long q = m[i][t] / m[t][t];
        if (q)
          for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t]) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        long long q = m[t][j] / m[t][t];
        if (q)
          for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j]) clean = false;
      }
      if (!clean) {
        // move the smallest remainder in row/column t into the pivot
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (m[i][t] && std::llabs(m[i][t]) < std::llabs(m[bi][bj])) bi = i, bj = t;
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[t][j] && std::llabs(m[t][j]) < std::llabs(m[bi][bj])) bi = t, bj = j;
        std::swap(m[t], m[bi]);
        for (auto& row : m) std::swap(row[t], row[bj]);
        continue;
      }
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    out.push_back(std::llabs(m[t][t]));
    ++t;
  }
  return out;
}

Homology1 homology_h1(const CubeComplex& x) {
  std::map<int, int> vi, ei, si;
  for (int v : x.ids(0)) vi[v] = static_cast<int>(vi.size());
  for (int e : x.ids(1)) ei[e] = static_cast<int>(ei.size());
  for (int s : x.ids(2)) si[s] = static_cast<int>(si.size());
  std::vector<std::vector<long long>> d1(vi.size(), std::vector<long long>(ei.size(), 0));
  for (const auto& [id, e] : x.cubes(1)) {
    d1[vi.at(e.faces[1].target)][ei.at(id)] += 1;
    d1[vi.at(e.faces[0].target)][ei.at(id)] -= 1;
  }
  std::vector<std::vector<long long>> d2(ei.size(), std::vector<long long>(si.size(), 0));
  for (const auto& [id, c] : x.cubes(2))
    for (int i = 0; i < 2; ++i)
      for (int s = 0; s < 2; ++s) {
        const auto& f = c.faces[2 * i + s];
        const int sgn = (i % 2 ? -1 : 1) * (s ? 1 : -1) * orientation(f.alignment);
        d2[ei.at(f.target)][si.at(id)] += sgn;
      }
  const auto inv1 = smith_invariants(d1);
  const auto inv2 = smith_invariants(d2);
  Homology1 h;
  h.rank = static_cast<int>(ei.size()) - static_cast<int>(inv1.size()) - static_cast<int>(inv2.size());
  for (long long t : inv2)
    if (t > 1) h.torsion.push_back(t);
  std::sort(h.torsion.begin(), h.torsion.end());
  return h;
}

std::string to_dot(const CubeComplex& x, const std::string& name) {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (int v : x.ids(0)) os << "  v" << v << ";\n";
  for (const auto& [id, e] : x.cubes(1))
    os << "  v" << e.faces[0].target << " -- v" << e.faces[1].target << " [label=\"e" << id << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace whcube
