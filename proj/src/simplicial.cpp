#include "whcube/simplicial.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "whcube/error.hpp"

namespace whcube {

namespace {

// Union-find over arbitrary vertex ids.
class Dsu {
 public:
  explicit Dsu(const std::vector<int>& ids) {
    for (int v : ids) parent_[v] = v;
  }
  int find(int v) {
    int r = v;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[v] != r) {
      int next = parent_[v];
      parent_[v] = r;
      v = next;
    }
    return r;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::map<int, int> parent_;
};

bool intersects(const Simplex& s, const std::set<int>& b) {
  for (int v : s)
    if (b.count(v)) return true;
  return false;
}

}  // namespace

void SimplicialComplex::add_simplex(Simplex s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.empty() || simplices_.count(s)) return;
  const std::size_t n = s.size();
  // every non-empty subset
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Simplex face;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) face.push_back(s[i]);
    simplices_.insert(std::move(face));
  }
}

std::optional<int> SimplicialComplex::label(int v) const {
  auto it = labels_.find(v);
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

bool SimplicialComplex::adjacent(int u, int v) const {
  if (u == v) return false;
  return simplices_.count(u < v ? Simplex{u, v} : Simplex{v, u}) > 0;
}

std::vector<int> SimplicialComplex::vertices() const {
  std::vector<int> out;
  for (const auto& s : simplices_)
    if (s.size() == 1) out.push_back(s[0]);
  return out;
}

std::vector<std::pair<int, int>> SimplicialComplex::edges() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& s : simplices_)
    if (s.size() == 2) out.emplace_back(s[0], s[1]);
  return out;
}

std::vector<Simplex> SimplicialComplex::simplices() const {
  std::vector<Simplex> out(simplices_.begin(), simplices_.end());
  std::stable_sort(out.begin(), out.end(), [](const Simplex& a, const Simplex& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<int> SimplicialComplex::neighbours(int v) const {
  std::vector<int> out;
  for (const auto& s : simplices_)
    if (s.size() == 2) {
      if (s[0] == v) out.push_back(s[1]);
      if (s[1] == v) out.push_back(s[0]);
    }
  std::sort(out.begin(), out.end());
  return out;
}

int SimplicialComplex::dimension() const {
  int d = -1;
  for (const auto& s : simplices_) d = std::max(d, static_cast<int>(s.size()) - 1);
  return d;
}

SimplicialComplex SimplicialComplex::induced(const std::set<int>& vs) const {
  SimplicialComplex out;
  for (const auto& s : simplices_) {
    bool inside = std::all_of(s.begin(), s.end(), [&](int v) { return vs.count(v) > 0; });
    if (inside) out.simplices_.insert(s);
  }
  for (const auto& [v, l] : labels_)
    if (vs.count(v) && has_vertex(v)) out.labels_[v] = l;
  return out;
}

SimplicialComplex SimplicialComplex::link(int v) const {
  SimplicialComplex out;
  for (const auto& s : simplices_) {
    if (!std::binary_search(s.begin(), s.end(), v) || s.size() < 2) continue;
    Simplex rest;
    for (int w : s)
      if (w != v) rest.push_back(w);
    out.simplices_.insert(rest);
  }
  for (const auto& [w, l] : labels_)
    if (out.has_vertex(w)) out.labels_[w] = l;
  return out;
}

std::vector<std::vector<int>> components(const SimplicialComplex& s) {
  const auto vs = s.vertices();
  Dsu dsu(vs);
  for (const auto& [u, v] : s.edges()) dsu.unite(u, v);
  std::map<int, std::vector<int>> by_root;
  for (int v : vs) by_root[dsu.find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : by_root) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

int betti0(const SimplicialComplex& s) { return static_cast<int>(components(s).size()); }

SimplicialComplex remove_open_star(const SimplicialComplex& s, const std::set<int>& b) {
  SimplicialComplex out;
  for (const auto& sigma : s.simplex_set())
    if (!intersects(sigma, b)) out.add_simplex(sigma);
  for (const auto& [v, l] : s.labels())
    if (out.has_vertex(v)) out.set_label(v, l);
  return out;
}

SimplicialComplex remove_open_star(const SimplicialComplex& s, const SimplicialComplex& b) {
  std::set<int> bv;
  for (int v : b.vertices()) bv.insert(v);
  for (const auto& sigma : b.simplex_set())
    if (!s.has_simplex(sigma))
      throw Error("simplicial.not_full", "B is not a subcomplex of S");
  for (const auto& sigma : s.simplex_set()) {
    bool inside = std::all_of(sigma.begin(), sigma.end(), [&](int v) { return bv.count(v) > 0; });
    if (inside && !b.has_simplex(sigma))
      throw Error("simplicial.not_full", "B is not a full subcomplex of S");
  }
  return remove_open_star(s, bv);
}

bool is_cut_set(const SimplicialComplex& s, const std::set<int>& vs) {
  for (int u : vs)
    for (int v : vs)
      if (u < v && s.adjacent(u, v))
        throw Error("simplicial.adjacent", "cut set vertices must be pairwise non-adjacent");
  return betti0(remove_open_star(s, vs)) >= 2;
}

std::optional<CutWitness> min_cut_cardinality(const SimplicialComplex& s, int k_max) {
  if (betti0(s) > 1)
    throw Error("simplicial.disconnected", "min_cut_cardinality needs a connected complex");
  const auto vs = s.vertices();
  const int n = static_cast<int>(vs.size());
  std::vector<int> chosen;
  std::optional<CutWitness> found;
  // Depth-first over increasing index tuples of pairwise non-adjacent
  // vertices; this visits k-subsets in lexicographic order.
  std::function<bool(int, int)> search = [&](int start, int k) -> bool {
    if (static_cast<int>(chosen.size()) == k) {
      std::set<int> set(chosen.begin(), chosen.end());
      if (betti0(remove_open_star(s, set)) >= 2) {
        found = CutWitness{k, chosen};
        return true;
      }
      return false;
    }
    for (int i = start; i < n; ++i) {
      bool ok = true;
      for (int c : chosen)
        if (s.adjacent(c, vs[i])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(vs[i]);
      if (search(i + 1, k)) return true;
      chosen.pop_back();
    }
    return false;
  };
  for (int k = 1; k <= k_max; ++k) {
    chosen.clear();
    if (search(0, k)) return found;
  }
  return std::nullopt;
}

std::vector<std::pair<int, int>> cut_pairs(const SimplicialComplex& s) {
  std::vector<std::pair<int, int>> out;
  const auto vs = s.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (s.adjacent(vs[i], vs[j])) continue;
      if (betti0(remove_open_star(s, std::set<int>{vs[i], vs[j]})) >= 2)
        out.emplace_back(vs[i], vs[j]);
    }
  return out;
}

std::optional<Simplex> find_cut_simplex(const SimplicialComplex& s) {
  if (betti0(s) > 1)
    throw Error("simplicial.disconnected", "find_cut_simplex needs a connected complex");
  for (const auto& sigma : s.simplices()) {
    std::set<int> b(sigma.begin(), sigma.end());
    if (betti0(remove_open_star(s, b)) >= 2) return sigma;
  }
  return std::nullopt;
}

ConnectedSum connected_sum(const SimplicialComplex& a, int a_vertex, const SimplicialComplex& b,
                           int b_vertex, const std::map<int, int>& phi) {
  const auto lka = a.link(a_vertex);
  const auto lkb = b.link(b_vertex);
  // phi must be a bijection of vertex sets carrying simplices onto simplices
  const auto va = lka.vertices();
  if (phi.size() != va.size() || lkb.vertices().size() != va.size())
    throw Error("simplicial.bad_link_map", "phi is not a bijection of links");
  std::set<int> image;
  for (int v : va) {
    auto it = phi.find(v);
    if (it == phi.end() || !lkb.has_vertex(it->second))
      throw Error("simplicial.bad_link_map", "phi is not defined on the link");
    image.insert(it->second);
  }
  if (image.size() != va.size())
    throw Error("simplicial.bad_link_map", "phi is not injective");
  if (relabel(lka, phi).simplex_set() != lkb.simplex_set())
    throw Error("simplicial.bad_link_map", "phi is not a simplicial isomorphism of links");

  ConnectedSum out;
  for (const auto& sigma : a.simplex_set())
    if (!std::binary_search(sigma.begin(), sigma.end(), a_vertex)) out.complex.add_simplex(sigma);
  for (const auto& [v, l] : a.labels())
    if (v != a_vertex) out.complex.set_label(v, l);

  std::map<int, int> inverse;
  for (const auto& [x, y] : phi) inverse[y] = x;
  int next = 0;
  for (int v : a.vertices()) next = std::max(next, v + 1);
  for (int v : b.vertices()) {
    if (v == b_vertex) continue;
    auto it = inverse.find(v);
    out.b_vertex_map[v] = it != inverse.end() ? it->second : next++;
  }
  for (const auto& sigma : b.simplex_set()) {
    if (std::binary_search(sigma.begin(), sigma.end(), b_vertex)) continue;
    Simplex mapped;
    for (int v : sigma) mapped.push_back(out.b_vertex_map.at(v));
    out.complex.add_simplex(mapped);
  }
  for (const auto& [v, l] : b.labels()) {
    if (v == b_vertex || inverse.count(v)) continue;
    out.complex.set_label(out.b_vertex_map.at(v), l);
  }
  // isolated A vertices other than a survive; make sure they are present
  for (int v : a.vertices())
    if (v != a_vertex) out.complex.add_vertex(v);
  return out;
}

bool is_flag(const SimplicialComplex& s) {
  return flag_complete(s).simplex_set() == s.simplex_set();
}

SimplicialComplex flag_complete(const std::vector<int>& vertices,
                                const std::vector<std::pair<int, int>>& edges) {
  std::map<int, std::set<int>> adj;
  for (int v : vertices) adj[v];
  for (auto [u, v] : edges) {
    if (u == v) continue;
    adj[u].insert(v);
    adj[v].insert(u);
  }
  SimplicialComplex out;
  for (int v : vertices) out.add_vertex(v);
  // extend cliques by larger vertices only, so each clique is built once
  std::function<void(Simplex&, const std::vector<int>&)> grow = [&](Simplex& clique,
                                                                    const std::vector<int>& cands) {
    out.add_simplex(clique);
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const int w = cands[i];
      std::vector<int> next;
      for (std::size_t j = i + 1; j < cands.size(); ++j)
        if (adj[w].count(cands[j])) next.push_back(cands[j]);
      clique.push_back(w);
      grow(clique, next);
      clique.pop_back();
    }
  };
  for (int v : vertices) {
    std::vector<int> cands;
    for (int w : adj[v])
      if (w > v) cands.push_back(w);
    Simplex clique{v};
    grow(clique, cands);
  }
  return out;
}

SimplicialComplex flag_complete(const SimplicialComplex& s) {
  auto out = flag_complete(s.vertices(), s.edges());
  for (const auto& [v, l] : s.labels()) out.set_label(v, l);
  return out;
}

std::vector<ZeroCohomologyClass> reduced_h0_classes(const SimplicialComplex& s) {
  const auto comps = components(s);
  std::vector<ZeroCohomologyClass> out;
  const std::size_t m = comps.size();
  if (m < 2) return out;
  // subsets of components 1..m-1 (never containing component 0), by bitmask
  for (unsigned long long mask = 1; mask < (1ull << (m - 1)); ++mask) {
    ZeroCohomologyClass c;
    for (std::size_t i = 1; i < m; ++i)
      if (mask & (1ull << (i - 1))) {
        c.components.push_back(static_cast<int>(i));
        c.support.insert(comps[i].begin(), comps[i].end());
      }
    out.push_back(std::move(c));
  }
  return out;
}

SimplicialComplex relabel(const SimplicialComplex& s, const std::map<int, int>& m) {
  SimplicialComplex out;
  for (const auto& sigma : s.simplex_set()) {
    Simplex t;
    for (int v : sigma) t.push_back(m.at(v));
    out.add_simplex(t);
  }
  for (const auto& [v, l] : s.labels())
    if (m.count(v)) out.set_label(m.at(v), l);
  return out;
}

std::optional<std::map<int, int>> isomorphism(const SimplicialComplex& a, const SimplicialComplex& b,
                                              bool respect_labels) {
  if (a.size() != b.size()) return std::nullopt;
  const auto va = a.vertices();
  const auto vb = b.vertices();
  if (va.size() != vb.size()) return std::nullopt;

  // vertex invariant: (label, number of simplices through v per dimension)
  auto invariant = [&](const SimplicialComplex& s, int v) {
    std::vector<int> inv;
    inv.push_back(respect_labels ? s.label(v).value_or(-1) : 0);
    std::vector<int> counts(static_cast<std::size_t>(std::max(1, s.dimension() + 1)), 0);
    for (const auto& sigma : s.simplex_set())
      if (std::binary_search(sigma.begin(), sigma.end(), v)) ++counts[sigma.size() - 1];
    inv.insert(inv.end(), counts.begin(), counts.end());
    return inv;
  };
  std::map<int, std::vector<int>> inv_a, inv_b;
  for (int v : va) inv_a[v] = invariant(a, v);
  for (int v : vb) inv_b[v] = invariant(b, v);
  {
    std::vector<std::vector<int>> ia, ib;
    for (auto& [v, i] : inv_a) ia.push_back(i);
    for (auto& [v, i] : inv_b) ib.push_back(i);
    std::sort(ia.begin(), ia.end());
    std::sort(ib.begin(), ib.end());
    if (ia != ib) return std::nullopt;
  }

  // order A's vertices so each (after the first of a component) has an
  // earlier neighbour: BFS from least ids
  std::vector<int> order;
  std::set<int> seen;
  for (int root : va) {
    if (seen.count(root)) continue;
    std::vector<int> queue{root};
    seen.insert(root);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      order.push_back(queue[i]);
      for (int w : a.neighbours(queue[i]))
        if (seen.insert(w).second) queue.push_back(w);
    }
  }

  std::map<int, int> map;
  std::set<int> used;
  std::function<bool(std::size_t)> extend = [&](std::size_t idx) -> bool {
    if (idx == order.size()) return relabel(a, map).simplex_set() == b.simplex_set();
    const int x = order[idx];
    for (int y : vb) {
      if (used.count(y) || inv_a[x] != inv_b[y]) continue;
      bool ok = true;
      for (const auto& [px, py] : map)
        if (a.adjacent(px, x) != b.adjacent(py, y)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      map[x] = y;
      used.insert(y);
      if (extend(idx + 1)) return true;
      map.erase(x);
      used.erase(y);
    }
    return false;
  };
  if (extend(0)) return map;
  return std::nullopt;
}

std::string to_dot(const SimplicialComplex& s, const std::string& name) {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (int v : s.vertices()) {
    os << "  v" << v;
    if (auto l = s.label(v)) os << " [label=\"" << *l << "\"]";
    os << ";\n";
  }
  for (auto [u, v] : s.edges()) os << "  v" << u << " -- v" << v << ";\n";
  os << "}\n";
  return os.str();
}

nlohmann::json to_json(const SimplicialComplex& s) {
  nlohmann::json j;
  j["vertices"] = s.vertices();
  // maximal simplices suffice to reconstruct the complex
  std::vector<Simplex> maximal;
  for (const auto& sigma : s.simplices()) {
    bool is_max = true;
    for (int v : s.vertices()) {
      if (std::binary_search(sigma.begin(), sigma.end(), v)) continue;
      Simplex t = sigma;
      t.insert(std::upper_bound(t.begin(), t.end(), v), v);
      if (s.has_simplex(t)) {
        is_max = false;
        break;
      }
    }
    if (is_max) maximal.push_back(sigma);
  }
  j["simplices"] = maximal;
  nlohmann::json labels = nlohmann::json::object();
  for (const auto& [v, l] : s.labels()) labels[std::to_string(v)] = l;
  j["labels"] = labels;
  return j;
}

SimplicialComplex simplicial_from_json(const nlohmann::json& j) {
  SimplicialComplex s;
  try {
    for (int v : j.at("vertices").get<std::vector<int>>()) s.add_vertex(v);
    for (const auto& sigma : j.at("simplices")) s.add_simplex(sigma.get<Simplex>());
    if (j.contains("labels"))
      for (const auto& [k, l] : j.at("labels").items()) s.set_label(std::stoi(k), l.get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw Error("simplicial.bad_json", e.what());
  }
  return s;
}

}  // namespace whcube
