#include "whcube/words.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

#include "whcube/error.hpp"

namespace whcube {

namespace {

int letter_from_char(char c) {
  if (c >= 'a' && c <= 'z') return c - 'a' + 1;
  if (c >= 'A' && c <= 'Z') return -(c - 'A' + 1);
  throw Error("words.bad_syntax", std::string("unexpected character '") + c + "'");
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return free_reduce(out);
}

}  // namespace

Word parse_word(const std::string& text) {
  Word out;
  const bool spaced = text.find_first_of(" \t") != std::string::npos;
  if (!spaced) {
    for (char c : text) out.push_back(letter_from_char(c));
    return out;
  }
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok.size() == 1) {
      out.push_back(letter_from_char(tok[0]));
    } else if (tok.size() == 4 && tok.substr(1) == "^-1" && std::islower(static_cast<unsigned char>(tok[0]))) {
      out.push_back(-letter_from_char(tok[0]));
    } else {
      throw Error("words.bad_syntax", "bad token '" + tok + "'");
    }
  }
  return out;
}

std::string format_word(const Word& w) {
  std::string s;
  for (int l : w) s.push_back(l > 0 ? static_cast<char>('a' + l - 1) : static_cast<char>('A' - l - 1));
  return s;
}

Word free_reduce(const Word& w) {
  Word out;
  for (int l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t i = 0, j = r.size();
  while (j - i >= 2 && r[i] == -r[j - 1]) ++i, --j;
  return Word(r.begin() + static_cast<long>(i), r.begin() + static_cast<long>(j));
}

bool is_cyclically_reduced(const Word& w) {
  if (free_reduce(w) != w) return false;
  return w.size() < 2 || w.front() != -w.back();
}

Word inverse(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  return out;
}

CyclicWord make_cyclic_word(const Word& w, int rank) {
  if (w.empty()) throw Error("words.empty", "word is empty");
  if (!is_cyclically_reduced(w)) throw Error("words.not_reduced", format_word(w) + " is not cyclically reduced");
  int used = 0;
  for (int l : w) used = std::max(used, std::abs(l));
  if (rank == 0) rank = used;
  if (used > rank) throw Error("words.bad_rank", "word uses letters beyond the given rank");
  return CyclicWord{rank, w};
}

int letter_vertex(int letter) { return 2 * (std::abs(letter) - 1) + (letter < 0 ? 1 : 0); }

std::string vertex_name(int v) {
  std::string s(1, static_cast<char>('a' + v / 2));
  if (v % 2) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

Multigraph whitehead_graph(const CyclicWord& w) {
  if (w.letters.empty()) throw Error("words.empty", "word is empty");
  Multigraph g;
  g.rank = w.rank;
  const std::size_t l = w.letters.size();
  for (std::size_t k = 0; k < l; ++k) {
    const int x = w.letters[k];
    const int y = w.letters[(k + 1) % l];
    int a = letter_vertex(-x), b = letter_vertex(y);
    if (a > b) std::swap(a, b);
    g.edges.emplace_back(a, b);
  }
  return g;
}

SimplicialComplex subdivide(const Multigraph& g) {
  SimplicialComplex s;
  for (int v = 0; v < g.vertex_count(); ++v) s.add_vertex(v);
  int mid = g.vertex_count();
  for (auto [a, b] : g.edges) {
    s.add_simplex({a, mid});
    s.add_simplex({b, mid});
    ++mid;
  }
  return s;
}

ShenitzerVerdict shenitzer_test(const CyclicWord& w) {
  const auto s = subdivide(whitehead_graph(w));
  ShenitzerVerdict v;
  if (betti0(s) > 1) {
    v.reason = "Whitehead graph is disconnected";
    return v;
  }
  for (int x : s.vertices())
    if (betti0(remove_open_star(s, std::set<int>{x})) >= 2) {
      v.cut_vertex = x;
      v.reason = x < 2 * w.rank ? "cut vertex " + vertex_name(x) : "cut vertex at a subdivision point";
      return v;
    }
  v.no_free_splitting = true;
  v.reason = "Whitehead graph is connected without cut vertices";
  return v;
}

bool is_basis_rank2(const Word& u0, const Word& v0) {
  Word u = free_reduce(u0), v = free_reduce(v0);
  for (const Word* w : {&u, &v})
    for (int l : *w)
      if (std::abs(l) > 2) return false;
  auto exponent = [](const Word& w, int gen) {
    int e = 0;
    for (int l : w)
      if (std::abs(l) == gen) e += l > 0 ? 1 : -1;
    return e;
  };
  const int det = exponent(u, 1) * exponent(v, 2) - exponent(u, 2) * exponent(v, 1);
  if (det != 1 && det != -1) return false;
  while (true) {
    const std::size_t total = u.size() + v.size();
    const Word cands_u[] = {concat(u, v), concat(u, inverse(v)), concat(v, u), concat(inverse(v), u)};
    const Word cands_v[] = {concat(v, u), concat(v, inverse(u)), concat(u, v), concat(inverse(u), v)};
    bool moved = false;
    for (const auto& c : cands_u)
      if (!c.empty() && c.size() + v.size() < total) {
        u = c;
        moved = true;
        break;
      }
    if (!moved)
      for (const auto& c : cands_v)
        if (!c.empty() && c.size() + u.size() < total) {
          v = c;
          moved = true;
          break;
        }
    if (!moved) break;
  }
  return u.size() == 1 && v.size() == 1 && std::abs(u[0]) != std::abs(v[0]);
}

CyclicWord apply_automorphism(const CyclicWord& w, const std::vector<Word>& images) {
  if (!is_cyclically_reduced(w.letters) || w.letters.empty())
    throw Error("words.not_reduced", "input word is not cyclically reduced");
  if (static_cast<int>(images.size()) != w.rank)
    throw Error("words.not_automorphism", "need one image per basis element");
  for (const auto& im : images)
    if (im.empty() || free_reduce(im) != im)
      throw Error("words.not_reduced", "images must be non-empty reduced words");
  if (w.rank == 2 && !is_basis_rank2(images[0], images[1]))
    throw Error("words.not_automorphism", "images do not form a basis");
  Word out;
  for (int l : w.letters) {
    const Word& im = images[std::abs(l) - 1];
    if (l > 0)
      out.insert(out.end(), im.begin(), im.end());
    else {
      Word inv = inverse(im);
      out.insert(out.end(), inv.begin(), inv.end());
    }
  }
  return CyclicWord{w.rank, cyclic_reduce(out)};
}

CubeComplex double_complex(const CyclicWord& w) {
  const int n = w.rank;
  const int l = static_cast<int>(w.letters.size());
  CubeComplex x;
  x.add_vertex(0);
  x.add_vertex(1);
  for (int i = 1; i <= n; ++i) x.add_edge(i, 0, 0);
  for (int i = 1; i <= n; ++i) x.add_edge(n + i, 1, 1);
  auto t = [&](int k) { return 2 * n + 1 + ((k % l) + l) % l; };
  for (int k = 0; k < l; ++k) x.add_edge(t(k), 0, 1);
  for (int k = 0; k < l; ++k) {
    const int a = w.letters[k];
    const int upper = a > 0 ? a + n : a - n;
    x.add_square(k + 1, {a, t(k + 1), -upper, -t(k)});
  }
  x.validate();
  return x;
}

CubeComplex mapping_cylinder_complex(const CyclicWord& w) {
  const int n = w.rank;
  const int l = static_cast<int>(w.letters.size());
  CubeComplex x;
  x.add_vertex(0);
  for (int k = 0; k < l; ++k) x.add_vertex(k + 1);
  for (int i = 1; i <= n; ++i) x.add_edge(i, 0, 0);
  auto c = [&](int k) { return ((k % l) + l) % l + 1; };
  auto circle = [&](int k) { return n + c(k); };
  auto t = [&](int k) { return n + l + c(k); };
  for (int k = 0; k < l; ++k) x.add_edge(circle(k), c(k), c(k + 1));
  for (int k = 0; k < l; ++k) x.add_edge(t(k), c(k), 0);
  for (int k = 0; k < l; ++k) x.add_square(k + 1, {circle(k), t(k + 1), -w.letters[k], -t(k)});
  x.validate();
  return x;
}

}  // namespace whcube
