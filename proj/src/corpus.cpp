#include "whcube/corpus.hpp"

#include <map>

#include "whcube/words.hpp"

namespace whcube::corpus {

CubeComplex torus() {
  CubeComplex x;
  x.add_vertex(0);
  x.add_edge(1, 0, 0);
  x.add_edge(2, 0, 0);
  x.add_square(1, {1, 2, -1, -2});
  return x;
}

CubeComplex three_torus() {
  CubeComplex x;
  x.add_vertex(0);
  for (int e = 1; e <= 3; ++e) x.add_edge(e, 0, 0);
  x.add_square(1, {1, 2, -1, -2});
  x.add_square(2, {1, 3, -1, -3});
  x.add_square(3, {2, 3, -2, -3});
  std::vector<FaceRef> faces;
  for (int sq : {3, 2, 1})
    for (int side = 0; side < 2; ++side) faces.push_back(FaceRef{sq, {1, 2}});
  x.add_cube(3, 1, faces);
  return x;
}

CubeComplex rose(int n) {
  CubeComplex x;
  x.add_vertex(0);
  for (int e = 1; e <= n; ++e) x.add_edge(e, 0, 0);
  return x;
}

CubeComplex torus_wedge_interval() {
  CubeComplex x = torus();
  x.add_vertex(1);
  x.add_edge(3, 0, 1);
  return x;
}

CubeComplex torus_wedge_circle() {
  CubeComplex x = torus();
  x.add_edge(3, 0, 0);
  return x;
}

CubeComplex cube_boundary() {
  CubeComplex x;
  for (int v = 0; v < 8; ++v) x.add_vertex(v);
  std::map<std::pair<int, int>, int> edge;  // (base vertex, axis) -> id
  int next = 1;
  for (int a = 0; a < 3; ++a)
    for (int v = 0; v < 8; ++v)
      if (!(v & (1 << a))) {
        edge[{v, a}] = next;
        x.add_edge(next++, v, v | (1 << a));
      }
  int sq = 1;
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      const int c = 3 - a - b;
      for (int side = 0; side < 2; ++side) {
        const int base = side << c;
        x.add_square(sq++, {edge[{base, a}], edge[{base | (1 << a), b}], -edge[{base | (1 << b), a}],
                            -edge[{base, b}]});
      }
    }
  return x;
}

CubeComplex grid_block(int m, int n) {
  CubeComplex x;
  auto vid = [&](int i, int j) { return i * (n + 1) + j; };
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= n; ++j) x.add_vertex(vid(i, j));
  std::map<std::pair<int, int>, int> h, v;
  int next = 1;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) {
      h[{i, j}] = next;
      x.add_edge(next++, vid(i, j), vid(i + 1, j));
    }
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j < n; ++j) {
      v[{i, j}] = next;
      x.add_edge(next++, vid(i, j), vid(i, j + 1));
    }
  int sq = 1;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) x.add_square(sq++, {h[{i, j}], v[{i + 1, j}], -h[{i, j + 1}], -v[{i, j}]});
  return x;
}

std::vector<Named> standard() {
  const auto w = make_cyclic_word(parse_word("ababbabbb"));
  const auto wp = make_cyclic_word(parse_word("aBaab"));
  return {
      {"torus", torus()},
      {"three_torus", three_torus()},
      {"rose2", rose(2)},
      {"rose3", rose(3)},
      {"torus_wedge_interval", torus_wedge_interval()},
      {"torus_wedge_circle", torus_wedge_circle()},
      {"double_w", double_complex(w)},
      {"double_wprime", double_complex(wp)},
      {"cylinder_w", mapping_cylinder_complex(w)},
      {"cylinder_wprime", mapping_cylinder_complex(wp)},
  };
}

}  // namespace whcube::corpus
