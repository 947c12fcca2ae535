#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "whcube/cube_complex.hpp"
#include "whcube/simplicial.hpp"

namespace whcube {

/// Letters are +-(i+1) for basis element x_i.
using Word = std::vector<int>;

struct CyclicWord {
  int rank = 0;
  Word letters;
};

/// Parses "abAB" (uppercase = inverse) or space separated tokens "a b A B".
/// Rank defaults to the largest letter used. Throws words.bad_syntax.
Word parse_word(const std::string& text);
std::string format_word(const Word& w);

Word free_reduce(const Word& w);
Word cyclic_reduce(const Word& w);
bool is_cyclically_reduced(const Word& w);
Word inverse(const Word& w);

/// Throws words.not_reduced unless w is non-empty and cyclically reduced.
CyclicWord make_cyclic_word(const Word& w, int rank = 0);

/// Whitehead graph vertices: 2i for x_i, 2i+1 for x_i^-1.
struct Multigraph {
  int rank = 0;
  std::vector<std::pair<int, int>> edges;
  int vertex_count() const { return 2 * rank; }
};
int letter_vertex(int letter);
std::string vertex_name(int v);

Multigraph whitehead_graph(const CyclicWord& w);
/// One midpoint per edge; letter vertices keep ids 0..2n-1, midpoints follow.
SimplicialComplex subdivide(const Multigraph& g);

struct ShenitzerVerdict {
  bool no_free_splitting = false;
  std::string reason;
  std::optional<int> cut_vertex;  // Whitehead graph vertex
};
ShenitzerVerdict shenitzer_test(const CyclicWord& w);

/// images[i] is the image of x_i. At rank 2 the images are checked to form a
/// basis (determinant +-1 and Nielsen reduction to single letters); higher
/// ranks are taken on trust. Throws words.not_automorphism / words.not_reduced.
CyclicWord apply_automorphism(const CyclicWord& w, const std::vector<Word>& images);
bool is_basis_rank2(const Word& u, const Word& v);

/// Two rank-n roses joined by an l-square cylinder whose ends read w.
/// Vertices 0 and 1; rose edges 1..n and n+1..2n; vertical edges 2n+1+k.
CubeComplex double_complex(const CyclicWord& w);
/// Rose (vertex 0, edges 1..n) plus an l-gon (vertices 1..l, edges n+1..n+l)
/// joined by vertical edges n+l+1+k running from the circle to the rose.
CubeComplex mapping_cylinder_complex(const CyclicWord& w);

}  // namespace whcube
