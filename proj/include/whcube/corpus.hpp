#pragma once

#include <string>
#include <vector>

#include "whcube/cube_complex.hpp"

namespace whcube::corpus {

CubeComplex torus();
CubeComplex three_torus();
/// One vertex with n loops.
CubeComplex rose(int n);
/// Torus with an interval hanging off its vertex.
CubeComplex torus_wedge_interval();
/// Torus with an extra loop at its vertex.
CubeComplex torus_wedge_circle();
/// The six squares of a 3-cube boundary, no 3-cell: links are hollow triangles.
CubeComplex cube_boundary();
/// An m x n block of unit squares with distinct vertices (a planar disk).
CubeComplex grid_block(int m, int n);

struct Named {
  std::string name;
  CubeComplex complex;
};
/// Torus, 3-torus, roses, the doubles and mapping cylinders over the two
/// example words, and the wedges.
std::vector<Named> standard();

}  // namespace whcube::corpus
