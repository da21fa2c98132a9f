#pragma once

#include <cstdint>

#include "regmesh/mesh.hpp"

namespace regmesh {

/// Regular N-simple mesh: x_0 = (0, 0) and
/// x_{k-1} = (cos(2k pi / (N-1)), sin(2k pi / (N-1))) for k = 2..N,
/// cells (0, k, k+1) wrapping to (0, N-1, 1). Throws TooFewSymbols for N < 4.
TriMesh gen_simple_mesh(int n);

/// Unit square split into n x n squares, each cut into two triangles along
/// the (i, j)-(i+1, j+1) diagonal. Interior vertices get independent uniform
/// noise in [-jitter/n, jitter/n] per coordinate. Requires n >= 2 and
/// 0 <= jitter < 0.5.
TriMesh gen_grid_mesh(int n, double jitter, std::uint64_t seed);

/// Unit cube split into n^3 cubes, each cut into the 6 tets around its main
/// diagonal (Kuhn subdivision, conforming across cubes). Jitter as for the grid.
TetMesh gen_cube_tet_mesh(int n, double jitter, std::uint64_t seed);

/// Hexagonal patch of the unit equilateral lattice with `rings` rings around
/// the origin: 1 + 3 rings (rings + 1) vertices, 6 rings^2 triangles.
TriMesh gen_hex_patch(int rings);

/// Two regular tetrahedra glued on a face (unit edges).
TetMesh gen_regular_bipyramid();

}  // namespace regmesh
