#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "regmesh/mesh.hpp"

namespace regmesh {

using AnyMesh = std::variant<TriMesh, TetMesh>;

/// Single-file variant of the Triangle .node/.ele pair, 0-based:
///
///   N dim 0 1            node header: count, dimension 2 or 3, no attributes, markers
///   i x y [z] marker     one row per node, marker 1 on the boundary
///   M npc 0              element header: count, 3 or 4 nodes per cell
///   j v0 v1 v2 [v3]
///
/// '#' starts a comment. A node header with 0 markers lets the boundary be
/// detected from the cells. Throws ParseError (with line number),
/// IndexOutOfRange, or the validation errors of Mesh::build.
AnyMesh parse_mesh(std::string_view text);

/// Coordinates with 17 significant digits, LF line endings; parse_mesh gives
/// back an identical mesh.
template <int Dim>
std::string serialize_mesh(const Mesh<Dim>& mesh);

std::string serialize_mesh(const AnyMesh& mesh);

AnyMesh read_mesh_file(const std::filesystem::path& path);

template <int Dim>
void write_mesh_file(const std::filesystem::path& path, const Mesh<Dim>& mesh);

/// Writes `content` verbatim (binary mode, so LF stays LF). Throws Error on failure.
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace regmesh
