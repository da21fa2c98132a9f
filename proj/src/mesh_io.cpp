#include "regmesh/mesh_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "regmesh/errors.hpp"

namespace regmesh {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

// Non-empty lines with comments stripped, split on blanks.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    Line l{number, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      if (j > i) l.tokens.push_back(line.substr(i, j - i));
      i = j;
    }
    if (!l.tokens.empty()) lines.push_back(std::move(l));
  }
  return lines;
}

template <typename T>
T parse_number(std::string_view tok, std::size_t line, const char* what) {
  T value{};
  const char* end = tok.data() + tok.size();
  // from_chars rejects a leading '+', which %g never writes but people do.
  const char* begin = tok.data();
  if (tok.size() > 1 && tok[0] == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(line, fmt::format("expected {}, got '{}'", what, tok));
  }
  return value;
}

void expect_tokens(const Line& l, std::size_t n, const char* what) {
  if (l.tokens.size() != n) {
    throw ParseError(l.number, fmt::format("{} needs {} fields, got {}", what, n, l.tokens.size()));
  }
}

template <int Dim>
AnyMesh assemble(const std::vector<Line>& lines, std::size_t node_count, bool has_markers) {
  std::vector<Point<Dim>> pts(node_count);
  std::vector<bool> boundary(node_count, false);
  const std::size_t node_fields = 1 + Dim + (has_markers ? 1 : 0);
  for (std::size_t i = 0; i < node_count; ++i) {
    const Line& l = lines[1 + i];
    expect_tokens(l, node_fields, "node row");
    const auto id = parse_number<long long>(l.tokens[0], l.number, "node index");
    if (id != static_cast<long long>(i)) {
      throw ParseError(l.number, fmt::format("node index {} out of sequence, expected {}", id, i));
    }
    for (int d = 0; d < Dim; ++d) pts[i][d] = parse_number<double>(l.tokens[1 + d], l.number, "coordinate");
    if (!pts[i].allFinite()) throw ParseError(l.number, "non-finite coordinate");
    if (has_markers) {
      const auto marker = parse_number<long long>(l.tokens[1 + Dim], l.number, "boundary marker");
      boundary[i] = marker != 0;
    }
  }

  const std::size_t header = 1 + node_count;
  if (lines.size() <= header) throw ParseError(lines.back().number + 1, "missing element section");
  const Line& eh = lines[header];
  if (eh.tokens.size() < 2 || eh.tokens.size() > 3) {
    throw ParseError(eh.number, "element header must be '<count> <nodes-per-cell> [0]'");
  }
  const auto cell_count = parse_number<long long>(eh.tokens[0], eh.number, "cell count");
  const auto npc = parse_number<int>(eh.tokens[1], eh.number, "nodes per cell");
  if (eh.tokens.size() == 3 && parse_number<int>(eh.tokens[2], eh.number, "attribute count") != 0) {
    throw ParseError(eh.number, "element attributes are not supported");
  }
  if (cell_count < 0) throw ParseError(eh.number, "negative cell count");
  if (npc != Dim + 1) {
    throw ParseError(eh.number, fmt::format("{}D nodes need {} nodes per cell, got {}", Dim, Dim + 1, npc));
  }
  if (lines.size() != header + 1 + static_cast<std::size_t>(cell_count)) {
    const std::size_t found = lines.size() - header - 1;
    const std::size_t at = found < static_cast<std::size_t>(cell_count) ? lines.back().number + 1
                                                                        : lines[header + 1 + cell_count].number;
    throw ParseError(at, fmt::format("element section declares {} cells, found {}", cell_count, found));
  }

  std::vector<Cell<Dim>> cells(static_cast<std::size_t>(cell_count));
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const Line& l = lines[header + 1 + c];
    expect_tokens(l, 2 + Dim, "element row");
    const auto id = parse_number<long long>(l.tokens[0], l.number, "cell index");
    if (id != static_cast<long long>(c)) {
      throw ParseError(l.number, fmt::format("cell index {} out of sequence, expected {}", id, c));
    }
    for (int k = 0; k <= Dim; ++k) {
      const auto v = parse_number<long long>(l.tokens[1 + k], l.number, "vertex index");
      if (v < 0 || v >= static_cast<long long>(node_count)) {
        throw IndexOutOfRange(l.number, static_cast<Index>(std::clamp<long long>(v, INT32_MIN, INT32_MAX)),
                              node_count);
      }
      cells[c][k] = static_cast<Index>(v);
    }
  }
  std::optional<std::vector<bool>> mask;
  if (has_markers) mask = std::move(boundary);
  return Mesh<Dim>::build(std::move(pts), std::move(cells), std::move(mask));
}

}  // namespace

AnyMesh parse_mesh(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty mesh file");
  const Line& nh = lines[0];
  if (nh.tokens.size() < 2 || nh.tokens.size() > 4) {
    throw ParseError(nh.number, "node header must be '<count> <dim> [0 [markers]]'");
  }
  const auto node_count = parse_number<long long>(nh.tokens[0], nh.number, "node count");
  const auto dim = parse_number<int>(nh.tokens[1], nh.number, "dimension");
  if (node_count < 0) throw ParseError(nh.number, "negative node count");
  if (node_count > INT32_MAX) throw ParseError(nh.number, "too many nodes");
  if (dim != 2 && dim != 3) throw ParseError(nh.number, fmt::format("dimension must be 2 or 3, got {}", dim));
  if (nh.tokens.size() >= 3 && parse_number<int>(nh.tokens[2], nh.number, "attribute count") != 0) {
    throw ParseError(nh.number, "node attributes are not supported");
  }
  bool has_markers = false;
  if (nh.tokens.size() == 4) {
    const int m = parse_number<int>(nh.tokens[3], nh.number, "marker count");
    if (m != 0 && m != 1) throw ParseError(nh.number, "marker count must be 0 or 1");
    has_markers = m == 1;
  }
  if (lines.size() < 1 + static_cast<std::size_t>(node_count)) {
    throw ParseError(lines.back().number + 1,
                     fmt::format("node section declares {} nodes, found {}", node_count, lines.size() - 1));
  }
  const auto n = static_cast<std::size_t>(node_count);
  return dim == 2 ? assemble<2>(lines, n, has_markers) : assemble<3>(lines, n, has_markers);
}

template <int Dim>
std::string serialize_mesh(const Mesh<Dim>& mesh) {
  std::string out;
  auto it = std::back_inserter(out);
  fmt::format_to(it, "{} {} 0 1\n", mesh.vertex_count(), Dim);
  for (std::size_t i = 0; i < mesh.vertex_count(); ++i) {
    fmt::format_to(it, "{}", i);
    for (int d = 0; d < Dim; ++d) fmt::format_to(it, " {:.17g}", mesh.vertices()[i][d]);
    fmt::format_to(it, " {}\n", mesh.boundary_mask()[i] ? 1 : 0);
  }
  fmt::format_to(it, "{} {} 0\n", mesh.cell_count(), Dim + 1);
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    fmt::format_to(it, "{}", c);
    for (Index v : mesh.cells()[c]) fmt::format_to(it, " {}", v);
    out.push_back('\n');
  }
  return out;
}

std::string serialize_mesh(const AnyMesh& mesh) {
  return std::visit([](const auto& m) { return serialize_mesh(m); }, mesh);
}

AnyMesh read_mesh_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}' for reading", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_mesh(ss.str());
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(fmt::format("cannot open '{}' for writing", path.string()));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(fmt::format("write to '{}' failed", path.string()));
}

template <int Dim>
void write_mesh_file(const std::filesystem::path& path, const Mesh<Dim>& mesh) {
  write_text_file(path, serialize_mesh(mesh));
}

template std::string serialize_mesh<2>(const Mesh<2>&);
template std::string serialize_mesh<3>(const Mesh<3>&);
template void write_mesh_file<2>(const std::filesystem::path&, const Mesh<2>&);
template void write_mesh_file<3>(const std::filesystem::path&, const Mesh<3>&);

}  // namespace regmesh
