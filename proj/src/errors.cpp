#include "regmesh/errors.hpp"

#include <fmt/format.h>

namespace regmesh {

NearCentroidVertex::NearCentroidVertex(int vertex, double distance, double threshold)
    : Error(fmt::format("vertex {} lies {:.3g} from the centroid (threshold {:.3g})", vertex,
                        distance, threshold)),
      vertex_(vertex),
      distance_(distance) {}

DisconnectedConnectivity::DisconnectedConnectivity(Index unreachable_cell)
    : Error(fmt::format("cell {} is not reachable through shared edges/faces from cell 0",
                        unreachable_cell)),
      cell_(unreachable_cell) {}

InvertedCell::InvertedCell(Index cell, double signed_measure)
    : Error(fmt::format("cell {} has non-positive signed measure {:.6g}", cell, signed_measure)),
      cell_(cell) {}

DuplicateVertex::DuplicateVertex(Index first, Index second)
    : Error(fmt::format("vertices {} and {} coincide", first, second)),
      first_(first),
      second_(second) {}

TooFewSymbols::TooFewSymbols(int n)
    : Error(fmt::format("a simple mesh needs at least 4 symbols, got {}", n)) {}

InvertedMeshAfterStep::InvertedMeshAfterStep(std::vector<Index> cells)
    : Error(fmt::format("smoothing step inverted {} cell(s), first is {}", cells.size(),
                        cells.empty() ? -1 : cells.front())),
      cells_(std::move(cells)) {}

DegenerateElement::DegenerateElement(const std::string& what, Index cell)
    : Error(cell >= 0 ? fmt::format("cell {}: {}", cell, what) : what), cell_(cell) {}

MapUndefined::MapUndefined(std::size_t column, const std::string& cause)
    : Error(fmt::format("operator undefined when probing coordinate {}: {}", column, cause)),
      column_(column) {}

NotEquilateral::NotEquilateral(Index cell, double quality)
    : Error(fmt::format("cell {} is not equilateral (edge ratio {:.12g})", cell, quality)) {}

BadValence::BadValence(Index vertex, std::size_t valence)
    : Error(fmt::format("interior vertex {} has {} neighbours, expected 6", vertex, valence)) {}

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error(fmt::format("line {}: {}", line, message)), line_(line) {}

IndexOutOfRange::IndexOutOfRange(std::size_t line, Index index, std::size_t vertex_count)
    : Error(line > 0 ? fmt::format("line {}: vertex index {} out of range [0, {})", line, index,
                                   vertex_count)
                     : fmt::format("vertex index {} out of range [0, {})", index, vertex_count)),
      line_(line) {}

}  // namespace regmesh
