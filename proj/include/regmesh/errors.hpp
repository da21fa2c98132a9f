#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "regmesh/types.hpp"

namespace regmesh {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A vertex sits within the rejection radius of its element's centroid, so
/// the radius ratios are undefined.
class NearCentroidVertex : public Error {
 public:
  NearCentroidVertex(int vertex, double distance, double threshold);
  int vertex() const noexcept { return vertex_; }
  double distance() const noexcept { return distance_; }

 private:
  int vertex_;
  double distance_;
};

class DisconnectedConnectivity : public Error {
 public:
  explicit DisconnectedConnectivity(Index unreachable_cell);
  Index cell() const noexcept { return cell_; }

 private:
  Index cell_;
};

class InvertedCell : public Error {
 public:
  InvertedCell(Index cell, double signed_measure);
  Index cell() const noexcept { return cell_; }

 private:
  Index cell_;
};

class DuplicateVertex : public Error {
 public:
  DuplicateVertex(Index first, Index second);
  Index first() const noexcept { return first_; }
  Index second() const noexcept { return second_; }

 private:
  Index first_, second_;
};

class TooFewSymbols : public Error {
 public:
  explicit TooFewSymbols(int n);
};

class InvertedMeshAfterStep : public Error {
 public:
  explicit InvertedMeshAfterStep(std::vector<Index> cells);
  const std::vector<Index>& cells() const noexcept { return cells_; }

 private:
  std::vector<Index> cells_;
};

class DegenerateElement : public Error {
 public:
  explicit DegenerateElement(const std::string& what, Index cell = -1);
  Index cell() const noexcept { return cell_; }

 private:
  Index cell_;
};

/// A finite-difference probe left the domain of the operator.
class MapUndefined : public Error {
 public:
  MapUndefined(std::size_t column, const std::string& cause);
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

class NotEquilateral : public Error {
 public:
  NotEquilateral(Index cell, double quality);
};

class BadValence : public Error {
 public:
  BadValence(Index vertex, std::size_t valence);
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class IncompatibleMeshes : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Cell index outside [0, N). `line` is 0 when the indices did not come from a file.
class IndexOutOfRange : public Error {
 public:
  IndexOutOfRange(std::size_t line, Index index, std::size_t vertex_count);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace regmesh
