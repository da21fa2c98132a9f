#pragma once

#include <cmath>

namespace regmesh::detail {

// Neumaier summation: the result is the exact sum rounded once for any
// realistic cell count, so means of identical values come out exact.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace regmesh::detail
