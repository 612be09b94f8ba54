#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace nlcap {

/// Neumaier-compensated accumulator. Adding values in a fixed order gives a
/// result that does not depend on how the values were produced (thread
/// count, scheduling), which keeps parallel reductions reproducible.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
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

inline double compensated_sum(std::span<const double> xs) {
  CompensatedSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

}  // namespace nlcap
