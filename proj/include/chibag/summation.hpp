#ifndef CHIBAG_SUMMATION_HPP
#define CHIBAG_SUMMATION_HPP

#include <cmath>

namespace chibag {

// Neumaier's variant of Kahan summation. Results depend only on the order in
// which terms are added.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double initial) : sum_(initial) {}

  CompensatedSum& operator+=(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
    return *this;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace chibag

#endif  // CHIBAG_SUMMATION_HPP
