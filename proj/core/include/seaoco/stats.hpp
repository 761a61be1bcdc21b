#pragma once

#include <vector>

namespace seaoco {

/// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double compensated_sum(const std::vector<double>& xs);

struct Summary {
  double mean = 0.0;
  double std_error = 0.0;
  /// Half-width of the normal-approximation 95% interval.
  double ci95 = 0.0;
  std::size_t n = 0;
};

Summary summarize(const std::vector<double>& xs);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

/// Least-squares slope of log(value) against log(T). Needs >= 4 positive points.
double rate_fit(const std::vector<double>& T, const std::vector<double>& values);

}  // namespace seaoco
