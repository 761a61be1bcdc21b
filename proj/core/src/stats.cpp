#include "seaoco/stats.hpp"

#include <cmath>

#include "seaoco/errors.hpp"

namespace seaoco {

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

double compensated_sum(const std::vector<double>& xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

Summary summarize(const std::vector<double>& xs) {
  if (xs.size() < 2) throw InvalidArgument("summarize: need at least 2 values");
  Summary s;
  s.n = xs.size();
  const double n = static_cast<double>(xs.size());
  s.mean = compensated_sum(xs) / n;
  CompensatedSum ss;
  for (double x : xs) ss.add((x - s.mean) * (x - s.mean));
  s.std_error = std::sqrt(ss.value() / (n - 1.0) / n);
  s.ci95 = 1.96 * s.std_error;
  return s;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("linear_fit: need matching series of length >= 2");
  const double n = static_cast<double>(x.size());
  const double mx = compensated_sum(x) / n;
  const double my = compensated_sum(y) / n;
  CompensatedSum sxx, sxy, syy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx.add((x[i] - mx) * (x[i] - mx));
    sxy.add((x[i] - mx) * (y[i] - my));
    syy.add((y[i] - my) * (y[i] - my));
  }
  if (sxx.value() == 0.0) throw InvalidArgument("linear_fit: x values are all equal");
  LinearFit f;
  f.slope = sxy.value() / sxx.value();
  f.intercept = my - f.slope * mx;
  f.r_squared = syy.value() == 0.0 ? 1.0 : (sxy.value() * sxy.value()) / (sxx.value() * syy.value());
  return f;
}

double rate_fit(const std::vector<double>& T, const std::vector<double>& values) {
  if (T.size() != values.size() || T.size() < 4) throw InvalidArgument("rate_fit: need at least 4 points");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < T.size(); ++i) {
    if (!(T[i] > 0.0) || !(values[i] > 0.0)) throw InvalidArgument("rate_fit: values must be positive");
    lx.push_back(std::log(T[i]));
    ly.push_back(std::log(values[i]));
  }
  return linear_fit(lx, ly).slope;
}

}  // namespace seaoco
