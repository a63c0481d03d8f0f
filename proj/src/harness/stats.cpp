// Copyright 2026 The sqmarl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sqmarl/harness/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sqmarl::harness {

namespace {

constexpr double kEps = 3e-14;
constexpr double kFpMin = 1e-300;
constexpr int kMaxIter = 500;

double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

double gamma_series_p(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 1; i <= kMaxIter; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_continued_fraction_q(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kFpMin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = b + an / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (a <= 0.0 || b <= 0.0) {
    throw std::invalid_argument("regularized_incomplete_beta: a, b must be positive");
  }
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log1p(-x);
  const double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return bt * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - bt * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double regularized_gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) {
    throw std::invalid_argument("regularized_gamma_q: bad arguments");
  }
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_series_p(a, x);
  return gamma_continued_fraction_q(a, x);
}

double student_t_two_tailed_p(double t, double dof) {
  if (dof <= 0.0) throw std::invalid_argument("student_t_two_tailed_p: dof must be positive");
  return regularized_incomplete_beta(0.5 * dof, 0.5, dof / (dof + t * t));
}

double chi_square_p_value(double stat, double dof) {
  if (stat < 0.0) throw std::invalid_argument("chi_square_p_value: negative statistic");
  return regularized_gamma_q(0.5 * dof, 0.5 * stat);
}

double chi_square_gof_p(std::span<const long> observed,
                        std::span<const double> expected_probs) {
  if (observed.size() != expected_probs.size() || observed.size() < 2) {
    throw std::invalid_argument("chi_square_gof_p: need matching bins, >= 2");
  }
  const double total = static_cast<double>(
      std::accumulate(observed.begin(), observed.end(), 0L));
  double stat = 0.0;
  for (std::size_t b = 0; b < observed.size(); ++b) {
    const double expected = total * expected_probs[b];
    if (expected <= 0.0) {
      throw std::invalid_argument("chi_square_gof_p: expected count must be positive");
    }
    const double diff = static_cast<double>(observed[b]) - expected;
    stat += diff * diff / expected;
  }
  return chi_square_p_value(stat, static_cast<double>(observed.size() - 1));
}

PearsonResult pearson_correlation(std::span<const double> x,
                                  std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("pearson_correlation: length mismatch");
  }
  const long n = static_cast<long>(x.size());
  if (n < 3) {
    throw std::invalid_argument("pearson_correlation: need at least 3 samples");
  }
  const double nd = static_cast<double>(n);
  double mean_x = 0.0, mean_y = 0.0;
  for (long i = 0; i < n; ++i) {
    mean_x += x[static_cast<std::size_t>(i)];
    mean_y += y[static_cast<std::size_t>(i)];
  }
  mean_x /= nd;
  mean_y /= nd;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (long i = 0; i < n; ++i) {
    const double dx = x[static_cast<std::size_t>(i)] - mean_x;
    const double dy = y[static_cast<std::size_t>(i)] - mean_y;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw std::invalid_argument(
        "pearson_correlation: zero variance input, coefficient undefined");
  }
  PearsonResult result;
  result.n = n;
  result.r = sxy / std::sqrt(sxx * syy);
  const double r2 = std::min(result.r * result.r, 1.0);
  const double dof = nd - 2.0;
  if (r2 >= 1.0) {
    result.t = std::numeric_limits<double>::infinity();
    result.p_two_tailed = 0.0;
  } else {
    result.t = result.r * std::sqrt(dof / (1.0 - r2));
    result.p_two_tailed = student_t_two_tailed_p(result.t, dof);
  }
  return result;
}

std::vector<double> minmax_normalize(std::span<const double> xs) {
  if (xs.empty()) {
    throw std::invalid_argument("minmax_normalize: empty input");
  }
  double lo = xs[0], hi = xs[0];
  for (double v : xs) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::vector<double> out(xs.size(), 0.0);
  const double range = hi - lo;
  if (range == 0.0) return out;
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = (xs[i] - lo) / range;
  return out;
}

}  // namespace sqmarl::harness
