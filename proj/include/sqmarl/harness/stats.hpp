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

#ifndef SQMARL_HARNESS_STATS_HPP
#define SQMARL_HARNESS_STATS_HPP

#include <span>
#include <vector>

namespace sqmarl::harness {

struct PearsonResult {
  double r = 0.0;
  double t = 0.0;            // t statistic with n-2 degrees of freedom
  double p_two_tailed = 1.0;
  long n = 0;
};

/// Two-pass Pearson correlation with a two-tailed significance test from the
/// t distribution (n-2 degrees of freedom). Throws on mismatched lengths,
/// n < 3, or zero variance in either input.
PearsonResult pearson_correlation(std::span<const double> x,
                                  std::span<const double> y);

/// Maps values affinely onto [0, 1]; a zero-range input maps to all zeros.
/// Throws on empty input.
std::vector<double> minmax_normalize(std::span<const double> xs);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

// Regularized upper incomplete gamma Q(a, x).
double regularized_gamma_q(double a, double x);

// P(|T| >= t) for Student's t with `dof` degrees of freedom.
double student_t_two_tailed_p(double t, double dof);

// Upper-tail p of a chi-square statistic with `dof` degrees of freedom.
double chi_square_p_value(double stat, double dof);

/// Pearson chi-square goodness-of-fit p-value of observed counts against
/// expected probabilities (dof = bins - 1).
double chi_square_gof_p(std::span<const long> observed,
                        std::span<const double> expected_probs);

}  // namespace sqmarl::harness

#endif  // SQMARL_HARNESS_STATS_HPP
