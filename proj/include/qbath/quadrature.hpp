// Copyright 2026 The qbath Authors - All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Globally adaptive 21-point Gauss-Kronrod quadrature.
//
// The integrator keeps every subinterval in a max-heap keyed on its local
// error estimate and bisects the worst one until the summed estimate meets
// max(abs_tol, rel_tol * |I|). The initial partition is given as a list of
// breakpoints so callers can place known discontinuities and peaks on
// interval boundaries; a trailing +infinity maps the last interval onto
// [0, 1) through x = a + t / (1 - t).

#ifndef QBATH_QUADRATURE_HPP
#define QBATH_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "qbath/errors.hpp"

namespace qbath {

struct QuadratureOptions {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  std::size_t max_evaluations = 1'000'000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
};

namespace detail {

inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208067108750, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, ..., 9).
inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool tail = false;
  bool operator<(const Panel& other) const { return error < other.error; }
};

// One GK21 rule on [a, b] with the QUADPACK error scaling.
template <class F>
Panel gauss_kronrod_21(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 21> fv{};
  double kronrod = 0.0;
  double gauss = 0.0;
  double abs_sum = 0.0;
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv[2 * j] = f1;
    fv[2 * j + 1] = f2;
    kronrod += kKronrodWeights[j] * (f1 + f2);
    abs_sum += kKronrodWeights[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (f1 + f2);
  }
  const double fc = f(center);
  fv[20] = fc;
  kronrod += kKronrodWeights[10] * fc;
  abs_sum += kKronrodWeights[10] * std::abs(fc);

  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j) {
    asc += kKronrodWeights[j] * (std::abs(fv[2 * j] - mean) + std::abs(fv[2 * j + 1] - mean));
  }

  const double scale = std::abs(half);
  const double value = kronrod * half;
  double err = std::abs((kronrod - gauss) * half);
  const double resasc = asc * scale;
  const double resabs = abs_sum * scale;
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * resabs, err);
  }
  return {a, b, value, err, false};
}

}  // namespace detail

/// Integrates f over the partition defined by sorted breakpoints. The last
/// breakpoint may be +infinity. Throws ConvergenceError when the evaluation
/// budget runs out before the tolerance is met.
template <class F>
QuadratureResult integrate(F&& f, std::span<const double> breakpoints,
                           const QuadratureOptions& opts = {}) {
  if (breakpoints.size() < 2) return {};
  const bool infinite_tail = std::isinf(breakpoints.back());
  const double tail_start = infinite_tail ? breakpoints[breakpoints.size() - 2] : 0.0;
  if (infinite_tail && !std::isfinite(tail_start)) {
    throw DomainError("infinite tail requires a finite start");
  }

  // x = a + t / (1 - t) maps t in [0, 1) onto [a, inf).
  auto tail = [&](double t) {
    const double s = 1.0 - t;
    return f(tail_start + t / s) / (s * s);
  };
  auto rule = [&](double a, double b, bool on_tail) {
    auto p = on_tail ? detail::gauss_kronrod_21(tail, a, b) : detail::gauss_kronrod_21(f, a, b);
    p.tail = on_tail;
    return p;
  };

  std::priority_queue<detail::Panel> heap;
  double total = 0.0;
  double total_err = 0.0;
  double settled = 0.0;
  std::size_t evals = 0;
  auto push = [&](const detail::Panel& p) {
    evals += 21;
    total += p.value;
    total_err += p.error;
    heap.push(p);
  };

  const std::size_t finite_count = breakpoints.size() - (infinite_tail ? 2 : 1);
  for (std::size_t i = 0; i < finite_count; ++i) {
    const double a = breakpoints[i];
    const double b = breakpoints[i + 1];
    if (b > a) push(rule(a, b, false));
  }
  if (infinite_tail) push(rule(0.0, 1.0, true));

  const auto tolerance = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };
  while (total_err > tolerance()) {
    if (heap.empty()) break;
    if (evals + 42 > opts.max_evaluations) {
      throw ConvergenceError("adaptive quadrature did not converge within " +
                                 std::to_string(opts.max_evaluations) +
                                 " evaluations (error estimate " + std::to_string(total_err) + ")",
                             total, total_err);
    }
    const detail::Panel worst = heap.top();
    heap.pop();
    total -= worst.value;
    total_err -= worst.error;
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Cannot bisect further in floating point: keep the value, drop the estimate.
      total += worst.value;
      settled += worst.value;
      continue;
    }
    push(rule(worst.a, mid, worst.tail));
    push(rule(mid, worst.b, worst.tail));
  }

  // Re-sum to shed rounding accumulated by the running updates.
  QuadratureResult out;
  out.evaluations = evals;
  out.value = settled;
  while (!heap.empty()) {
    out.value += heap.top().value;
    out.error += heap.top().error;
    heap.pop();
  }
  return out;
}

template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureOptions& opts = {}) {
  const std::array<double, 2> bp{a, b};
  return integrate(std::forward<F>(f), std::span<const double>(bp), opts);
}

}  // namespace qbath

#endif  // QBATH_QUADRATURE_HPP
