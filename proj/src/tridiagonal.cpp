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


#include "qbath/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qbath/errors.hpp"

namespace qbath {

JacobiMatrix jacobi_from_measure(std::span<const double> nodes, std::span<const double> weights,
                                 double* total) {
  const std::size_t n = nodes.size();
  if (n == 0 || weights.size() != n) throw DomainError("measure needs matching nodes and weights");
  // p0 holds the recurrence diagonal, p1 the squared off-diagonals with p1[0]
  // the total weight. Each new node is folded in by a chain of rotations.
  std::vector<double> p0(nodes.begin(), nodes.end());
  std::vector<double> p1(n, 0.0);
  p1[0] = weights[0];
  for (std::size_t j = 1; j < n; ++j) {
    double pn = weights[j];
    double gam = 1.0;
    double sig = 0.0;
    double t = 0.0;
    const double lam = nodes[j];
    for (std::size_t k = 0; k <= j; ++k) {
      const double rho = p1[k] + pn;
      const double tmp = gam * rho;
      double tsig = sig;
      if (rho <= 0.0) {
        gam = 1.0;
        sig = 0.0;
      } else {
        gam = p1[k] / rho;
        sig = pn / rho;
      }
      const double tk = sig * (p0[k] - lam) - gam * t;
      p0[k] -= tk - t;
      t = tk;
      pn = sig <= 0.0 ? tsig * p1[k] : t * t / sig;
      p1[k] = tmp;
    }
  }
  if (total) *total = p1[0];
  JacobiMatrix out;
  out.diag = std::move(p0);
  out.offdiag.resize(n - 1);
  for (std::size_t k = 1; k < n; ++k) out.offdiag[k - 1] = std::sqrt(std::max(p1[k], 0.0));
  return out;
}

EigenFirstRow eigen_first_row(JacobiMatrix t) {
  const std::size_t n = t.diag.size();
  if (n == 0) return {};
  if (t.offdiag.size() + 1 != n) throw DomainError("tridiagonal matrix has inconsistent sizes");
  std::vector<double>& d = t.diag;
  std::vector<double> e(n, 0.0);
  std::copy(t.offdiag.begin(), t.offdiag.end(), e.begin());
  std::vector<double> z(n, 0.0);
  z[0] = 1.0;

  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr int kMaxIter = 60;
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iter > kMaxIter) throw NumericalError("implicit QL did not converge");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool deflated = false;
      for (std::size_t i = m; i-- > l;) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        const double zf = z[i + 1];
        z[i + 1] = s * z[i] + c * zf;
        z[i] = c * z[i] - s * zf;
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (true);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  EigenFirstRow out;
  out.values.reserve(n);
  out.first_squared.reserve(n);
  for (std::size_t k : order) {
    out.values.push_back(d[k]);
    out.first_squared.push_back(z[k] * z[k]);
  }
  return out;
}

}  // namespace qbath
