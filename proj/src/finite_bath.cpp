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


#include "qbath/finite_bath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <variant>

#include "qbath/tridiagonal.hpp"

namespace qbath {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// int_lo^hi of the linear interpolant through (x0, y0), (x1, y1).
double linear_piece(double x0, double y0, double x1, double y1, double lo, double hi) {
  const double a = std::max(lo, x0);
  const double b = std::min(hi, x1);
  if (!(b > a)) return 0.0;
  const double slope = (y1 - y0) / (x1 - x0);
  const double ya = y0 + slope * (a - x0);
  const double yb = y0 + slope * (b - x0);
  return 0.5 * (ya + yb) * (b - a);
}

double drude_mass(const Drude& d, double lo, double hi) {
  // mu = (2 eta / pi) (1 / w^2 - 1 / (w^2 + wc^2))
  const double wc = d.omega_c;
  return 2.0 * d.eta / std::numbers::pi *
         ((1.0 / lo - 1.0 / hi) - (std::atan(hi / wc) - std::atan(lo / wc)) / wc);
}

// int_lo^hi w^2 times the linear interpolant through (x0, y0), (x1, y1).
double linear_piece_w2(double x0, double y0, double x1, double y1, double lo, double hi) {
  const double a = std::max(lo, x0);
  const double b = std::min(hi, x1);
  if (!(b > a)) return 0.0;
  const double slope = (y1 - y0) / (x1 - x0);
  const double c = y0 - slope * x0;
  auto prim = [&](double w) { return c * w * w * w / 3.0 + slope * w * w * w * w / 4.0; };
  return prim(b) - prim(a);
}

}  // namespace

void FiniteBath::validate() const {
  particle.validate();
  if (masses.size() != freqs.size()) throw DomainError("masses and freqs differ in length");
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    if (!(masses[i] > 0.0) || !std::isfinite(masses[i])) {
      throw DomainError("bath masses must be finite and positive");
    }
    if (!(freqs[i] > 0.0) || !std::isfinite(freqs[i])) {
      throw DomainError("bath frequencies must be finite and positive");
    }
    if (i > 0 && !(freqs[i] > freqs[i - 1])) {
      throw DomainError("bath frequencies must be strictly increasing");
    }
  }
}

double integrated_mass(const SpectralDensity& env, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  return std::visit(
      overloaded{
          [&](const OhmicSharp& o) {
            const double top = std::min(hi, o.omega_c);
            if (o.eta == 0.0 || !(top > lo)) return 0.0;
            if (!(lo > 0.0)) {
              throw DomainError("ohmic mass diverges at omega = 0; use a positive lower edge");
            }
            return 2.0 * o.eta / std::numbers::pi * (1.0 / lo - 1.0 / top);
          },
          [&](const Drude& d) {
            if (d.eta == 0.0) return 0.0;
            if (!(lo > 0.0)) {
              throw DomainError("Drude mass diverges at omega = 0; use a positive lower edge");
            }
            return drude_mass(d, lo, hi);
          },
          [&](const RCCircuit& rc) {
            const Drude d = equivalent_drude(rc);
            if (d.eta == 0.0) return 0.0;
            if (!(lo > 0.0)) {
              throw DomainError("RC mass diverges at omega = 0; use a positive lower edge");
            }
            return drude_mass(d, lo, hi);
          },
          [&](const Tabulated& t) {
            const auto& w = t.omega();
            const auto& m = t.mu();
            double total = 0.0;
            for (std::size_t i = 0; i + 1 < w.size(); ++i) {
              total += linear_piece(w[i], m[i], w[i + 1], m[i + 1], lo, hi);
            }
            return total;
          },
      },
      env);
}

double integrated_coupling(const SpectralDensity& env, double lo, double hi) {
  lo = std::max(lo, 0.0);
  if (!(hi > lo)) return 0.0;
  auto lorentz = [&](const Drude& d) {
    const double wc = d.omega_c;
    return 2.0 * d.eta / std::numbers::pi * wc * (std::atan(hi / wc) - std::atan(lo / wc));
  };
  return std::visit(
      overloaded{
          [&](const OhmicSharp& o) {
            const double top = std::min(hi, o.omega_c);
            return top > lo ? 2.0 * o.eta / std::numbers::pi * (top - lo) : 0.0;
          },
          [&](const Drude& d) { return lorentz(d); },
          [&](const RCCircuit& rc) { return lorentz(equivalent_drude(rc)); },
          [&](const Tabulated& t) {
            const auto& w = t.omega();
            const auto& m = t.mu();
            double total = 0.0;
            for (std::size_t i = 0; i + 1 < w.size(); ++i) {
              total += linear_piece_w2(w[i], m[i], w[i + 1], m[i + 1], lo, hi);
            }
            return total;
          },
      },
      env);
}

FiniteBath discretize(const SpectralDensity& env, const ParticleParams& particle, int n,
                      const DiscretizeOptions& opts) {
  particle.validate();
  validate(env);
  if (n < 1) throw DomainError("discretize needs at least one bin");

  double lo = 1e-3 * particle.omega;
  double hi = 0.0;
  std::visit(overloaded{
                 [&](const OhmicSharp& o) { hi = o.omega_c; },
                 [&](const Drude& d) { hi = 1e3 * d.omega_c; },
                 [&](const RCCircuit& rc) { hi = 1e3 * equivalent_drude(rc).omega_c; },
                 [&](const Tabulated& t) {
                   lo = t.omega().front();
                   hi = t.omega().back();
                 },
             },
             env);
  if (opts.omega_min) lo = *opts.omega_min;
  if (opts.omega_max) hi = *opts.omega_max;
  if (!(hi > lo) || !std::isfinite(hi)) throw DomainError("discretization band is empty");
  if (!(lo >= 0.0)) throw DomainError("discretization band must start at omega >= 0");
  if (opts.strategy == BinStrategy::Log && !(lo > 0.0)) {
    throw DomainError("log bins need a positive lower edge");
  }

  std::vector<double> edges(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double f = static_cast<double>(i) / n;
    edges[i] = opts.strategy == BinStrategy::Log ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
  }
  edges.front() = lo;
  edges.back() = hi;

  FiniteBath bath;
  bath.particle = particle;
  if (opts.low_band_mode && lo > 0.0) {
    const double moment = integrated_coupling(env, 0.0, lo);
    if (moment > 0.0) {
      const double w = 0.5 * lo;
      bath.freqs.push_back(w);
      bath.masses.push_back(moment / (w * w));
    }
  }
  for (int i = 0; i < n; ++i) {
    const double mass = integrated_mass(env, edges[i], edges[i + 1]);
    if (!(mass > 0.0)) continue;
    bath.masses.push_back(mass);
    bath.freqs.push_back(0.5 * (edges[i] + edges[i + 1]));
  }
  return bath;
}

Eigen::MatrixXd build_matrix(const FiniteBath& bath) {
  bath.validate();
  const auto n = static_cast<Eigen::Index>(bath.freqs.size());
  const ParticleParams& p = bath.particle;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + 1, n + 1);
  double a00 = p.omega * p.omega;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double w2 = bath.freqs[i] * bath.freqs[i];
    const double mu = bath.masses[i];
    a00 += w2 * mu / p.mass;
    a(0, i + 1) = a(i + 1, 0) = -w2 * std::sqrt(mu / p.mass);
    a(i + 1, i + 1) = w2;
  }
  a(0, 0) = a00;
  return a;
}

namespace {

void check_positive(const ModeDecomposition& m) {
  if (!m.nu_sq.empty() && !(m.nu_sq.front() > 0.0)) {
    throw InconsistencyError("mode matrix is not positive definite (lowest eigenvalue " +
                             std::to_string(m.nu_sq.front()) + ")");
  }
}

}  // namespace

ModeDecomposition decompose(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols() || a.rows() == 0) throw DomainError("mode matrix must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) throw NumericalError("eigen-decomposition failed");
  ModeDecomposition out;
  const auto& vals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  for (Eigen::Index j = 0; j < vals.size(); ++j) {
    out.nu_sq.push_back(vals(j));
    out.weights.push_back(vecs(0, j) * vecs(0, j));
  }
  check_positive(out);
  return out;
}

ModeDecomposition decompose(const FiniteBath& bath) {
  bath.validate();
  const ParticleParams& p = bath.particle;
  const std::size_t n = bath.freqs.size();
  JacobiMatrix t;
  double a00 = p.omega * p.omega;
  if (n > 0) {
    std::vector<double> nodes(n);
    std::vector<double> couplings(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double w2 = bath.freqs[i] * bath.freqs[i];
      nodes[i] = w2;
      couplings[i] = w2 * w2 * bath.masses[i] / p.mass;  // A_0i^2
      a00 += w2 * bath.masses[i] / p.mass;
    }
    // Lanczos from e_0: the bath block sees the start vector (A_0i) / |A_0.|.
    double norm2 = 0.0;
    const JacobiMatrix bath_part = jacobi_from_measure(nodes, couplings, &norm2);
    t.diag.push_back(a00);
    t.diag.insert(t.diag.end(), bath_part.diag.begin(), bath_part.diag.end());
    t.offdiag.push_back(std::sqrt(norm2));
    t.offdiag.insert(t.offdiag.end(), bath_part.offdiag.begin(), bath_part.offdiag.end());
  } else {
    t.diag.push_back(a00);
  }
  const EigenFirstRow eig = eigen_first_row(std::move(t));
  ModeDecomposition out{eig.values, eig.first_squared};
  check_positive(out);
  return out;
}

Moments exact_moments(const ModeDecomposition& modes, const ParticleParams& particle, double T) {
  particle.validate();
  if (!(T >= 0.0) || !std::isfinite(T)) throw DomainError("temperature must be finite and >= 0");
  const double kT = particle.kB * T;
  Moments out;
  for (std::size_t j = 0; j < modes.nu_sq.size(); ++j) {
    const double nu = std::sqrt(modes.nu_sq[j]);
    const double c = thermal_coth(particle.hbar * nu, kT) * modes.weights[j];
    out.q2 += particle.hbar / (2.0 * particle.mass * nu) * c;
    out.p2 += 0.5 * particle.mass * particle.hbar * nu * c;
  }
  return out;
}

}  // namespace qbath
