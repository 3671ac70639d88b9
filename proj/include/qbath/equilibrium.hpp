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


// Equilibrium state of the particle in the continuum limit.
//
// Every second moment of the particle is a sum over normal modes weighted by
// the overlap (0|U_j)^2. In the continuum this weight becomes a Lorentzian-like
// density in the mode frequency u,
//
//   (2/pi) Gamma(u) u^2 / [(u^2 - Omega^2 - Delta(u))^2 + Gamma(u)^2 u^2],
//
// plus the weight of any bound mode sitting in a spectral gap.

#ifndef QBATH_EQUILIBRIUM_HPP
#define QBATH_EQUILIBRIUM_HPP

#include <functional>

#include "qbath/particle.hpp"
#include "qbath/quadrature.hpp"
#include "qbath/spectral.hpp"

namespace qbath {

struct WeightedIntegral {
  double value = 0.0;
  double error = 0.0;
  /// The resonance could not be bracketed; the domain was cut into uniform
  /// panels instead.
  bool resonance_fallback = false;
};

/// Outer tolerance of the moment integrals.
inline QuadratureOptions moment_quadrature() { return {1e-10, 0.0, 2'000'000}; }

/// Sum of f(nu^2) over normal modes weighted by (0|U_j)^2. A particle with no
/// bath at all returns f(Omega^2): its only mode is the bare oscillator.
WeightedIntegral weighted_integral(const std::function<double(double)>& f,
                                   const BathResponse& response, bool include_pole,
                                   const QuadratureOptions& opts = moment_quadrature());

double q2_mean(const BathResponse& response, double T, bool include_pole = false);
double p2_mean(const BathResponse& response, double T, bool include_pole = false);
double q2_mean(const SpectralDensity& env, const ParticleParams& particle, double T,
               bool include_pole = false);
double p2_mean(const SpectralDensity& env, const ParticleParams& particle, double T,
               bool include_pole = false);

/// T~ from kT~ = (hbar Omega / 2) / artanh(hbar / (2 sqrt(q2 p2))). Products
/// within 1e-10 relative of the Heisenberg bound count as a pure state;
/// anything further below throws UncertaintyViolation.
double effective_temperature(double q2, double p2, const ParticleParams& particle);

/// m~ = sqrt(p2 / (Omega^2 q2)).
double effective_mass(double q2, double p2, const ParticleParams& particle);

/// Von Neumann entropy of a thermal oscillator at T~, in units of kB.
double entropy_of(double T_eff, const ParticleParams& particle);

/// sigma(q, q') = norm * exp(-a_minus (q - q')^2 - a_plus (q + q')^2).
struct GaussianDensityMatrix {
  double a_minus = 0.0;
  double a_plus = 0.0;
  double norm = 0.0;

  double operator()(double q, double qp) const {
    const double d = q - qp;
    const double s = q + qp;
    return norm * std::exp(-a_minus * d * d - a_plus * s * s);
  }

  /// tr sigma^2 = sqrt(a_plus / a_minus).
  double purity() const { return std::sqrt(a_plus / a_minus); }
};

GaussianDensityMatrix density_matrix(double q2, double p2, const ParticleParams& particle);

struct EquilibriumState {
  double T = 0.0;
  double q2 = 0.0;
  double p2 = 0.0;
  double T_eff = 0.0;
  double m_eff = 0.0;
  double entropy = 0.0;
};

EquilibriumState equilibrium_state(const BathResponse& response, double T,
                                   bool include_pole = false);

}  // namespace qbath

#endif  // QBATH_EQUILIBRIUM_HPP
