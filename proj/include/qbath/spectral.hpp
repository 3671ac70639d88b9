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

// Bath environments and their response functions.
//
// An environment is fully described by the mass density mu(omega) of its
// oscillators. Everything downstream only needs the damping
//
//   Gamma(u) = pi u^2 mu(u) / (2 m)
//
// and the principal-value shift
//
//   Delta(u) = P int_0^inf (omega^2 u^2 / m) mu(omega) / (u^2 - omega^2) domega,
//
// together with the real-axis poles of the particle resolvent that can sit in
// spectral gaps (where Gamma vanishes).

#ifndef QBATH_SPECTRAL_HPP
#define QBATH_SPECTRAL_HPP

#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "qbath/particle.hpp"
#include "qbath/quadrature.hpp"

namespace qbath {

/// mu = 2 eta / (pi omega^2) below omega_c, zero above.
struct OhmicSharp {
  double eta = 0.0;
  double omega_c = 0.0;
};

/// mu = (2 eta / (pi omega^2)) * omega_c^2 / (omega^2 + omega_c^2).
struct Drude {
  double eta = 0.0;
  double omega_c = 0.0;
};

/// Capacitive coupling to a resistor; a Drude bath with eta = R e^2 / l^2 and
/// omega_c = 1 / (R C).
struct RCCircuit {
  double charge = 0.0;
  double plate_distance = 0.0;
  double capacitance = 0.0;
  double resistance = 0.0;
};

/// Piecewise-linear mu on a strictly increasing grid, zero outside it.
class Tabulated {
 public:
  Tabulated(std::vector<double> omega, std::vector<double> mu);

  /// Two-column CSV with header `omega,mu`.
  static Tabulated parse_csv(std::istream& in);
  static Tabulated load_csv(const std::filesystem::path& path);

  const std::vector<double>& omega() const { return omega_; }
  const std::vector<double>& mu() const { return mu_; }

  double operator()(double w) const;

 private:
  std::vector<double> omega_;
  std::vector<double> mu_;
};

using SpectralDensity = std::variant<OhmicSharp, Drude, RCCircuit, Tabulated>;

/// Half-open frequency interval; hi may be +infinity.
struct FrequencyBand {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
};

/// Bound mode of the particle resolvent: a real pole nu*^2 with residue weight.
struct PoleRecord {
  double nu_star_sq = 0.0;
  double weight = 0.0;
};

void validate(const SpectralDensity& env);

Drude equivalent_drude(const RCCircuit& rc);

/// Transverse frequency after the capacitive shift m Omega^2 = m Omega_g^2 - e^2 / (l^2 C).
double renormalized_frequency(double omega_guide, double mass, const RCCircuit& rc);

/// mu multiplied by a non-negative factor (a linear operation on every variant).
SpectralDensity scaled(const SpectralDensity& env, double factor);

bool is_identically_zero(const SpectralDensity& env);

/// Frequencies where mu is discontinuous or has a kink.
std::vector<double> breakpoints(const SpectralDensity& env);

/// Upper end of the support of mu; +infinity for Drude-type baths.
double support_end(const SpectralDensity& env);

/// Maximal open intervals of (0, inf) on which mu vanishes identically.
std::vector<FrequencyBand> spectral_gaps(const SpectralDensity& env);

double evaluate_mu(const SpectralDensity& env, double omega);

double gamma(const SpectralDensity& env, const ParticleParams& particle, double u);

/// Quadrature settings used by delta() when none are given.
inline QuadratureOptions delta_quadrature() { return {1e-11, 0.0, 1'000'000}; }

double delta(const SpectralDensity& env, const ParticleParams& particle, double u,
             const QuadratureOptions& opts = delta_quadrature());

/// Roots of u^2 - Omega^2 - Delta(u) inside `band`, each with its residue
/// weight 1 / (1 - dDelta~/dz). Throws InconsistencyError if a root lands where
/// Gamma > 0.
std::vector<PoleRecord> find_real_poles(const SpectralDensity& env, const ParticleParams& particle,
                                        FrequencyBand band);

/// Precomputed Gamma/Delta evaluator for one (environment, particle) pair,
/// with the bound modes of every spectral gap.
class BathResponse {
 public:
  struct Segment;

  BathResponse(SpectralDensity env, ParticleParams particle,
               QuadratureOptions opts = delta_quadrature());
  ~BathResponse();
  BathResponse(const BathResponse&);
  BathResponse(BathResponse&&) noexcept;
  BathResponse& operator=(const BathResponse&);
  BathResponse& operator=(BathResponse&&) noexcept;

  double gamma(double u) const;
  double delta(double u) const;
  double delta(double u, const QuadratureOptions& opts) const;

  const std::vector<PoleRecord>& poles() const { return poles_; }
  std::optional<PoleRecord> pole() const {
    if (poles_.empty()) return std::nullopt;
    return poles_.front();
  }

  const SpectralDensity& env() const { return env_; }
  const ParticleParams& particle() const { return particle_; }
  bool decoupled() const { return decoupled_; }

  /// int_0^inf omega^2 mu(omega) domega, the bath part of A_00 times m.
  double second_moment() const;

 private:
  SpectralDensity env_;
  ParticleParams particle_;
  QuadratureOptions opts_;
  std::vector<Segment> segments_;
  std::vector<PoleRecord> poles_;
  bool decoupled_ = false;
};

}  // namespace qbath

#endif  // QBATH_SPECTRAL_HPP
