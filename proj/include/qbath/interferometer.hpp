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


// Two-lead interferometer on a harmonic waveguide.
//
// The particle travels along z in the guide with transverse state sigma. At
// z = 0 two leads touch the guide at q = +x and q = -x through contacts of
// width epsilon. Each contact is a normalized Gaussian state g(q -+ x) of rms
// width epsilon / (2 sqrt(pi)) in its amplitude, so that int g = sqrt(epsilon);
// the channel amplitudes entering the scattering problem are
//
//   a_n^+- = <chi_n | g(. -+ x)> / sqrt(epsilon),
//
// which tend to chi_n(+-x) as epsilon -> 0 while keeping every channel sum
// finite.

#ifndef QBATH_INTERFEROMETER_HPP
#define QBATH_INTERFEROMETER_HPP

#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "qbath/equilibrium.hpp"
#include "qbath/finite_bath.hpp"
#include "qbath/particle.hpp"

namespace qbath {

using cdouble = std::complex<double>;

/// Largest channel index accepted by chi().
inline constexpr int kMaxChannel = 10'000'000;

/// Normalized eigenfunction of the transverse oscillator, chi_n(q).
double chi(int n, double q, const ParticleParams& particle);

/// chi_0(q) ... chi_{count-1}(q) from one pass of the recurrence.
std::vector<double> chi_sequence(int count, double q, const ParticleParams& particle);

struct Junction {
  double x = 0.0;
  double alpha = 0.0;
  double epsilon = 0.1;
  double k = 1.0;
  int n_incident = 0;
  /// Starting truncation; 0 selects the open channels plus 20.
  int n_channels = 0;
  ParticleParams particle;

  void validate() const;
};

struct ChannelWavevectors {
  double kappa = 0.0;
  /// Real for open channels, +i|k_n| for evanescent ones.
  std::vector<cdouble> k_n;
};

ChannelWavevectors channel_wavevectors(const Junction& junction, int count);

/// a_n^+ for n < count; a_n^- = (-1)^n a_n^+.
std::vector<double> contact_amplitudes(const Junction& junction, int count);

struct ScatteringSolution {
  std::vector<cdouble> t;
  std::vector<cdouble> r;
  cdouble s1;
  cdouble s2;
  cdouble R;
  cdouble Z;
  std::vector<cdouble> lambdas;
  int channels = 0;
};

/// Solves the guide/lead system. Throws ResonanceSingular when R^2 - Z^2
/// vanishes and TruncationError when the channel sums do not settle. A
/// channel sitting exactly at threshold (k_n = 0) enters through the limit
/// k_n -> 0; R and Z then hold the sums over the remaining channels.
ScatteringSolution scattering_solve(const Junction& junction);

/// Lead amplitude per unit transverse amplitude in the high-energy limit,
/// s_{1,2} = tau chi_n'(+-x).
cdouble high_energy_tau(const Junction& junction);

/// Best single tau for a full solution: (s1 a+ + s2 a-) / (a+^2 + a-^2).
cdouble effective_tau(const ScatteringSolution& sol, const Junction& junction);

/// xi from T~ and m~: xi^2 = (hbar / (4 m~ Omega)) sinh(hbar Omega / kT~).
/// T~ = 0 gives +infinity.
double coherence_length(double T_eff, double m_eff, const ParticleParams& particle);

/// xi^2 = q2 hbar^2 / (4 p2 q2 - hbar^2); +infinity for a pure state.
double coherence_length_from_moments(double q2, double p2, const ParticleParams& particle);

struct FringePattern {
  std::vector<double> phi_grid;
  std::vector<double> intensity;
  double P1 = 0.0;
  double P2 = 0.0;
  double contrast = 0.0;
  double xi = 0.0;
};

FringePattern fringe_pattern(const GaussianDensityMatrix& sigma, const Junction& junction,
                             cdouble tau, std::span<const double> phi_grid);

/// n points on [0, 2 pi).
std::vector<double> uniform_phases(std::size_t n);

/// sqrt((<P^2> - <P>^2) / (2 P1 P2)) with the phase averages taken as means
/// over the pattern's grid.
double sampled_contrast(const FringePattern& pattern);

struct ValidityReport {
  double longitudinal_energy = 0.0;
  double coupling_energy = 0.0;     // <q^2> sum mu_i omega_i^2
  double fluctuation_energy = 0.0;  // (<q^2> sum mu_i omega_i^2 <eps_i>)^(1/2)
  double ratio_coupling = std::numeric_limits<double>::infinity();
  double ratio_fluctuation = std::numeric_limits<double>::infinity();
  bool pass = true;
};

/// Both no-boundary-scattering conditions, passing when each ratio is at
/// least `threshold`. <eps_i> is the mean oscillator energy at T, zero-point
/// energy included.
ValidityReport validity_check(const Junction& junction, const FiniteBath& bath, double q2,
                              double T, double threshold = 100.0);

}  // namespace qbath

#endif  // QBATH_INTERFEROMETER_HPP
