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


// Exact diagonalization of a finite bath, the brute-force counterpart of the
// continuum formulas. In mass-weighted coordinates the particle and N bath
// oscillators are governed by the arrowhead matrix
//
//   A_00 = Omega^2 + sum_i omega_i^2 mu_i / m,
//   A_0i = -omega_i^2 sqrt(mu_i / m),   A_ii = omega_i^2,
//
// and the particle moments only need its eigenvalues nu_j^2 and the squared
// first components (0|U_j)^2 of its eigenvectors.

#ifndef QBATH_FINITE_BATH_HPP
#define QBATH_FINITE_BATH_HPP

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qbath/particle.hpp"
#include "qbath/spectral.hpp"

namespace qbath {

struct FiniteBath {
  std::vector<double> masses;
  std::vector<double> freqs;
  ParticleParams particle;

  /// Positive masses and frequencies, frequencies strictly increasing.
  void validate() const;
};

enum class BinStrategy { Uniform, Log };

struct DiscretizeOptions {
  BinStrategy strategy = BinStrategy::Log;
  /// Lower band edge; defaults to 1e-3 Omega (or the first tabulated node).
  std::optional<double> omega_min;
  /// Upper band edge; defaults to the cutoff for ohmic baths, 1e3 Omega_c for
  /// Drude-type baths and the last node for tabulated ones.
  std::optional<double> omega_max;
  /// Represent [0, omega_min) by one oscillator at omega_min / 2 carrying the
  /// band's exact int w^2 mu dw. This keeps the static frequency shift and the
  /// thermal weight of the low band that plain truncation loses.
  bool low_band_mode = true;
};

/// N bins over the band, each carrying its integrated mass at the bin midpoint.
/// Bins without mass are dropped; the optional low-band oscillator comes first.
FiniteBath discretize(const SpectralDensity& env, const ParticleParams& particle, int n,
                      const DiscretizeOptions& opts = {});

/// Integral of mu over [lo, hi], in closed form for every variant.
double integrated_mass(const SpectralDensity& env, double lo, double hi);

/// Integral of omega^2 mu over [lo, hi]; finite down to omega = 0 for every variant.
double integrated_coupling(const SpectralDensity& env, double lo, double hi);

Eigen::MatrixXd build_matrix(const FiniteBath& bath);

struct ModeDecomposition {
  std::vector<double> nu_sq;    // ascending
  std::vector<double> weights;  // (0|U_j)^2
};

/// Dense symmetric eigen-decomposition of any mode matrix.
ModeDecomposition decompose(const Eigen::MatrixXd& a);

/// Same result for the arrowhead matrix of `bath` in O(N^2): the bath block is
/// reduced to a Jacobi matrix by Lanczos updating and only the first row of
/// the eigenvectors is accumulated.
ModeDecomposition decompose(const FiniteBath& bath);

struct Moments {
  double q2 = 0.0;
  double p2 = 0.0;
};

Moments exact_moments(const ModeDecomposition& modes, const ParticleParams& particle, double T);

}  // namespace qbath

#endif  // QBATH_FINITE_BATH_HPP
