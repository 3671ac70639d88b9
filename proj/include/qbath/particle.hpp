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

#ifndef QBATH_PARTICLE_HPP
#define QBATH_PARTICLE_HPP

#include <cmath>

#include "qbath/errors.hpp"

namespace qbath {

// Harmonic particle plus the two constants that fix the unit system.
// Default-constructed values are reduced units: hbar = kB = m = Omega = 1.
struct ParticleParams {
  double mass = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
  double kB = 1.0;

  void validate() const {
    if (!(mass > 0.0) || !(omega > 0.0) || !(hbar > 0.0) || !(kB > 0.0) ||
        !std::isfinite(mass) || !std::isfinite(omega) || !std::isfinite(hbar) ||
        !std::isfinite(kB)) {
      throw DomainError("particle parameters must be finite and positive");
    }
  }

  /// Oscillator length sqrt(hbar / (m Omega)).
  double length_scale() const { return std::sqrt(hbar / (mass * omega)); }
};

/// coth(hbar nu / 2 kT), with the T = 0 limit taken exactly.
inline double thermal_coth(double hbar_nu, double kT) {
  if (kT <= 0.0) return 1.0;
  const double y = hbar_nu / (2.0 * kT);
  if (y > 40.0) return 1.0;
  return 1.0 / std::tanh(y);
}

}  // namespace qbath

#endif  // QBATH_PARTICLE_HPP
