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


#include "qbath/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qbath {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const cdouble kI{0.0, 1.0};

// exp(n * decay) psi_n(y) for n < count, psi_n the Hermite functions in
// oscillator units. The recurrence runs on rescaled values with the scale
// kept as a logarithm, so neither the Gaussian factor nor the growth in n
// under- or overflows before the final product.
std::vector<double> hermite_functions(int count, double y, double decay) {
  std::vector<double> out(std::max(count, 0), 0.0);
  if (count <= 0) return out;
  constexpr double kBig = 1e150;
  const double log_big = std::log(kBig);
  double prev = 0.0;
  double cur = std::pow(std::numbers::pi, -0.25);
  double log_scale = -0.5 * y * y;
  out[0] = cur * std::exp(log_scale);
  for (int n = 0; n + 1 < count; ++n) {
    const double next = std::sqrt(2.0 / (n + 1)) * y * cur - std::sqrt(double(n) / (n + 1)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kBig) {
      cur /= kBig;
      prev /= kBig;
      log_scale += log_big;
    }
    out[n + 1] = cur * std::exp(log_scale + (n + 1) * decay);
  }
  return out;
}

void check_channel(int n) {
  if (n < 0) throw DomainError("channel index must be >= 0");
  if (n > kMaxChannel) {
    throw DomainError("channel index " + std::to_string(n) + " exceeds the recurrence guard " +
                      std::to_string(kMaxChannel));
  }
}

}  // namespace

std::vector<double> chi_sequence(int count, double q, const ParticleParams& particle) {
  particle.validate();
  if (count > 0) check_channel(count - 1);
  const double ell = particle.length_scale();
  auto out = hermite_functions(count, q / ell, 0.0);
  const double norm = 1.0 / std::sqrt(ell);
  for (double& v : out) v *= norm;
  return out;
}

double chi(int n, double q, const ParticleParams& particle) {
  check_channel(n);
  return chi_sequence(n + 1, q, particle).back();
}

void Junction::validate() const {
  particle.validate();
  if (!std::isfinite(x) || !std::isfinite(alpha)) throw DomainError("x and alpha must be finite");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw DomainError("epsilon must be positive");
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("k must be positive");
  if (n_incident < 0) throw DomainError("incident channel must be >= 0");
  if (n_channels != 0 && n_incident >= n_channels) {
    throw DomainError("incident channel must be below the channel count");
  }
  check_channel(n_incident);
}

ChannelWavevectors channel_wavevectors(const Junction& j, int count) {
  j.validate();
  const ParticleParams& p = j.particle;
  // 2 m (E_n' - E_n) / hbar^2 = 2 (n' - n) / ell^2
  const double inv_ell2 = p.mass * p.omega / p.hbar;
  ChannelWavevectors out;
  out.kappa = std::sqrt(j.k * j.k + inv_ell2 * (2.0 * j.n_incident + 1.0));
  out.k_n.reserve(std::max(count, 0));
  for (int n = 0; n < count; ++n) {
    const double k2 = j.k * j.k + 2.0 * inv_ell2 * (j.n_incident - n);
    out.k_n.push_back(k2 >= 0.0 ? cdouble(std::sqrt(k2), 0.0) : cdouble(0.0, std::sqrt(-k2)));
  }
  out.k_n[j.n_incident] = j.k;
  return out;
}

std::vector<double> contact_amplitudes(const Junction& j, int count) {
  j.validate();
  if (count > 0) check_channel(count - 1);
  const double ell = j.particle.length_scale();
  const double s = j.epsilon / (2.0 * std::sqrt(std::numbers::pi)) / ell;
  if (!(s < 1.0)) throw DomainError("contact width must be below the oscillator length");
  // Gaussian overlap in closed form from the Hermite generating function:
  // <psi_n | exp(-(u - X)^2 / 2 s^2)> is proportional to beta^(n/2) psi_n(X / sqrt(1 - s^4)).
  const double s2 = s * s;
  const double one_m_s4 = (1.0 - s2) * (1.0 + s2);
  const double beta = (1.0 - s2) / (1.0 + s2);
  const double X = j.x / ell;
  const double y = X / std::sqrt(one_m_s4);
  auto out = hermite_functions(count, y, 0.5 * std::log(beta));
  const double pref = std::exp(0.5 * X * X * s2 / one_m_s4) / std::sqrt((1.0 + s2) * ell);
  for (double& v : out) v *= pref;
  return out;
}

namespace {

struct ChannelSums {
  cdouble R;
  cdouble Z;
};

ChannelSums channel_sums(std::span<const double> a, std::span<const cdouble> lambdas, double g) {
  cdouble sr = 0.0;
  cdouble sz = 0.0;
  if (g == 0.0) return {1.0, 0.0};
  for (std::size_t n = 0; n < a.size(); ++n) {
    if (lambdas[n] == 0.0) continue;  // threshold channel, handled by its limit
    const double am = (n % 2 == 0) ? a[n] : -a[n];
    sr += a[n] * a[n] / lambdas[n];
    sz += a[n] * am / lambdas[n];
  }
  return {1.0 + g * sr, g * sz};
}

}  // namespace

ScatteringSolution scattering_solve(const Junction& j) {
  j.validate();
  const ParticleParams& p = j.particle;
  const double h2 = p.hbar * p.hbar;
  const double c = j.alpha * std::pow(j.epsilon, 1.5);
  const double open = j.n_incident + p.hbar * j.k * j.k / (2.0 * p.mass * p.omega);
  if (open > kMaxChannel) throw DomainError("too many open channels");

  int count = std::max({j.n_channels, static_cast<int>(open) + 21, j.n_incident + 1});
  ScatteringSolution sol;
  std::vector<double> a;
  ChannelWavevectors kv;
  ChannelSums sums{};
  double g = 0.0;
  for (;;) {
    const int next = count * 2;
    if (next > kMaxChannel) {
      throw TruncationError("channel sums did not settle within " + std::to_string(kMaxChannel) +
                                " channels",
                            std::abs(sums.R) + std::abs(sums.Z));
    }
    a = contact_amplitudes(j, next);
    kv = channel_wavevectors(j, next);
    g = std::pow(c * p.mass / (h2 * kv.kappa), 2);
    std::vector<cdouble> lambdas(next);
    for (int n = 0; n < next; ++n) lambdas[n] = kv.k_n[n] / kv.kappa;
    const auto coarse = channel_sums(std::span(a).first(count), lambdas, g);
    sums = channel_sums(a, lambdas, g);
    if (!std::isfinite(std::abs(sums.R)) || !std::isfinite(std::abs(sums.Z))) {
      throw NumericalError("channel sums are not finite");
    }
    const double scale = std::abs(sums.R);
    const double amax = std::abs(*std::max_element(a.begin(), a.end(), [](double l, double r) {
      return std::abs(l) < std::abs(r);
    }));
    const bool settled = std::abs(sums.R - coarse.R) <= 1e-8 * scale &&
                         std::abs(sums.Z - coarse.Z) <= 1e-8 * scale &&
                         std::abs(a[count - 1]) <= 1e-8 * amax;
    if (settled || g == 0.0) {
      count = next;
      sol.lambdas = std::move(lambdas);
      break;
    }
    count = next;
  }

  sol.channels = count;
  sol.R = sums.R;
  sol.Z = sums.Z;
  const double ap = a[j.n_incident];
  const double am = (j.n_incident % 2 == 0) ? ap : -ap;
  const cdouble pref = c * p.mass / (kI * h2 * kv.kappa);
  const cdouble b1 = pref * ap;
  const cdouble b2 = pref * am;

  // A channel with k_n = 0 adds D = g a_n^2 / lambda_n -> infinity to R and
  // (-1)^n D to Z. The solution has a finite limit in which s1 + (-1)^n s2
  // vanishes like 1/D while r_n stays finite.
  int threshold = -1;
  if (g != 0.0) {
    for (int n = 0; n < count; ++n) {
      if (sol.lambdas[n] == 0.0 && a[n] != 0.0) threshold = n;
    }
  }
  cdouble r_threshold = 0.0;
  if (threshold < 0) {
    const cdouble det = sums.R * sums.R - sums.Z * sums.Z;
    if (std::abs(det) <= 1e-14 * std::norm(sums.R)) {
      throw ResonanceSingular("R^2 - Z^2 vanishes for this junction");
    }
    sol.s1 = (sums.R * b1 - sums.Z * b2) / det;
    sol.s2 = (sums.R * b2 - sums.Z * b1) / det;
  } else {
    const double sg = (threshold % 2 == 0) ? 1.0 : -1.0;
    const cdouble den = 2.0 * (sums.R - sg * sums.Z);
    if (std::abs(den) <= 1e-14 * std::abs(sums.R)) {
      throw ResonanceSingular("threshold limit is singular for this junction");
    }
    sol.s2 = (b2 - sg * b1) / den;
    sol.s1 = -sg * sol.s2;
    const cdouble w = b1 - (sums.R * sol.s1 + sums.Z * sol.s2);
    r_threshold = pref * w / (g * a[threshold]);
  }

  sol.t.resize(count);
  sol.r.resize(count);
  for (int n = 0; n < count; ++n) {
    const double an_m = (n % 2 == 0) ? a[n] : -a[n];
    const cdouble src = sol.s1 * a[n] + sol.s2 * an_m;
    if (n == threshold) {
      sol.r[n] = r_threshold;
    } else if (c == 0.0 || src == 0.0) {
      sol.r[n] = 0.0;
    } else {
      sol.r[n] = c * p.mass / (kI * h2 * kv.k_n[n]) * src;
    }
    sol.t[n] = (n == j.n_incident ? 1.0 : 0.0) + sol.r[n];
  }
  return sol;
}

cdouble high_energy_tau(const Junction& j) {
  j.validate();
  const ParticleParams& p = j.particle;
  const double b = j.alpha * j.epsilon * p.mass / (p.hbar * p.hbar * j.k);
  return b / kI * std::sqrt(j.epsilon) / (1.0 + b * b);
}

cdouble effective_tau(const ScatteringSolution& sol, const Junction& j) {
  const auto a = contact_amplitudes(j, j.n_incident + 1);
  const double ap = a[j.n_incident];
  const double am = (j.n_incident % 2 == 0) ? ap : -ap;
  const double den = ap * ap + am * am;
  if (den == 0.0) return 0.0;
  return (sol.s1 * ap + sol.s2 * am) / den;
}

double coherence_length(double T_eff, double m_eff, const ParticleParams& particle) {
  particle.validate();
  if (!(T_eff >= 0.0)) throw DomainError("effective temperature must be >= 0");
  if (!(m_eff > 0.0)) throw DomainError("effective mass must be positive");
  if (T_eff == 0.0) return kInf;
  const double x = particle.hbar * particle.omega / (particle.kB * T_eff);
  return std::sqrt(particle.hbar / (4.0 * m_eff * particle.omega) * std::sinh(x));
}

double coherence_length_from_moments(double q2, double p2, const ParticleParams& particle) {
  particle.validate();
  if (!(q2 > 0.0) || !(p2 > 0.0)) throw DomainError("moments must be positive");
  const double h2 = particle.hbar * particle.hbar;
  const double excess = std::fma(4.0 * q2, p2, -h2);
  if (excess < -1e-10 * h2) {
    throw UncertaintyViolation("q2 * p2 below hbar^2 / 4");
  }
  if (excess <= 0.0) return kInf;
  return std::sqrt(q2 * h2 / excess);
}

std::vector<double> uniform_phases(std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = 2.0 * std::numbers::pi * double(i) / double(n);
  return out;
}

FringePattern fringe_pattern(const GaussianDensityMatrix& sigma, const Junction& j, cdouble tau,
                             std::span<const double> phi_grid) {
  if (phi_grid.size() < 2) throw DomainError("phase grid needs at least two points");
  FringePattern out;
  const double t2 = std::norm(tau);
  const double x = j.x;
  const double spp = sigma(x, x);
  const double smm = sigma(-x, -x);
  const double off = sigma(x, -x);  // real and symmetric for the Gaussian state
  out.P1 = t2 * spp;
  out.P2 = t2 * smm;
  const double diff = sigma.a_minus - sigma.a_plus;
  out.xi = diff > 0.0 ? 1.0 / std::sqrt(8.0 * diff) : kInf;
  out.contrast = std::isinf(out.xi) ? 1.0 : std::exp(-x * x / (2.0 * out.xi * out.xi));
  out.phi_grid.assign(phi_grid.begin(), phi_grid.end());
  out.intensity.reserve(phi_grid.size());
  for (double phi : phi_grid) out.intensity.push_back(t2 * (spp + smm + 2.0 * off * std::cos(phi)));
  return out;
}

double sampled_contrast(const FringePattern& pat) {
  const double n = static_cast<double>(pat.intensity.size());
  double mean = 0.0;
  for (double v : pat.intensity) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : pat.intensity) var += (v - mean) * (v - mean);
  var /= n;
  const double den = 2.0 * pat.P1 * pat.P2;
  if (den == 0.0) return 0.0;
  return std::sqrt(var / den);
}

ValidityReport validity_check(const Junction& j, const FiniteBath& bath, double q2, double T,
                              double threshold) {
  j.validate();
  bath.validate();
  if (!(q2 > 0.0)) throw DomainError("q2 must be positive");
  if (!(T >= 0.0)) throw DomainError("temperature must be >= 0");
  const ParticleParams& p = j.particle;
  ValidityReport out;
  out.longitudinal_energy = p.hbar * p.hbar * j.k * j.k / (2.0 * p.mass);
  double stiffness = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < bath.freqs.size(); ++i) {
    const double w = bath.freqs[i];
    const double kmu = bath.masses[i] * w * w;
    const double mean_energy = 0.5 * p.hbar * w * thermal_coth(p.hbar * w, p.kB * T);
    stiffness += kmu;
    weighted += kmu * mean_energy;
  }
  out.coupling_energy = q2 * stiffness;
  out.fluctuation_energy = std::sqrt(q2 * weighted);
  if (out.coupling_energy > 0.0) out.ratio_coupling = out.longitudinal_energy / out.coupling_energy;
  if (out.fluctuation_energy > 0.0) {
    out.ratio_fluctuation = out.longitudinal_energy / out.fluctuation_energy;
  }
  out.pass = out.ratio_coupling >= threshold && out.ratio_fluctuation >= threshold;
  return out;
}

}  // namespace qbath
