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


#include "qbath/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qbath {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Heisenberg slack: quadrature noise may put a pure state marginally below
// the bound.
constexpr double kPureSlack = 1e-10;

double g_of(const BathResponse& r, double u) {
  const double om = r.particle().omega;
  const double d = r.delta(u);
  if (std::isinf(d)) return -d;
  return u * u - om * om - d;
}

// Upward crossing of u^2 - Omega^2 - Delta(u) nearest Omega.
std::optional<double> resonance_root(const BathResponse& r, double end) {
  const double om = r.particle().omega;
  std::vector<double> xs;
  for (int k = -40; k <= 40; ++k) {
    const double u = om * std::pow(1.25, k);
    if (u < end) xs.push_back(u);
  }
  if (xs.size() < 2) return std::nullopt;
  std::vector<double> gs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) gs[i] = g_of(r, xs[i]);

  std::optional<std::size_t> best;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (!(gs[i] < 0.0 && gs[i + 1] >= 0.0)) continue;
    const double dist = std::abs(std::log(xs[i] / om));
    if (!best || dist < std::abs(std::log(xs[*best] / om))) best = i;
  }
  if (!best) return std::nullopt;
  double a = xs[*best];
  double b = xs[*best + 1];
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (!(m > a && m < b)) break;
    (g_of(r, m) < 0.0 ? a : b) = m;
  }
  return 0.5 * (a + b);
}

// Frequency beyond which the wings of a semi-infinite bath are left to the
// tail map.
double end_of_scale(const BathResponse& r) {
  const auto& env = r.env();
  if (const auto* d = std::get_if<Drude>(&env)) return d->omega_c;
  if (const auto* rc = std::get_if<RCCircuit>(&env)) return equivalent_drude(*rc).omega_c;
  const auto bps = breakpoints(env);
  return bps.empty() ? r.particle().omega : bps.back();
}

double thermal_energy(const ParticleParams& p, double T) {
  if (!(T >= 0.0) || !std::isfinite(T)) throw DomainError("temperature must be finite and >= 0");
  return p.kB * T;
}

}  // namespace

WeightedIntegral weighted_integral(const std::function<double(double)>& f,
                                   const BathResponse& response, bool include_pole,
                                   const QuadratureOptions& opts) {
  const ParticleParams& p = response.particle();
  const double om2 = p.omega * p.omega;
  WeightedIntegral out;
  if (response.decoupled()) {
    out.value = f(om2);
    return out;
  }

  auto integrand = [&](double u) {
    if (u <= 0.0) return 0.0;
    const double gam = response.gamma(u);
    if (gam == 0.0) return 0.0;
    const double d = response.delta(u);
    if (std::isinf(d)) return 0.0;
    const double detune = u * u - om2 - d;
    const double gu = gam * u;
    return (2.0 / std::numbers::pi) * gu * u * f(u * u) / (detune * detune + gu * gu);
  };

  const double end = support_end(response.env());
  std::vector<double> pts{0.0};
  for (double b : breakpoints(response.env())) pts.push_back(b);

  const auto root = resonance_root(response, end);
  if (root) {
    const double hw = 0.5 * response.gamma(*root);
    pts.push_back(*root);
    for (double k : {0.5, 1.0, 2.0, 4.0, 10.0}) {
      pts.push_back(*root - k * hw);
      pts.push_back(*root + k * hw);
    }
  } else {
    out.resonance_fallback = true;
    const double span = std::min(end, 10.0 * p.omega);
    for (int i = 1; i < 64; ++i) pts.push_back(span * i / 64.0);
  }
  // Geometric panels for the slowly varying wings.
  const double centre = root ? *root : p.omega;
  const double reach = std::isfinite(end) ? end : 1e3 * std::max(centre, end_of_scale(response));
  for (double u = centre * 2.0; u < reach; u *= 2.0) pts.push_back(u);
  for (double u = centre * 0.5; u > centre * 1e-6; u *= 0.5) pts.push_back(u);
  if (!std::isfinite(end)) pts.push_back(reach);

  const double top = std::isfinite(end) ? end : reach;
  std::erase_if(pts, [&](double x) { return !(x >= 0.0 && x <= top); });
  pts.push_back(top);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (!std::isfinite(end)) pts.push_back(kInf);

  const auto r = integrate(integrand, std::span<const double>(pts), opts);
  out.value = r.value;
  out.error = r.error;
  if (include_pole) {
    for (const auto& pole : response.poles()) out.value += pole.weight * f(pole.nu_star_sq);
  }
  return out;
}

double q2_mean(const BathResponse& response, double T, bool include_pole) {
  const ParticleParams& p = response.particle();
  const double kT = thermal_energy(p, T);
  auto f = [&](double nu2) {
    const double nu = std::sqrt(nu2);
    return p.hbar / (2.0 * p.mass * nu) * thermal_coth(p.hbar * nu, kT);
  };
  return weighted_integral(f, response, include_pole).value;
}

double p2_mean(const BathResponse& response, double T, bool include_pole) {
  const ParticleParams& p = response.particle();
  const double kT = thermal_energy(p, T);
  auto f = [&](double nu2) {
    const double nu = std::sqrt(nu2);
    return 0.5 * p.mass * p.hbar * nu * thermal_coth(p.hbar * nu, kT);
  };
  return weighted_integral(f, response, include_pole).value;
}

double q2_mean(const SpectralDensity& env, const ParticleParams& particle, double T,
               bool include_pole) {
  return q2_mean(BathResponse(env, particle), T, include_pole);
}

double p2_mean(const SpectralDensity& env, const ParticleParams& particle, double T,
               bool include_pole) {
  return p2_mean(BathResponse(env, particle), T, include_pole);
}

namespace {

// 1 - hbar^2 / (4 q2 p2); zero for a pure state. Deficits within the slack
// are clamped to zero, larger ones throw.
double mixedness(double q2, double p2, const ParticleParams& p) {
  if (!(q2 > 0.0) || !(p2 > 0.0)) throw DomainError("moments must be positive");
  const double h2 = p.hbar * p.hbar;
  const double d = std::fma(4.0 * q2, p2, -h2) / (4.0 * q2 * p2);
  if (d < -kPureSlack) {
    throw UncertaintyViolation("q2 * p2 below hbar^2 / 4 (relative deficit " +
                               std::to_string(-d) + ")");
  }
  return std::max(d, 0.0);
}

}  // namespace

double effective_temperature(double q2, double p2, const ParticleParams& particle) {
  particle.validate();
  const double d = mixedness(q2, p2, particle);
  if (d == 0.0) return 0.0;
  // s = hbar / (2 sqrt(q2 p2)). Near the pure state artanh(s) = ln(1 + s) - ln(d) / 2
  // keeps the digits that 1 - s would lose.
  const double s = particle.hbar / (2.0 * std::sqrt(q2 * p2));
  const double artanh =
      s < 0.5 ? std::atanh(s) : std::log1p(std::sqrt(1.0 - d)) - 0.5 * std::log(d);
  return 0.5 * particle.hbar * particle.omega / artanh / particle.kB;
}

double effective_mass(double q2, double p2, const ParticleParams& particle) {
  if (!(q2 > 0.0) || !(p2 > 0.0)) throw DomainError("moments must be positive");
  return std::sqrt(p2 / (particle.omega * particle.omega * q2));
}

double entropy_of(double T_eff, const ParticleParams& particle) {
  if (!(T_eff >= 0.0)) throw DomainError("effective temperature must be >= 0");
  if (T_eff == 0.0) return 0.0;
  const double x = particle.hbar * particle.omega / (particle.kB * T_eff);
  if (x > 700.0) return 0.0;
  return x / std::expm1(x) - std::log1p(-std::exp(-x));
}

GaussianDensityMatrix density_matrix(double q2, double p2, const ParticleParams& particle) {
  mixedness(q2, p2, particle);
  GaussianDensityMatrix out;
  out.a_minus = p2 / (2.0 * particle.hbar * particle.hbar);
  out.a_plus = 1.0 / (8.0 * q2);
  out.norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * q2);
  return out;
}

EquilibriumState equilibrium_state(const BathResponse& response, double T, bool include_pole) {
  EquilibriumState s;
  s.T = T;
  s.q2 = q2_mean(response, T, include_pole);
  s.p2 = p2_mean(response, T, include_pole);
  const ParticleParams& p = response.particle();
  s.T_eff = effective_temperature(s.q2, s.p2, p);
  s.m_eff = effective_mass(s.q2, s.p2, p);
  s.entropy = entropy_of(s.T_eff, p);
  return s;
}

}  // namespace qbath
