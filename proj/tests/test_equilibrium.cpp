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


#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "qbath/equilibrium.hpp"

using namespace qbath;

namespace {

constexpr double kPi = std::numbers::pi;

// -sum p_n ln p_n and sum p_n^2 for p_n = (1 - e^-x) e^-nx.
double fock_entropy(double x, int terms = 200) {
  double s = 0.0;
  const double z = -std::expm1(-x);
  for (int n = 0; n < terms; ++n) {
    const double lp = std::log(z) - n * x;
    s -= std::exp(lp) * lp;
  }
  return s;
}

double fock_purity(double x, int terms = 4000) {
  double s = 0.0;
  const double z = -std::expm1(-x);
  for (int n = 0; n < terms; ++n) s += z * z * std::exp(-2.0 * n * x);
  return s;
}

}  // namespace

TEST_CASE("decoupled oscillator moments are exact") {
  ParticleParams p{2.0, 1.5, 0.7, 1.3};
  const BathResponse r(OhmicSharp{0.0, 100.0}, p);
  for (double T : {0.0, 0.2, 1.0, 10.0}) {
    const double c = thermal_coth(p.hbar * p.omega, p.kB * T);
    CHECK(q2_mean(r, T) == doctest::Approx(p.hbar / (2 * p.mass * p.omega) * c).epsilon(1e-14));
    CHECK(p2_mean(r, T) == doctest::Approx(p.mass * p.hbar * p.omega / 2 * c).epsilon(1e-14));
    const auto s = equilibrium_state(r, T);
    CHECK(s.T_eff == doctest::Approx(T).epsilon(1e-11));
    CHECK(s.m_eff == doctest::Approx(p.mass).epsilon(1e-14));
  }
}

TEST_CASE("completeness sum rule") {
  const ParticleParams p;
  auto one = [](double) { return 1.0; };
  for (const SpectralDensity& env :
       {SpectralDensity{OhmicSharp{0.1, 100.0}}, SpectralDensity{OhmicSharp{1.0, 100.0}},
        SpectralDensity{OhmicSharp{1.0, 2.0}}, SpectralDensity{Drude{0.5, 10.0}},
        SpectralDensity{Tabulated({0.05, 0.1, 0.45, 0.5, 1.5, 1.6, 2.5, 3.0},
                                  {0.0, 0.05, 0.05, 0.0, 0.0, 0.05, 0.05, 0.0})}}) {
    const BathResponse r(env, p);
    const auto w = weighted_integral(one, r, true);
    CHECK(w.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_FALSE(w.resonance_fallback);
  }
}

TEST_CASE("a resolvable bound mode carries the missing continuum weight") {
  const BathResponse r(OhmicSharp{1.0, 2.0}, ParticleParams{});
  REQUIRE(r.pole());
  auto one = [](double) { return 1.0; };
  const double continuum = weighted_integral(one, r, false).value;
  CHECK(continuum == doctest::Approx(1.0 - r.pole()->weight).epsilon(1e-6));
  CHECK(r.pole()->weight > 1e-3);
}

TEST_CASE("second sum rule gives the (0,0) entry of the mode matrix") {
  const ParticleParams p;
  auto nu2 = [](double z) { return z; };
  for (double eta : {0.1, 0.5, 1.0}) {
    const BathResponse r(OhmicSharp{eta, 100.0}, p);
    CHECK(weighted_integral(nu2, r, true).value ==
          doctest::Approx(1.0 + 2.0 * eta * 100.0 / kPi).epsilon(1e-4));
  }
  // int w^2 mu = eta Omega_c for Drude.
  const BathResponse d(Drude{0.3, 20.0}, p);
  CHECK(weighted_integral(nu2, d, true).value == doctest::Approx(1.0 + 0.3 * 20.0).epsilon(1e-4));
}

TEST_CASE("weak coupling collapses the weight onto Omega") {
  const BathResponse r(OhmicSharp{1e-4, 100.0}, ParticleParams{});
  auto f = [](double z) { return 1.0 / std::sqrt(z); };
  CHECK(std::abs(weighted_integral(f, r, true).value - 1.0) < 1e-3);
}

TEST_CASE("p2 diverges logarithmically with the cutoff") {
  const ParticleParams p;
  const double eta = 0.05;
  std::vector<double> x;
  std::vector<double> y;
  for (double wc : {1e2, 1e3, 1e4}) {
    x.push_back(std::log(wc));
    y.push_back(p2_mean(OhmicSharp{eta, wc}, p, 0.0));
  }
  const double xm = (x[0] + x[1] + x[2]) / 3.0;
  const double ym = (y[0] + y[1] + y[2]) / 3.0;
  double sxy = 0.0;
  double sxx = 0.0;
  for (int i = 0; i < 3; ++i) {
    sxy += (x[i] - xm) * (y[i] - ym);
    sxx += (x[i] - xm) * (x[i] - xm);
  }
  CHECK(sxy / sxx == doctest::Approx(eta / kPi).epsilon(0.1));
}

TEST_CASE("small-coupling asymptotes of T~ and m~") {
  const ParticleParams p;
  const double eta = 0.05;
  const double wc = 1e4;
  const double g = eta * std::log(wc);
  const auto s = equilibrium_state(BathResponse(OhmicSharp{eta, wc}, p), 0.0);
  CHECK(s.T_eff == doctest::Approx(1.0 / std::log(2.0 * kPi / g)).epsilon(0.1));
  CHECK(s.m_eff == doctest::Approx(1.0 + g / kPi).epsilon(0.1));
}

TEST_CASE("effective temperature inversion") {
  const ParticleParams p{1.7, 0.9, 1.1, 0.8};
  const double h = p.hbar;
  CHECK(effective_temperature(0.5, h * h / 2.0, p) == 0.0);
  CHECK(effective_temperature(0.5, h * h / 2.0 * (1 - 1e-12), p) == 0.0);
  CHECK_THROWS_AS(effective_temperature(0.5, h * h / 2.0 * (1 - 1e-6), p), UncertaintyViolation);
  // Far below hbar Omega / kB the product q2 p2 carries only exp(-hbar Omega / kT)
  // of information above the bound, so the inversion is conditioned accordingly.
  {
    const double T = 0.05;
    const double c = thermal_coth(h * p.omega, p.kB * T);
    CHECK(effective_temperature(h / (2 * p.mass * p.omega) * c, p.mass * h * p.omega / 2 * c, p) ==
          doctest::Approx(T).epsilon(1e-6));
  }
  for (double T : {0.2, 0.3, 1.0, 7.0, 300.0}) {
    const double c = thermal_coth(h * p.omega, p.kB * T);
    const double q2 = h / (2 * p.mass * p.omega) * c;
    const double p2 = p.mass * h * p.omega / 2 * c;
    CHECK(effective_temperature(q2, p2, p) == doctest::Approx(T).epsilon(1e-12));
    CHECK(effective_mass(q2, p2, p) == doctest::Approx(p.mass).epsilon(1e-14));
  }
}

TEST_CASE("entropy matches the Fock sum") {
  const ParticleParams p;
  CHECK(entropy_of(0.0, p) == 0.0);
  CHECK(entropy_of(1.0, p) == doctest::Approx(1.04066).epsilon(1e-5));
  for (double x : {0.3, 1.0, 3.0, 20.0}) {
    CHECK(entropy_of(1.0 / x, p) == doctest::Approx(fock_entropy(x)).epsilon(1e-12));
  }
  CHECK(std::abs((21.0 * std::exp(-20.0)) / fock_entropy(20.0) - 1.0) < 0.01);
}

TEST_CASE("gaussian density matrix") {
  const ParticleParams p;
  const double q2 = 0.8;
  const double p2 = 0.9;
  const auto s = density_matrix(q2, p2, p);
  const double L = 10.0 * std::sqrt(q2);
  const QuadratureOptions tight{1e-12, 0.0, 1'000'000};

  SUBCASE("normalization and second moment") {
    auto diag = [&](double q) { return s(q, q); };
    CHECK(std::abs(integrate(diag, -L, L, tight).value - 1.0) < 1e-10);
    auto second = [&](double q) { return q * q * s(q, q); };
    CHECK(integrate(second, -L, L, tight).value == doctest::Approx(q2).epsilon(1e-10));
  }

  SUBCASE("momentum round trip") {
    // ln sigma is quadratic, so central differences of it are exact.
    const double h = 0.5 * std::sqrt(q2);
    auto ls = [&](double a, double b) { return std::log(s(a, b)); };
    auto pp = [&](double q) {
      const double dq = (ls(q + h, q) - ls(q - h, q)) / (2 * h);
      const double dqp = (ls(q, q + h) - ls(q, q - h)) / (2 * h);
      const double mixed =
          (ls(q + h, q + h) - ls(q + h, q - h) - ls(q - h, q + h) + ls(q - h, q - h)) / (4 * h * h);
      return p.hbar * p.hbar * s(q, q) * (dq * dqp + mixed);
    };
    CHECK(integrate(pp, -L, L, tight).value == doctest::Approx(p2).epsilon(1e-10));
  }

  SUBCASE("purity from two routes") {
    const double x = p.hbar * p.omega / (p.kB * effective_temperature(q2, p2, p));
    CHECK(s.purity() == doctest::Approx(std::tanh(x / 2.0)).epsilon(1e-10));
    CHECK(s.purity() == doctest::Approx(fock_purity(x)).epsilon(1e-10));
    CHECK(s.a_minus > s.a_plus);
  }

  SUBCASE("pure state has no off-diagonal decay") {
    const auto pure = density_matrix(0.5, 0.5, p);
    CHECK(pure.a_minus == doctest::Approx(pure.a_plus));
    for (double x : {0.1, 1.0, 3.0}) {
      CHECK(pure(x, -x) / pure(x, x) == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(density_matrix(0.5, 0.4, p), UncertaintyViolation);
}

TEST_CASE("temperature grid properties") {
  const ParticleParams p;
  for (double eta : {0.1, 1.0}) {
    const BathResponse r(OhmicSharp{eta, 100.0}, p);
    double prev_T = -1.0;
    double prev_S = -1.0;
    for (int i = 0; i < 10; ++i) {
      const double T = 5.0 * i / 9.0;
      const auto s = equilibrium_state(r, T);
      CHECK(s.q2 * s.p2 >= 0.25);
      CHECK(s.T_eff >= prev_T);
      CHECK(s.entropy >= prev_S);
      if (i == 0) {
        CHECK(s.T_eff > 0.0);
        CHECK(s.entropy > 0.0);
      }
      prev_T = s.T_eff;
      prev_S = s.entropy;
    }
    const auto hot = equilibrium_state(r, 100.0);
    CHECK(std::abs(hot.T_eff / 100.0 - 1.0) < 0.05);
  }
}

TEST_CASE("m~ tends to m as the coupling vanishes") {
  const ParticleParams p;
  double previous = 1.0;
  for (double eta : {1e-1, 1e-2, 1e-3}) {
    const auto s = equilibrium_state(BathResponse(OhmicSharp{eta, 100.0}, p), 0.5);
    const double dev = std::abs(s.m_eff - 1.0);
    CHECK(dev < previous);
    previous = dev;
  }
  CHECK(previous < 0.01);
}
