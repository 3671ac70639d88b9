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


#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "qbath/equilibrium.hpp"
#include "qbath/finite_bath.hpp"
#include "qbath/interferometer.hpp"

using namespace qbath;

namespace {

constexpr double kPi = std::numbers::pi;

double trapezoid_norm(int n, const ParticleParams& p) {
  const double ell = p.length_scale();
  const double h = 0.005 * ell;
  double s = 0.0;
  for (double q = -20.0 * ell; q <= 20.0 * ell; q += h) {
    const double v = chi(n, q, p);
    s += v * v;
  }
  return s * h;
}

Junction high_energy_junction() {
  Junction j;
  j.x = 1.0;
  j.alpha = 100.0;
  j.epsilon = 0.1;
  // hbar^2 k^2 / 2m E_0 = 1e4 puts channel 5000 exactly at threshold, where an
  // infinitely narrow cusp blocks the leads; sit a hair above it
  j.k = 100.0 * (1.0 + 1e-6);
  return j;
}

void check_continuity(const ScatteringSolution& sol, const Junction& j) {
  for (int n = 0; n < sol.channels; ++n) {
    const cdouble lhs = sol.t[n];
    const cdouble rhs = (n == j.n_incident ? 1.0 : 0.0) + sol.r[n];
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

}  // namespace

TEST_CASE("oscillator eigenfunctions") {
  const ParticleParams p{1.3, 0.7, 0.9, 1.0};
  CHECK(chi(0, 0.0, p) ==
        doctest::Approx(std::pow(p.mass * p.omega / (kPi * p.hbar), 0.25)).epsilon(1e-14));
  CHECK(chi(1, 0.0, p) == 0.0);
  CHECK(chi(7, 0.0, p) == 0.0);
  for (int n : {0, 5, 20}) CHECK(trapezoid_norm(n, p) == doctest::Approx(1.0).epsilon(1e-10));

  // parity and agreement of the single-value and sequence entry points
  const auto seq = chi_sequence(40, 0.8, p);
  for (int n = 0; n < 40; ++n) {
    CHECK(chi(n, 0.8, p) == seq[n]);
    CHECK(chi(n, -0.8, p) == doctest::Approx((n % 2 ? -1.0 : 1.0) * seq[n]).epsilon(1e-13));
  }

  // high orders stay finite and bounded by the classical envelope
  const ParticleParams unit;
  for (int n : {1000, 100000}) {
    const double v = chi(n, 3.0, unit);
    CHECK(std::isfinite(v));
    CHECK(std::abs(v) < 1.0);
  }
  CHECK(chi(200, 60.0, unit) == 0.0);
  CHECK_THROWS_AS(chi(-1, 0.0, unit), DomainError);
  CHECK_THROWS_AS(chi(kMaxChannel + 1, 0.0, unit), DomainError);
}

TEST_CASE("channel wavevectors") {
  Junction j;
  j.k = 2.0;
  j.n_incident = 1;
  const auto kv = channel_wavevectors(j, 8);
  CHECK(kv.k_n[1] == cdouble(2.0, 0.0));
  CHECK(kv.kappa == doctest::Approx(std::sqrt(4.0 + 3.0)));
  CHECK(kv.k_n[0].real() == doctest::Approx(std::sqrt(6.0)));
  CHECK(kv.k_n[3].imag() == 0.0);  // E_3 - E_1 = 2 = k^2 / 2, the threshold is open
  CHECK(kv.k_n[3].real() == 0.0);
  CHECK(kv.k_n[4].real() == 0.0);
  CHECK(kv.k_n[4].imag() == doctest::Approx(std::sqrt(2.0)));

  Junction g;
  g.k = 1.5;
  g.particle = ParticleParams{2.0, 3.0, 0.5, 1.0};
  CHECK(channel_wavevectors(g, 1).kappa ==
        doctest::Approx(std::sqrt(1.5 * 1.5 + 2.0 * 3.0 / 0.5)));
}

TEST_CASE("contact amplitudes") {
  Junction j;
  j.x = 0.7;
  j.epsilon = 1e-4;
  const auto a = contact_amplitudes(j, 30);
  const auto c = chi_sequence(30, j.x, j.particle);
  for (int n = 0; n < 30; ++n) CHECK(a[n] == doctest::Approx(c[n]).epsilon(1e-6).scale(1.0));

  // completeness: the channel sum reproduces <g|g> / epsilon
  j.epsilon = 0.1;
  const auto wide = contact_amplitudes(j, 40000);
  double s = 0.0;
  for (double v : wide) s += v * v;
  CHECK(s == doctest::Approx(1.0 / j.epsilon).epsilon(1e-9));

  // direct overlap by quadrature for one channel
  j.epsilon = 0.8;
  const double ell = j.particle.length_scale();
  const double sg = j.epsilon / (2.0 * std::sqrt(kPi));
  const double h = 1e-4;
  double ov = 0.0;
  for (double q = j.x - 12 * sg; q <= j.x + 12 * sg; q += h) {
    const double g =
        std::exp(-(q - j.x) * (q - j.x) / (2.0 * sg * sg)) / std::pow(kPi * sg * sg, 0.25);
    ov += chi(6, q, j.particle) * g * h;
  }
  CHECK(contact_amplitudes(j, 7)[6] == doctest::Approx(ov / std::sqrt(j.epsilon)).epsilon(1e-8));
  (void)ell;

  j.epsilon = 10.0;
  CHECK_THROWS_AS(contact_amplitudes(j, 4), DomainError);
}

TEST_CASE("zero coupling gives the trivial solution") {
  Junction j = high_energy_junction();
  j.alpha = 0.0;
  const auto sol = scattering_solve(j);
  CHECK(sol.s1 == cdouble(0.0));
  CHECK(sol.s2 == cdouble(0.0));
  for (int n = 0; n < sol.channels; ++n) {
    CHECK(sol.r[n] == cdouble(0.0));
    CHECK(sol.t[n] == cdouble(n == j.n_incident ? 1.0 : 0.0));
  }
}

TEST_CASE("scattering solution satisfies its linear system") {
  const ParticleParams p;
  for (double alpha : {0.3, 2.0, 15.0}) {
    for (int ni : {0, 1, 3}) {
     for (double k : {2.5, 3.0}) {
      Junction j;
      j.x = 0.9;
      j.alpha = alpha;
      j.epsilon = 0.2;
      j.k = k;  // k = 3 puts a channel exactly at threshold
      j.n_incident = ni;
      const auto sol = scattering_solve(j);
      check_continuity(sol, j);
      const auto a = contact_amplitudes(j, sol.channels);
      const auto kv = channel_wavevectors(j, sol.channels);
      const double c = j.alpha * std::pow(j.epsilon, 1.5);
      cdouble sp = 0.0;
      cdouble sm = 0.0;
      for (int n = 0; n < sol.channels; ++n) {
        const double am = n % 2 ? -a[n] : a[n];
        sp += a[n] * sol.t[n];
        sm += am * sol.t[n];
        // guide: derivative jump balances the two lead sources
        const cdouble jump = cdouble(0.0, 1.0) * kv.k_n[n] *
                             (sol.t[n] - (n == ni ? 1.0 : 0.0) + sol.r[n]) / 2.0;
        const cdouble src = c * (sol.s1 * a[n] + sol.s2 * am);
        CHECK(std::abs(jump - src) <= 1e-12 * (1.0 + std::abs(src)));
      }
      // leads: outgoing flux amplitude fed by the guide wave at each contact
      const cdouble lead = cdouble(0.0, 1.0) * kv.kappa;
      CHECK(std::abs(lead * sol.s1 - c * sp) <= 1e-10 * std::abs(c * sp));
      CHECK(std::abs(lead * sol.s2 - c * sm) <= 1e-10 * std::abs(c * sm));
     }
    }
  }
}

TEST_CASE("symmetric contacts at x = 0") {
  Junction j;
  j.x = 0.0;
  j.alpha = 3.0;
  j.epsilon = 0.3;
  j.k = 4.1;
  j.n_incident = 2;
  const auto sol = scattering_solve(j);
  CHECK(std::abs(sol.s1 - sol.s2) <= 1e-14 * std::abs(sol.s1));
  check_continuity(sol, j);
}

TEST_CASE("a channel at threshold is the limit of its neighbours") {
  for (int ni : {0, 1}) {
    Junction j;
    j.x = 0.6;
    j.alpha = 4.0;
    j.epsilon = 0.3;
    j.n_incident = ni;
    j.k = std::sqrt(2.0 * (8 - ni));  // channel 8 at threshold
    const auto at = scattering_solve(j);
    REQUIRE(at.lambdas[8] == cdouble(0.0));
    check_continuity(at, j);
    if (ni == 0) {
      // same parity as the incident channel: the leads are blocked
      CHECK(std::abs(at.s1) == 0.0);
      CHECK(std::abs(at.s2) == 0.0);
    } else {
      CHECK(std::abs(at.s1) > 0.0);
    }
    // the approach is a square-root cusp in k - k_threshold, from either side
    for (double side : {1.0, -1.0}) {
      std::vector<double> scaled;
      std::vector<double> dr;
      for (double rel : {1e-8, 1e-10, 1e-12}) {
        Junction near = j;
        near.k = j.k * (1.0 + side * rel);
        const auto sol = scattering_solve(near);
        scaled.push_back(std::abs(sol.s1 - at.s1) / std::sqrt(rel));
        dr.push_back(std::abs(sol.r[8] - at.r[8]));
      }
      CHECK(scaled[1] == doctest::Approx(scaled[0]).epsilon(0.05));
      CHECK(scaled[2] == doctest::Approx(scaled[1]).epsilon(0.05));
      CHECK(dr[2] <= 1e-3 * (1.0 + std::abs(at.r[8])));
      CHECK((dr[2] < dr[0] || dr[0] < 1e-14));
    }
  }
}

TEST_CASE("high-energy lead amplitudes") {
  const Junction j = high_energy_junction();
  const auto sol = scattering_solve(j);
  const cdouble tau = high_energy_tau(j);
  const double cp = chi(j.n_incident, j.x, j.particle);
  const double cm = chi(j.n_incident, -j.x, j.particle);
  CHECK(std::abs(sol.s1 / (tau * cp) - 1.0) < 5e-3);
  CHECK(std::abs(sol.s2 / (tau * cm) - 1.0) < 5e-3);
  CHECK(std::abs(std::abs(sol.s1 / sol.s2) - std::abs(cp / cm)) < 5e-3 * std::abs(cp / cm));
  CHECK(std::abs(effective_tau(sol, j) / tau - 1.0) < 5e-3);
  check_continuity(sol, j);
}

TEST_CASE("coherence length") {
  const ParticleParams p{1.2, 0.8, 1.1, 0.9};
  CHECK(std::isinf(coherence_length(0.0, 1.0, p)));
  CHECK(std::isinf(coherence_length_from_moments(0.5, 0.5, ParticleParams{})));
  CHECK(std::isinf(coherence_length_from_moments(0.5, 0.5 - 1e-12, ParticleParams{})));
  CHECK_THROWS_AS(coherence_length_from_moments(0.5, 0.49, ParticleParams{}), UncertaintyViolation);

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> logu(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const double T = std::pow(10.0, logu(rng) / 2.0);
    const double m = std::pow(10.0, logu(rng) / 4.0);
    // Gaussian state with effective temperature T and mass m
    const double c = thermal_coth(p.hbar * p.omega, p.kB * T);
    const double q2 = p.hbar / (2.0 * m * p.omega) * c;
    const double p2 = p.hbar * m * p.omega / 2.0 * c;
    CHECK(coherence_length(T, m, p) ==
          doctest::Approx(coherence_length_from_moments(q2, p2, p)).epsilon(1e-12));
  }

  // weak ohmic coupling at T = 0
  const ParticleParams unit;
  const double eta = 0.02;
  const double wc = 1e4;
  const auto s = equilibrium_state(BathResponse(OhmicSharp{eta, wc}, unit), 0.0);
  const double xi = coherence_length_from_moments(s.q2, s.p2, unit);
  CHECK(xi * xi == doctest::Approx(kPi / (4.0 * eta * std::log(wc))).epsilon(0.15));
  CHECK(coherence_length(s.T_eff, s.m_eff, unit) == doctest::Approx(xi).epsilon(1e-8));
}

TEST_CASE("fringe pattern") {
  const ParticleParams p;
  const auto sigma = density_matrix(0.8, 0.9, p);
  const cdouble tau(0.3, -0.2);
  const auto grid = uniform_phases(1024);

  Junction at0;
  at0.x = 0.0;
  const auto flat = fringe_pattern(sigma, at0, tau, grid);
  CHECK(flat.contrast == 1.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(flat.intensity[i] ==
          doctest::Approx(2.0 * std::norm(tau) * sigma(0, 0) * (1.0 + std::cos(grid[i])))
              .epsilon(1e-13));
  }
  CHECK(flat.intensity[512] == doctest::Approx(0.0).scale(1e-14));

  for (double x : {0.1, 0.5, 1.0, 2.0}) {
    Junction j;
    j.x = x;
    const auto pat = fringe_pattern(sigma, j, tau, grid);
    CHECK(pat.xi == doctest::Approx(coherence_length_from_moments(0.8, 0.9, p)).epsilon(1e-12));
    CHECK(pat.contrast == doctest::Approx(std::exp(-x * x / (2 * pat.xi * pat.xi))).epsilon(1e-14));
    CHECK(std::abs(sampled_contrast(pat) - pat.contrast) < 1e-10);
    CHECK(pat.contrast >= 0.0);
    CHECK(pat.contrast <= 1.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(pat.intensity[i] >= 0.0);
      CHECK(pat.intensity[i] == doctest::Approx(pat.intensity[(grid.size() - i) % grid.size()]));
    }
  }
  Junction j;
  CHECK_THROWS_AS(fringe_pattern(sigma, j, tau, std::vector<double>{0.0}), DomainError);
}

TEST_CASE("contrast is monotone in separation and coherence length") {
  const ParticleParams p;
  const auto grid = uniform_phases(64);
  double last = 2.0;
  for (double x = 0.1; x < 3.0; x += 0.1) {
    Junction j;
    j.x = x;
    const double c = fringe_pattern(density_matrix(1.0, 1.0, p), j, 1.0, grid).contrast;
    CHECK(c < last);
    last = c;
  }
  last = 0.0;
  Junction j;
  j.x = 1.0;
  for (double q2 = 3.0; q2 > 0.51; q2 -= 0.1) {
    // lower q2 p2 at fixed q2 / p2 means a purer state and longer xi
    const double c = fringe_pattern(density_matrix(q2, q2, p), j, 1.0, grid).contrast;
    CHECK(c > last);
    last = c;
  }
}

TEST_CASE("no-boundary-scattering validity") {
  const ParticleParams p;
  Junction j;
  j.k = 10.0;
  FiniteBath empty;
  empty.particle = p;
  const auto free = validity_check(j, empty, 0.5, 0.3);
  CHECK(free.pass);
  CHECK(std::isinf(free.ratio_coupling));
  CHECK(std::isinf(free.ratio_fluctuation));

  const auto bath = discretize(OhmicSharp{0.1, 20.0}, p, 200);
  std::vector<double> ks, r1, r2;
  for (double k : {10.0, 100.0, 1000.0, 10000.0}) {
    j.k = k;
    const auto rep = validity_check(j, bath, 0.6, 0.5);
    ks.push_back(std::log(k));
    r1.push_back(std::log(rep.ratio_coupling));
    r2.push_back(std::log(rep.ratio_fluctuation));
  }
  for (std::size_t i = 1; i < ks.size(); ++i) {
    CHECK((r1[i] - r1[i - 1]) / (ks[i] - ks[i - 1]) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK((r2[i] - r2[i - 1]) / (ks[i] - ks[i - 1]) == doctest::Approx(2.0).epsilon(1e-12));
  }

  // exactly at the threshold
  j.k = 1.0;
  const auto rep = validity_check(j, bath, 0.6, 0.5, 1.0);
  const double edge = std::min(rep.ratio_coupling, rep.ratio_fluctuation);
  CHECK(validity_check(j, bath, 0.6, 0.5, edge).pass);
  CHECK_FALSE(validity_check(j, bath, 0.6, 0.5, std::nextafter(edge, 1e300)).pass);
}
