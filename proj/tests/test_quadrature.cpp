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

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "qbath/quadrature.hpp"

using qbath::integrate;

TEST_CASE("GK21 integrates polynomials exactly") {
  // Both embedded rules are exact to degree 19, so one panel suffices.
  auto f19 = [](double x) { return std::pow(x, 19) + 3.0 * std::pow(x, 10); };
  const auto r = integrate(f19, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(1.0 / 20.0 + 3.0 / 11.0).epsilon(1e-15));
  CHECK(r.evaluations == 21);
  // Degree 31 is exact for the Kronrod rule alone; refinement keeps it exact.
  auto f31 = [](double x) { return std::pow(x, 31) - x; };
  CHECK(integrate(f31, -1.0, 2.0).value ==
        doctest::Approx(std::pow(2.0, 32) / 32.0 - 1.0 / 32.0 - 1.5).epsilon(1e-14));
}

TEST_CASE("adaptive refinement handles an integrable endpoint singularity") {
  auto f = [](double x) { return 1.0 / std::sqrt(x); };
  const auto r = integrate(f, 0.0, 1.0, {1e-10, 0.0, 1'000'000});
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("semi-infinite tail through the t/(1-t) map") {
  const std::array<double, 3> bp{0.0, 1.0, std::numeric_limits<double>::infinity()};
  auto lorentz = [](double x) { return 1.0 / (1.0 + x * x); };
  CHECK(integrate(lorentz, std::span<const double>(bp)).value ==
        doctest::Approx(std::numbers::pi / 2).epsilon(1e-11));
  auto decay = [](double x) { return std::exp(-x); };
  CHECK(integrate(decay, std::span<const double>(bp)).value == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("breakpoints at a jump keep the rule exact on each side") {
  const std::array<double, 3> bp{0.0, 0.3, 1.0};
  auto step = [](double x) { return x < 0.3 ? 1.0 : 2.0; };
  const auto r = integrate(step, std::span<const double>(bp));
  CHECK(r.value == doctest::Approx(0.3 + 1.4).epsilon(1e-15));
}

TEST_CASE("a divergent integral exhausts the budget") {
  auto f = [](double x) { return 1.0 / x; };
  CHECK_THROWS_AS(integrate(f, 0.0, 1.0, {1e-12, 0.0, 5000}), qbath::ConvergenceError);
}
