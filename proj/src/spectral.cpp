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

#include "qbath/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

namespace qbath {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be finite and positive");
  }
}

void require_non_negative(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be finite and non-negative");
  }
}

}  // namespace

// A maximal piece of the support of mu on which omega^2 mu(omega) is given by
// one analytic expression. The expression is also used outside [lo, hi] as
// the analytic continuation needed by the pole subtraction.
struct BathResponse::Segment {
  enum class Kind { Constant, Lorentzian, LinearMu };
  Kind kind = Kind::Constant;
  double lo = 0.0;
  double hi = 0.0;
  double c0 = 0.0;
  double c1 = 0.0;
  double wc = 0.0;

  // rho(w) = w^2 mu(w)
  double rho(double w) const {
    switch (kind) {
      case Kind::Constant:
        return c0;
      case Kind::Lorentzian:
        return c0 * wc * wc / (w * w + wc * wc);
      case Kind::LinearMu:
        return w * w * (c0 + c1 * (w - lo));
    }
    return 0.0;
  }

  // (rho(w) - rho(u)) / (w - u) without the cancellation of the naive form.
  double divided_difference(double w, double u) const {
    switch (kind) {
      case Kind::Constant:
        return 0.0;
      case Kind::Lorentzian: {
        const double w2 = wc * wc;
        return -c0 * w2 * (u + w) / ((w * w + w2) * (u * u + w2));
      }
      case Kind::LinearMu:
        return c0 * (w + u) + c1 * (w * w + w * u + u * u - lo * (w + u));
    }
    return 0.0;
  }
};

using Segment = BathResponse::Segment;

namespace {

std::vector<Segment> make_segments(const SpectralDensity& env) {
  std::vector<Segment> out;
  std::visit(overloaded{
                 [&](const OhmicSharp& o) {
                   if (o.eta > 0.0) {
                     out.push_back({Segment::Kind::Constant, 0.0, o.omega_c,
                                    2.0 * o.eta / std::numbers::pi, 0.0, 0.0});
                   }
                 },
                 [&](const Drude& d) {
                   if (d.eta > 0.0) {
                     out.push_back({Segment::Kind::Lorentzian, 0.0, kInf,
                                    2.0 * d.eta / std::numbers::pi, 0.0, d.omega_c});
                   }
                 },
                 [&](const RCCircuit& rc) {
                   const Drude d = equivalent_drude(rc);
                   if (d.eta > 0.0) {
                     out.push_back({Segment::Kind::Lorentzian, 0.0, kInf,
                                    2.0 * d.eta / std::numbers::pi, 0.0, d.omega_c});
                   }
                 },
                 [&](const Tabulated& t) {
                   const auto& w = t.omega();
                   const auto& m = t.mu();
                   for (std::size_t i = 0; i + 1 < w.size(); ++i) {
                     if (m[i] == 0.0 && m[i + 1] == 0.0) continue;
                     const double slope = (m[i + 1] - m[i]) / (w[i + 1] - w[i]);
                     out.push_back({Segment::Kind::LinearMu, w[i], w[i + 1], m[i], slope, 0.0});
                   }
                 },
             },
             env);
  return out;
}

double segment_mass_moment(const Segment& s) {
  switch (s.kind) {
    case Segment::Kind::Constant:
      return s.c0 * (s.hi - s.lo);
    case Segment::Kind::Lorentzian:
      return s.c0 * s.wc * (std::atan(s.hi / s.wc) - std::atan(s.lo / s.wc));
    case Segment::Kind::LinearMu: {
      // int w^2 (c0 + c1 (w - lo)) dw, exact for the cubic.
      auto prim = [&](double w) {
        return s.c0 * w * w * w / 3.0 + s.c1 * (w * w * w * w / 4.0 - s.lo * w * w * w / 3.0);
      };
      return prim(s.hi) - prim(s.lo);
    }
  }
  return 0.0;
}

// Result of P int_seg rho / (u^2 - w^2): a finite part plus the coefficient of
// a +infinity coming from a log endpoint that coincides with u.
struct PvPart {
  double finite = 0.0;
  double singular = 0.0;
  double scale = 0.0;
};

// Breakpoints spaced geometrically away from u, matching the 1/|u - w| scale
// of the kernel.
void add_geometric(std::vector<double>& pts, double lo, double hi, double u) {
  pts.push_back(lo);
  if (u > lo && u < hi) pts.push_back(u);
  const double reach = std::max(u - lo, hi - u);
  double d = std::max(std::abs(u), 1e-300);
  for (int k = 0; k < 200 && d < reach; ++k, d *= 4.0) {
    if (u + d > lo && u + d < hi) pts.push_back(u + d);
    if (u - d > lo && u - d < hi) pts.push_back(u - d);
  }
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

PvPart segment_pv(const Segment& s, double u, const QuadratureOptions& opts) {
  PvPart out;
  auto plain = [&](double w) { return s.rho(w) / ((u - w) * (u + w)); };
  const double ru = s.rho(u);
  std::vector<double> pts;

  if (!std::isfinite(s.hi)) {
    // Subtract rho(u) / (u^2 - w^2) on the whole half-line. Its principal
    // value on [lo, inf) is -ln((u + lo) / |u - lo|) / (2u), which vanishes for
    // lo = 0, so no large terms cancel when u is far below the bath scale.
    auto regular = [&](double w) { return -s.divided_difference(w, u) / (u + w); };
    const double reach = std::max({2.0 * u, s.lo + u, s.wc});
    add_geometric(pts, s.lo, reach, u);
    for (double w = 2.0 * reach; w < 1e3 * reach; w *= 2.0) pts.push_back(w);
    pts.push_back(kInf);
    const auto r = integrate(regular, std::span<const double>(pts), opts);
    out.finite += r.value;
    out.scale += std::abs(r.value);
    if (s.lo > 0.0 && ru != 0.0) {
      const double dl = std::abs(u - s.lo);
      const double c = ru / (2.0 * u);
      if (dl == 0.0) {
        out.singular -= c;
      } else {
        out.finite -= c * std::log((u + s.lo) / dl);
        out.scale += std::abs(c * std::log((u + s.lo) / dl));
      }
    }
    return out;
  }

  const double width = s.hi - s.lo;
  if (u >= s.lo - 0.5 * width && u <= s.hi + 0.5 * width) {
    // With h(w) = rho(w) / (u + w), integrate (h(w) - h(u)) / (u - w) and add
    // h(u) (ln|u - lo| - ln|u - hi|) in closed form.
    const double hu = ru / (2.0 * u);
    auto regular = [&](double w) {
      return (hu - s.divided_difference(w, u)) / (u + w);
    };
    add_geometric(pts, s.lo, s.hi, std::clamp(u, s.lo, s.hi));
    const auto r = integrate(regular, std::span<const double>(pts), opts);
    out.finite += r.value;
    out.scale += std::abs(r.value);
    if (hu != 0.0) {
      const double dl = std::abs(u - s.lo);
      const double dh = std::abs(u - s.hi);
      if (dl == 0.0) {
        out.singular -= hu;
      } else {
        out.finite += hu * std::log(dl);
      }
      if (dh == 0.0) {
        out.singular += hu;
      } else {
        out.finite -= hu * std::log(dh);
      }
      out.scale += std::abs(hu) * (std::abs(std::log(dl > 0 ? dl : 1.0)) +
                                   std::abs(std::log(dh > 0 ? dh : 1.0)));
    }
  } else {
    add_geometric(pts, s.lo, s.hi, std::clamp(u, s.lo, s.hi));
    const auto r = integrate(plain, std::span<const double>(pts), opts);
    out.finite += r.value;
    out.scale += std::abs(r.value);
  }
  return out;
}

double delta_from_segments(std::span<const Segment> segs, const ParticleParams& p, double u,
                           const QuadratureOptions& opts) {
  if (!(u > 0.0)) throw DomainError("delta requires u > 0");
  double finite = 0.0;
  double singular = 0.0;
  double scale = 0.0;
  for (const auto& s : segs) {
    const PvPart part = segment_pv(s, u, opts);
    finite += part.finite;
    singular += part.singular;
    scale += part.scale + std::abs(s.rho(u) / (2.0 * u));
  }
  const double pref = u * u / p.mass;
  if (std::abs(singular) > 1e-12 * scale) return std::copysign(kInf, singular);
  return pref * finite;
}

double gamma_from_mu(double mu, const ParticleParams& p, double u) {
  return std::numbers::pi * u * u * mu / (2.0 * p.mass);
}

double second_moment_of(std::span<const Segment> segs) {
  double total = 0.0;
  for (const auto& s : segs) total += segment_mass_moment(s);
  return total;
}

// g(u) = u^2 - Omega^2 - Delta(u); +-inf at log-divergent edges.
double resolvent_denominator(std::span<const Segment> segs, const ParticleParams& p, double u,
                             const QuadratureOptions& opts) {
  const double d = delta_from_segments(segs, p, u, opts);
  if (std::isinf(d)) return -d;
  return u * u - p.omega * p.omega - d;
}

std::vector<PoleRecord> poles_in_band(std::span<const Segment> segs, const SpectralDensity& env,
                                      const ParticleParams& p, FrequencyBand band) {
  const QuadratureOptions tight{1e-13, 0.0, 1'000'000};
  std::vector<PoleRecord> out;
  double lo = std::max(band.lo, 0.0);
  double hi = band.hi;
  if (!(hi > lo)) return out;
  if (!std::isfinite(hi)) {
    // Beyond twice the support, Delta(u) <= (4/3) M2 / m, so g > 0 past this point.
    const double m2 = second_moment_of(segs);
    double end = 0.0;
    for (const auto& s : segs) end = std::max(end, s.hi);
    hi = std::max({2.0 * end, 2.0 * lo,
                   2.0 * std::sqrt(p.omega * p.omega + (4.0 / 3.0) * m2 / p.mass) + 1e-12});
  }
  auto g = [&](double u) {
    if (u <= 0.0) return -p.omega * p.omega;
    return resolvent_denominator(segs, p, u, tight);
  };

  std::vector<double> xs;
  const double width = hi - lo;
  constexpr int kUniform = 256;
  for (int i = 0; i <= kUniform; ++i) xs.push_back(lo + width * i / kUniform);
  for (int k = 1; k <= 60; ++k) {
    const double d = width * std::ldexp(1.0, -k);
    xs.push_back(lo + d);
    xs.push_back(hi - d);
  }
  if (p.omega > lo && p.omega < hi) xs.push_back(p.omega);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  // The band edges themselves are only probed for their limiting sign.
  std::vector<double> gs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) gs[i] = g(xs[i]);

  auto sign = [](double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); };
  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const int sa = sign(gs[i]);
    const int sb = sign(gs[i + 1]);
    if (sa == 0 && i > 0 && i + 1 < xs.size()) {
      roots.push_back(xs[i]);
      continue;
    }
    if (sa * sb >= 0) continue;
    double a = xs[i];
    double b = xs[i + 1];
    for (int it = 0; it < 400; ++it) {
      const double m = 0.5 * (a + b);
      if (!(m > a && m < b)) break;
      const int sm = sign(g(m));
      if (sm == 0) {
        a = b = m;
        break;
      }
      if (sm == sa) {
        a = m;
      } else {
        b = m;
      }
    }
    // Stay strictly inside the band: an edge value means the root is
    // unresolvably close to it.
    double r = 0.5 * (a + b);
    if (r <= lo) r = std::nextafter(lo, hi);
    if (r >= hi) r = std::nextafter(hi, lo);
    roots.push_back(r);
  }

  for (double u : roots) {
    if (evaluate_mu(env, u) > 0.0) {
      throw InconsistencyError("real pole at u = " + std::to_string(u) +
                               " lies where Gamma(u) > 0");
    }
    const double z = u * u;
    const double zlo = lo * lo;
    const double zhi = hi * hi;
    double h = std::min({1e-6 * z, 0.5 * (z - zlo), 0.5 * (zhi - z)});
    double weight = 0.0;
    if (h > 16.0 * std::numeric_limits<double>::epsilon() * z) {
      auto big_g = [&](double zz) {
        return zz - p.omega * p.omega - delta_from_segments(segs, p, std::sqrt(zz), tight);
      };
      const double deriv = (big_g(z + h) - big_g(z - h)) / (2.0 * h);
      weight = deriv > 0.0 && std::isfinite(deriv) ? 1.0 / deriv : 0.0;
    }
    out.push_back({z, weight});
  }
  return out;
}

std::vector<FrequencyBand> gaps_from_segments(std::span<const Segment> segs) {
  // Segments are sorted and disjoint by construction.
  std::vector<FrequencyBand> out;
  double cursor = 0.0;
  for (const auto& s : segs) {
    if (s.lo > cursor) out.push_back({cursor, s.lo});
    cursor = std::max(cursor, s.hi);
  }
  if (std::isfinite(cursor)) out.push_back({cursor, kInf});
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Tabulated

Tabulated::Tabulated(std::vector<double> omega, std::vector<double> mu)
    : omega_(std::move(omega)), mu_(std::move(mu)) {
  if (omega_.size() != mu_.size()) throw DomainError("tabulated grid: column length mismatch");
  if (omega_.size() < 2) throw DomainError("tabulated grid needs at least two points");
  for (std::size_t i = 0; i < omega_.size(); ++i) {
    if (!std::isfinite(omega_[i]) || omega_[i] < 0.0) {
      throw DomainError("tabulated grid: omega must be finite and non-negative");
    }
    if (!std::isfinite(mu_[i]) || mu_[i] < 0.0) {
      throw DomainError("tabulated grid: mu must be finite and non-negative");
    }
    if (i > 0 && !(omega_[i] > omega_[i - 1])) {
      throw DomainError("tabulated grid: omega must be strictly increasing");
    }
  }
}

double Tabulated::operator()(double w) const {
  if (w < omega_.front() || w > omega_.back()) return 0.0;
  auto it = std::upper_bound(omega_.begin(), omega_.end(), w);
  if (it == omega_.end()) return mu_.back();
  const std::size_t i = static_cast<std::size_t>(it - omega_.begin()) - 1;
  const double t = (w - omega_[i]) / (omega_[i + 1] - omega_[i]);
  return mu_[i] + t * (mu_[i + 1] - mu_[i]);
}

Tabulated Tabulated::parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DomainError("tabulated csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "omega,mu") throw DomainError("tabulated csv: header must be 'omega,mu'");
  std::vector<double> w;
  std::vector<double> m;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw DomainError("tabulated csv: line " + std::to_string(lineno) + " has no comma");
    }
    try {
      std::size_t used = 0;
      const std::string a = line.substr(0, comma);
      const std::string b = line.substr(comma + 1);
      w.push_back(std::stod(a, &used));
      if (used != a.size()) throw std::invalid_argument(a);
      m.push_back(std::stod(b, &used));
      if (used != b.size()) throw std::invalid_argument(b);
    } catch (const std::logic_error&) {
      throw DomainError("tabulated csv: line " + std::to_string(lineno) + " is not numeric");
    }
  }
  return Tabulated(std::move(w), std::move(m));
}

Tabulated Tabulated::load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_csv(in);
}

// ---------------------------------------------------------------------------
// Free functions on SpectralDensity

void validate(const SpectralDensity& env) {
  std::visit(overloaded{
                 [](const OhmicSharp& o) {
                   require_non_negative(o.eta, "eta");
                   require_positive(o.omega_c, "omega_c");
                 },
                 [](const Drude& d) {
                   require_non_negative(d.eta, "eta");
                   require_positive(d.omega_c, "omega_c");
                 },
                 [](const RCCircuit& rc) {
                   require_non_negative(rc.charge * rc.charge, "charge");
                   require_positive(rc.plate_distance, "plate distance");
                   require_positive(rc.capacitance, "capacitance");
                   require_positive(rc.resistance, "resistance");
                 },
                 [](const Tabulated&) {},
             },
             env);
}

Drude equivalent_drude(const RCCircuit& rc) {
  const double l2 = rc.plate_distance * rc.plate_distance;
  return {rc.resistance * rc.charge * rc.charge / l2, 1.0 / (rc.resistance * rc.capacitance)};
}

double renormalized_frequency(double omega_guide, double mass, const RCCircuit& rc) {
  const double shift =
      rc.charge * rc.charge / (rc.plate_distance * rc.plate_distance * rc.capacitance);
  const double w2 = omega_guide * omega_guide - shift / mass;
  if (!(w2 > 0.0)) throw DomainError("capacitive shift leaves a non-positive frequency");
  return std::sqrt(w2);
}

SpectralDensity scaled(const SpectralDensity& env, double factor) {
  require_non_negative(factor, "scale factor");
  return std::visit(
      overloaded{
          [&](const OhmicSharp& o) -> SpectralDensity { return OhmicSharp{o.eta * factor, o.omega_c}; },
          [&](const Drude& d) -> SpectralDensity { return Drude{d.eta * factor, d.omega_c}; },
          [&](const RCCircuit& rc) -> SpectralDensity {
            RCCircuit out = rc;
            out.charge *= std::sqrt(factor);
            return out;
          },
          [&](const Tabulated& t) -> SpectralDensity {
            std::vector<double> mu = t.mu();
            for (double& v : mu) v *= factor;
            return Tabulated(t.omega(), std::move(mu));
          },
      },
      env);
}

bool is_identically_zero(const SpectralDensity& env) { return make_segments(env).empty(); }

std::vector<double> breakpoints(const SpectralDensity& env) {
  std::vector<double> out;
  for (const auto& s : make_segments(env)) {
    if (s.lo > 0.0) out.push_back(s.lo);
    if (std::isfinite(s.hi)) out.push_back(s.hi);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double support_end(const SpectralDensity& env) {
  double end = 0.0;
  for (const auto& s : make_segments(env)) end = std::max(end, s.hi);
  return end;
}

std::vector<FrequencyBand> spectral_gaps(const SpectralDensity& env) {
  return gaps_from_segments(make_segments(env));
}

double evaluate_mu(const SpectralDensity& env, double omega) {
  if (!(omega > 0.0)) throw DomainError("mu(omega) requires omega > 0");
  return std::visit(overloaded{
                        [&](const OhmicSharp& o) {
                          return omega < o.omega_c
                                     ? 2.0 * o.eta / (std::numbers::pi * omega * omega)
                                     : 0.0;
                        },
                        [&](const Drude& d) {
                          const double w2 = omega * omega;
                          const double c2 = d.omega_c * d.omega_c;
                          return (2.0 * d.eta / (std::numbers::pi * w2)) * c2 / (w2 + c2);
                        },
                        [&](const RCCircuit& rc) {
                          // Circuit form, kept separate from the Drude branch on purpose
                          // so the two routes can be compared.
                          const double rc_rate = 1.0 / (rc.resistance * rc.capacitance);
                          const double w2 = omega * omega;
                          const double l2 = rc.plate_distance * rc.plate_distance;
                          return 2.0 * rc.charge * rc.charge /
                                 (std::numbers::pi * w2 * l2 * rc.capacitance) * rc_rate /
                                 (w2 + rc_rate * rc_rate);
                        },
                        [&](const Tabulated& t) { return t(omega); },
                    },
                    env);
}

double gamma(const SpectralDensity& env, const ParticleParams& particle, double u) {
  return gamma_from_mu(evaluate_mu(env, u), particle, u);
}

double delta(const SpectralDensity& env, const ParticleParams& particle, double u,
             const QuadratureOptions& opts) {
  particle.validate();
  const auto segs = make_segments(env);
  return delta_from_segments(segs, particle, u, opts);
}

std::vector<PoleRecord> find_real_poles(const SpectralDensity& env, const ParticleParams& particle,
                                        FrequencyBand band) {
  particle.validate();
  validate(env);
  const auto segs = make_segments(env);
  return poles_in_band(segs, env, particle, band);
}

// ---------------------------------------------------------------------------
// BathResponse

BathResponse::BathResponse(SpectralDensity env, ParticleParams particle, QuadratureOptions opts)
    : env_(std::move(env)), particle_(particle), opts_(opts) {
  particle_.validate();
  validate(env_);
  segments_ = make_segments(env_);
  decoupled_ = segments_.empty();
  for (const auto& band : gaps_from_segments(segments_)) {
    auto found = poles_in_band(segments_, env_, particle_, band);
    poles_.insert(poles_.end(), found.begin(), found.end());
  }
}

BathResponse::~BathResponse() = default;
BathResponse::BathResponse(const BathResponse&) = default;
BathResponse::BathResponse(BathResponse&&) noexcept = default;
BathResponse& BathResponse::operator=(const BathResponse&) = default;
BathResponse& BathResponse::operator=(BathResponse&&) noexcept = default;

double BathResponse::gamma(double u) const { return qbath::gamma(env_, particle_, u); }

double BathResponse::delta(double u) const { return delta(u, opts_); }

double BathResponse::delta(double u, const QuadratureOptions& opts) const {
  return delta_from_segments(segments_, particle_, u, opts);
}

double BathResponse::second_moment() const { return second_moment_of(segments_); }

}  // namespace qbath
