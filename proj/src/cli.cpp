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


#include "qbath/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "qbath/equilibrium.hpp"
#include "qbath/errors.hpp"
#include "qbath/finite_bath.hpp"
#include "qbath/interferometer.hpp"
#include "qbath/spectral.hpp"

namespace qbath::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

namespace {

double parse_double(std::string_view s) {
  const std::string str(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(str, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + str + "'");
  }
  if (used != str.size()) throw std::invalid_argument("not a number: '" + str + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    const auto item = trim(text.substr(pos, comma - pos));
    if (item.empty()) throw std::invalid_argument("empty grid item");
    const auto c1 = item.find(':');
    if (c1 == std::string_view::npos) {
      out.push_back(parse_double(item));
    } else {
      const auto c2 = item.find(':', c1 + 1);
      if (c2 == std::string_view::npos || item.find(':', c2 + 1) != std::string_view::npos) {
        throw std::invalid_argument("range must read start:stop:step");
      }
      const double start = parse_double(item.substr(0, c1));
      const double stop = parse_double(item.substr(c1 + 1, c2 - c1 - 1));
      const double step = parse_double(item.substr(c2 + 1));
      if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("range step must be positive");
      if (!(stop >= start)) throw std::invalid_argument("range stop is below its start");
      const auto count = static_cast<long long>(std::floor((stop - start) / step + 0.5)) + 1;
      if (count > 10'000'000) throw std::invalid_argument("range has too many points");
      for (long long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    }
    pos = comma + 1;
  }
  for (double v : out) {
    if (!std::isfinite(v)) throw std::invalid_argument("grid values must be finite");
  }
  return out;
}

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParticleArgs {
  double mass = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
  double kB = 1.0;
  std::optional<double> omega_guide;
};

struct EnvArgs {
  std::string kind = "ohmic";
  double omega_c = 100.0;
  std::string table;
  double charge = 1.0;
  double plate_distance = 1.0;
  double capacitance = 1.0;
  double resistance = 1.0;
};

struct CommonArgs {
  std::string output;
  bool stamp = false;
};

RCCircuit rc_of(const EnvArgs& e) {
  return {e.charge, e.plate_distance, e.capacitance, e.resistance};
}

// eta is the friction coefficient for ohmic and Drude baths and a
// dimensionless multiplier of mu for the RC and tabulated ones.
SpectralDensity make_env(const EnvArgs& e, double eta) {
  if (!(eta >= 0.0)) throw UsageError("eta must be >= 0");
  if (e.kind == "ohmic") return OhmicSharp{eta, e.omega_c};
  if (e.kind == "drude") return Drude{eta, e.omega_c};
  if (e.kind == "rc") return scaled(rc_of(e), eta);
  if (e.kind == "table") {
    if (e.table.empty()) throw UsageError("--env table needs --table <csv>");
    return scaled(Tabulated::load_csv(e.table), eta);
  }
  throw UsageError("unknown environment '" + e.kind + "'");
}

double default_eta(const EnvArgs& e) { return (e.kind == "ohmic" || e.kind == "drude") ? 0.1 : 1.0; }

ParticleParams make_particle(const ParticleArgs& a, const EnvArgs& e) {
  ParticleParams p{a.mass, a.omega, a.hbar, a.kB};
  if (a.omega_guide) {
    if (e.kind != "rc") throw UsageError("--omega-guide applies to --env rc only");
    p.omega = renormalized_frequency(*a.omega_guide, a.mass, rc_of(e));
  }
  p.validate();
  return p;
}

void add_particle_options(CLI::App* app, ParticleArgs& a) {
  app->add_option("--mass", a.mass, "particle mass m")->capture_default_str();
  app->add_option("--omega", a.omega, "transverse frequency Omega")->capture_default_str();
  app->add_option("--hbar", a.hbar, "Planck constant in user units")->capture_default_str();
  app->add_option("--kb", a.kB, "Boltzmann constant in user units")->capture_default_str();
  app->add_option("--omega-guide", a.omega_guide,
                  "bare guide frequency; Omega becomes the RC-renormalized value");
}

void add_env_options(CLI::App* app, EnvArgs& e) {
  app->add_option("--env", e.kind, "ohmic, drude, rc or table")
      ->check(CLI::IsMember({"ohmic", "drude", "rc", "table"}))
      ->capture_default_str();
  app->add_option("--omega-c", e.omega_c, "cutoff frequency")->capture_default_str();
  app->add_option("--table", e.table, "CSV with header omega,mu");
  app->add_option("--charge", e.charge, "RC: particle charge e")->capture_default_str();
  app->add_option("--plate-distance", e.plate_distance, "RC: plate distance l")->capture_default_str();
  app->add_option("--capacitance", e.capacitance, "RC: capacitance C")->capture_default_str();
  app->add_option("--resistance", e.resistance, "RC: resistance R")->capture_default_str();
}

void add_common_options(CLI::App* app, CommonArgs& c) {
  app->add_option("-o,--output", c.output, "output file (default stdout)");
  app->add_flag("--stamp", c.stamp, "add a generation timestamp comment");
}

struct JunctionArgs {
  double x = 1.0;
  double alpha = 1.0;
  double epsilon = 0.1;
  double k = 10.0;
  int n_incident = 0;
  int n_channels = 0;
};

void add_junction_options(CLI::App* app, JunctionArgs& j) {
  app->add_option("--x", j.x, "half separation of the contacts")->capture_default_str();
  app->add_option("--alpha", j.alpha, "contact coupling strength")->capture_default_str();
  app->add_option("--epsilon", j.epsilon, "contact width")->capture_default_str();
  app->add_option("--k", j.k, "incident longitudinal wavevector")->capture_default_str();
  app->add_option("--n-incident", j.n_incident, "incident channel")->capture_default_str();
  app->add_option("--n-channels", j.n_channels, "starting truncation (0 = automatic)")
      ->capture_default_str();
}

Junction make_junction(const JunctionArgs& a, const ParticleParams& p) {
  Junction j;
  j.x = a.x;
  j.alpha = a.alpha;
  j.epsilon = a.epsilon;
  j.k = a.k;
  j.n_incident = a.n_incident;
  j.n_channels = a.n_channels;
  j.particle = p;
  j.validate();
  return j;
}

std::string join(std::initializer_list<double> values) {
  std::string s;
  for (double v : values) {
    if (!s.empty()) s += ',';
    s += format_number(v);
  }
  return s;
}

std::string utc_stamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Output sink: the requested file or the caller's stream.
class Sink {
 public:
  Sink(const CommonArgs& c, std::ostream& fallback) : os_(&fallback) {
    if (!c.output.empty()) {
      file_ = std::make_unique<std::ofstream>(c.output, std::ios::binary | std::ios::trunc);
      if (!*file_) throw std::runtime_error("cannot open '" + c.output + "' for writing");
      os_ = file_.get();
    }
    if (c.stamp) *os_ << "# generated " << utc_stamp() << '\n';
  }

  std::ostream& operator*() { return *os_; }

  void close() {
    os_->flush();
    if (!*os_) throw std::runtime_error("write failed");
  }

 private:
  std::ostream* os_;
  std::unique_ptr<std::ofstream> file_;
};

int code_of(const std::exception& e) {
  if (dynamic_cast<const DomainError*>(&e) || dynamic_cast<const UsageError*>(&e) ||
      dynamic_cast<const std::invalid_argument*>(&e)) {
    return kUsageError;
  }
  return kNumericalError;
}

void run_pool(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) task(i);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

// ---- sweep ----

struct SweepArgs {
  CommonArgs common;
  ParticleArgs particle;
  EnvArgs env;
  std::string t_grid = "0:5:0.1";
  std::string eta_grid;
  bool include_pole = false;
  unsigned threads = 0;
};

std::vector<double> checked_grid(const std::string& text, const char* name) {
  std::vector<double> g;
  try {
    g = parse_grid(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(name) + ": " + e.what());
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] < 0.0) throw UsageError(std::string(name) + " values must be >= 0");
    if (i > 0 && !(g[i] > g[i - 1])) throw UsageError(std::string(name) + " must be strictly increasing");
  }
  return g;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  const auto Ts = checked_grid(a.t_grid, "--t-grid");
  const auto etas = checked_grid(a.eta_grid.empty() ? format_number(default_eta(a.env)) : a.eta_grid,
                                 "--eta");
  const ParticleParams particle = make_particle(a.particle, a.env);
  std::vector<SpectralDensity> envs;
  for (double eta : etas) envs.push_back(make_env(a.env, eta));

  // one response per eta, shared read-only by the temperature points
  std::vector<std::optional<BathResponse>> responses(etas.size());
  std::vector<std::exception_ptr> response_errors(etas.size());
  const unsigned threads = a.threads ? a.threads : std::max(1u, std::thread::hardware_concurrency());
  run_pool(etas.size(), threads, [&](std::size_t i) {
    try {
      responses[i].emplace(envs[i], particle);
    } catch (const std::exception&) {
      response_errors[i] = std::current_exception();
    }
  });

  const std::size_t n = Ts.size() * etas.size();
  std::vector<std::string> rows(n);
  std::vector<std::string> failures(n);
  std::vector<int> codes(n, kOk);
  run_pool(n, threads, [&](std::size_t idx) {
    const std::size_t it = idx / etas.size();
    const std::size_t ie = idx % etas.size();
    const double T = Ts[it];
    const double eta = etas[ie];
    std::array<double, 6> v;
    v.fill(std::nan(""));
    try {
      if (!responses[ie]) std::rethrow_exception(response_errors[ie]);
      const auto s = equilibrium_state(*responses[ie], T, a.include_pole);
      v = {s.q2, s.p2, s.T_eff, s.m_eff, s.entropy, coherence_length(s.T_eff, s.m_eff, particle)};
    } catch (const std::exception& e) {
      failures[idx] = "sweep: T=" + format_number(T) + " eta=" + format_number(eta) + ": " + e.what();
      codes[idx] = code_of(e);
    }
    rows[idx] = join({T, eta, v[0], v[1], v[2], v[3], v[4], v[5]});
  });

  Sink sink(a.common, out);
  *sink << "T,eta,q2,p2,T_eff,m_eff,entropy,xi\n";
  for (const auto& r : rows) *sink << r << '\n';
  sink.close();
  int code = kOk;
  for (std::size_t i = 0; i < n; ++i) {
    if (codes[i] != kOk) {
      err << failures[i] << '\n';
      code = std::max(code, codes[i]);
    }
  }
  return code;
}

// ---- fringes ----

struct FringeArgs {
  CommonArgs common;
  ParticleArgs particle;
  EnvArgs env;
  JunctionArgs junction;
  double eta = -1.0;
  double T = 0.0;
  std::size_t phases = 1024;
  bool include_pole = false;
  bool high_energy = false;
};

int cmd_fringes(const FringeArgs& a, std::ostream& out) {
  const ParticleParams particle = make_particle(a.particle, a.env);
  const double eta = a.eta < 0.0 ? default_eta(a.env) : a.eta;
  const auto env = make_env(a.env, eta);
  if (!(a.T >= 0.0)) throw UsageError("temperature must be >= 0");
  if (a.phases < 2) throw UsageError("--phases must be at least 2");
  const Junction j = make_junction(a.junction, particle);
  const auto state = equilibrium_state(BathResponse(env, particle), a.T, a.include_pole);
  const auto sigma = density_matrix(state.q2, state.p2, particle);
  const cdouble tau = a.high_energy ? high_energy_tau(j) : effective_tau(scattering_solve(j), j);
  const auto pat = fringe_pattern(sigma, j, tau, uniform_phases(a.phases));

  Sink sink(a.common, out);
  *sink << "# P1=" << format_number(pat.P1) << ",P2=" << format_number(pat.P2)
        << ",C=" << format_number(pat.contrast) << ",xi=" << format_number(pat.xi) << '\n';
  *sink << "# tau_re=" << format_number(tau.real()) << ",tau_im=" << format_number(tau.imag())
        << '\n';
  *sink << "phi,P\n";
  for (std::size_t i = 0; i < pat.phi_grid.size(); ++i) {
    *sink << join({pat.phi_grid[i], pat.intensity[i]}) << '\n';
  }
  sink.close();
  return kOk;
}

// ---- oracle ----

struct OracleArgs {
  CommonArgs common;
  ParticleArgs particle;
  EnvArgs env;
  double eta = -1.0;
  double T = 0.0;
  int n = 4000;
  double tolerance = 0.01;
  bool include_pole = false;
};

double rel_dev(double a, double b) { return a == b ? 0.0 : std::abs(a - b) / std::abs(b); }

int cmd_oracle(const OracleArgs& a, std::ostream& out) {
  if (a.n < 100) throw UsageError("--n must be at least 100");
  if (!(a.T >= 0.0)) throw UsageError("temperature must be >= 0");
  const ParticleParams particle = make_particle(a.particle, a.env);
  const double eta = a.eta < 0.0 ? default_eta(a.env) : a.eta;
  const auto env = make_env(a.env, eta);
  const auto cont = equilibrium_state(BathResponse(env, particle), a.T, a.include_pole);

  Sink sink(a.common, out);
  auto& os = *sink;
  os << "environment " << a.env.kind << " eta=" << format_number(eta)
     << " omega_c=" << format_number(a.env.omega_c) << " T=" << format_number(a.T) << '\n';
  os << "continuum q2=" << format_number(cont.q2) << " p2=" << format_number(cont.p2) << '\n';
  std::vector<double> dq, dp;
  for (int n : {a.n / 4, a.n / 2, a.n}) {
    const auto m = exact_moments(decompose(discretize(env, particle, n)), particle, a.T);
    dq.push_back(rel_dev(m.q2, cont.q2));
    dp.push_back(rel_dev(m.p2, cont.p2));
    os << "N=" << n << " q2=" << format_number(m.q2) << " p2=" << format_number(m.p2)
       << " dev_q2=" << format_number(dq.back()) << " dev_p2=" << format_number(dp.back()) << '\n';
  }
  const bool exact = dq.back() == 0.0 && dp.back() == 0.0;
  const bool decreasing = dq[0] > dq[1] && dq[1] > dq[2] && dp[0] > dp[1] && dp[1] > dp[2];
  os << "trend " << (exact ? "exact" : decreasing ? "decreasing" : "not-decreasing") << '\n';
  const bool pass = dq.back() < a.tolerance && dp.back() < a.tolerance;
  os << "result " << (pass ? "pass" : "fail") << " tolerance=" << format_number(a.tolerance) << '\n';
  sink.close();
  return pass ? kOk : kToleranceFailure;
}

// ---- scatter ----

struct ScatterArgs {
  CommonArgs common;
  ParticleArgs particle;
  JunctionArgs junction;
};

int cmd_scatter(const ScatterArgs& a, std::ostream& out) {
  const ParticleParams particle = make_particle(a.particle, EnvArgs{});
  const Junction j = make_junction(a.junction, particle);
  const auto sol = scattering_solve(j);
  const auto kv = channel_wavevectors(j, sol.channels);

  Sink sink(a.common, out);
  auto& os = *sink;
  os << "# s1_re=" << format_number(sol.s1.real()) << ",s1_im=" << format_number(sol.s1.imag())
     << ",s2_re=" << format_number(sol.s2.real()) << ",s2_im=" << format_number(sol.s2.imag())
     << '\n';
  os << "# R_re=" << format_number(sol.R.real()) << ",R_im=" << format_number(sol.R.imag())
     << ",Z_re=" << format_number(sol.Z.real()) << ",Z_im=" << format_number(sol.Z.imag())
     << ",channels=" << sol.channels << '\n';
  os << "n,Re(t),Im(t),Re(r),Im(r),Re(k_n),Im(k_n)\n";
  for (int n = 0; n < sol.channels; ++n) {
    os << n << ','
       << join({sol.t[n].real(), sol.t[n].imag(), sol.r[n].real(), sol.r[n].imag(),
                kv.k_n[n].real(), kv.k_n[n].imag()})
       << '\n';
  }
  sink.close();
  return kOk;
}

// ---- bath ----

struct BathArgs {
  CommonArgs common;
  ParticleArgs particle;
  EnvArgs env;
  double eta = -1.0;
  std::string u_grid = "0.05:5:0.05";
};

int cmd_bath(const BathArgs& a, std::ostream& out) {
  const ParticleParams particle = make_particle(a.particle, a.env);
  const double eta = a.eta < 0.0 ? default_eta(a.env) : a.eta;
  const auto env = make_env(a.env, eta);
  const auto us = checked_grid(a.u_grid, "--u-grid");
  const BathResponse response(env, particle);

  Sink sink(a.common, out);
  auto& os = *sink;
  for (const auto& pole : response.poles()) {
    os << "# pole nu_sq=" << format_number(pole.nu_star_sq)
       << ",weight=" << format_number(pole.weight) << '\n';
  }
  os << "u,mu,gamma,delta\n";
  for (double u : us) {
    if (!(u > 0.0)) throw UsageError("--u-grid values must be positive");
    os << join({u, evaluate_mu(env, u), response.gamma(u), response.delta(u)}) << '\n';
  }
  sink.close();
  return kOk;
}

// ---- config file ----

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    auto key = trim(body.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.remove_prefix(1);
    if (key.empty()) throw UsageError(path + ":" + std::to_string(lineno) + ": empty key");
    kv[std::string(key)] = std::string(trim(body.substr(eq + 1)));
  }
  return kv;
}

// Pulls --config out of the argument list and splices the file's settings in
// right after the subcommand, so that flags given later take precedence.
std::vector<std::string> expand_config(std::vector<std::string> args,
                                       const std::vector<std::string>& subcommands) {
  std::optional<std::string> path;
  for (std::size_t i = 1; i < args.size();) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file");
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + i);
    } else {
      ++i;
    }
  }
  if (!path) return args;
  const auto kv = read_config(*path);
  auto sub = std::find_if(args.begin() + 1, args.end(), [&](const std::string& s) {
    return std::find(subcommands.begin(), subcommands.end(), s) != subcommands.end();
  });
  if (sub == args.end()) throw UsageError("--config needs a subcommand");
  std::vector<std::string> extra;
  for (const auto& [k, v] : kv) extra.push_back("--" + k + "=" + v);
  args.insert(sub + 1, extra.begin(), extra.end());
  return args;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Particle coupled to a harmonic bath: equilibrium state and interferometer"};
  app.name("qbath");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.add_flag("--config", "flat key=value file; flags override it (may appear anywhere)");

  SweepArgs sweep;
  auto* s = app.add_subcommand("sweep", "equilibrium quantities on a (T, eta) grid");
  add_common_options(s, sweep.common);
  add_particle_options(s, sweep.particle);
  add_env_options(s, sweep.env);
  s->add_option("--t-grid", sweep.t_grid, "temperatures, list or start:stop:step")->capture_default_str();
  s->add_option("--eta", sweep.eta_grid, "friction values (multipliers for rc/table)");
  s->add_flag("--include-pole", sweep.include_pole, "add bound-mode contributions");
  s->add_option("--threads", sweep.threads, "worker threads (0 = all cores)");

  FringeArgs fr;
  auto* f = app.add_subcommand("fringes", "interference pattern P(phi)");
  add_common_options(f, fr.common);
  add_particle_options(f, fr.particle);
  add_env_options(f, fr.env);
  add_junction_options(f, fr.junction);
  f->add_option("--eta", fr.eta, "friction (multiplier for rc/table)");
  f->add_option("-T,--temperature", fr.T, "bath temperature")->capture_default_str();
  f->add_option("--phases", fr.phases, "points on [0, 2 pi)")->capture_default_str();
  f->add_flag("--include-pole", fr.include_pole, "add bound-mode contributions");
  f->add_flag("--high-energy", fr.high_energy, "use the factorized high-energy tau");

  OracleArgs orc;
  auto* o = app.add_subcommand("oracle", "continuum moments against a finite bath");
  add_common_options(o, orc.common);
  add_particle_options(o, orc.particle);
  add_env_options(o, orc.env);
  o->add_option("--eta", orc.eta, "friction (multiplier for rc/table)");
  o->add_option("-T,--temperature", orc.T, "bath temperature")->capture_default_str();
  o->add_option("-N,--n", orc.n, "finite-bath size")->capture_default_str();
  o->add_option("--tolerance", orc.tolerance, "relative tolerance")->capture_default_str();
  o->add_flag("--include-pole", orc.include_pole, "add bound-mode contributions");

  ScatterArgs sc;
  auto* c = app.add_subcommand("scatter", "channel table of the junction scattering solution");
  add_common_options(c, sc.common);
  add_particle_options(c, sc.particle);
  add_junction_options(c, sc.junction);

  BathArgs ba;
  auto* b = app.add_subcommand("bath", "tabulate mu, Gamma and Delta");
  add_common_options(b, ba.common);
  add_particle_options(b, ba.particle);
  add_env_options(b, ba.env);
  b->add_option("--eta", ba.eta, "friction (multiplier for rc/table)");
  b->add_option("--u-grid", ba.u_grid, "frequencies, list or start:stop:step")->capture_default_str();

  try {
    std::vector<std::string> args(argv, argv + argc);
    args = expand_config(std::move(args), {"sweep", "fringes", "oracle", "scatter", "bath"});
    std::vector<const char*> ptrs;
    for (const auto& a : args) ptrs.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(ptrs.size()), ptrs.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kOk : kUsageError;
    }
    if (*s) return cmd_sweep(sweep, out, err);
    if (*f) return cmd_fringes(fr, out);
    if (*o) return cmd_oracle(orc, out);
    if (*c) return cmd_scatter(sc, out);
    if (*b) return cmd_bath(ba, out);
    return kUsageError;
  } catch (const std::exception& e) {
    err << "qbath: " << e.what() << '\n';
    return code_of(e);
  }
}

}  // namespace qbath::cli
