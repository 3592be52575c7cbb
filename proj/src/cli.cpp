// Copyright 2026 The qflip Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qflip/cli.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "qflip/capacity.hpp"
#include "qflip/json_io.hpp"
#include "qflip/nogo.hpp"
#include "qflip/timeflip.hpp"
#include "qflip/verify.hpp"

namespace qflip::cli {

namespace {

using io::json;
using ordered = nlohmann::ordered_json;

std::string resolve_format(const RunConfig& cfg, const std::string& fallback, bool csv_allowed) {
  const std::string f = cfg.format.empty() ? fallback : cfg.format;
  if (f != "json" && !(csv_allowed && f == "csv")) {
    throw ConfigError("--format: \"" + f + "\" is not supported by " + cfg.command);
  }
  return f;
}

KrausChannel build_channel(const RunConfig& cfg) {
  if (cfg.channel_json) {
    if (!cfg.family.empty()) throw ConfigError("--family and --channel-json are mutually exclusive");
    return io::load_channel(*cfg.channel_json);
  }
  if (cfg.family.empty()) throw ConfigError("--family or --channel-json is required");
  if (cfg.d < 2) throw ConfigError("--d: dimension must be at least 2");
  if (cfg.family == "depolarising") return depolarising(cfg.q, cfg.d);
  if (cfg.family == "dephasing_y" || cfg.family == "dephasing") {
    if (cfg.d != 2) throw ConfigError("--d: dephasing_y is a qubit channel");
    return dephasing_y(cfg.p);
  }
  if (cfg.family == "projection") {
    if (cfg.levels.size() != 2) throw ConfigError("--levels: expected two levels m,n");
    return projection_channel(cfg.theta, cfg.levels[0], cfg.levels[1], cfg.d);
  }
  if (cfg.family == "random_bistochastic") {
    if (cfg.unitaries < 1) throw ConfigError("--unitaries: must be positive");
    return random_bistochastic(cfg.d, cfg.unitaries, cfg.seed);
  }
  throw ConfigError("--family: unknown channel family \"" + cfg.family + "\"");
}

DensityMatrix control_state(const std::string& name) {
  if (name == "plus") return DensityMatrix::pure(plus_ket());
  if (name == "minus") return DensityMatrix::pure(minus_ket());
  if (name == "zero") return DensityMatrix::basis(2, 0);
  if (name == "one") return DensityMatrix::basis(2, 1);
  throw ConfigError("--control: expected plus, minus, zero or one");
}

DensityMatrix input_state(const RunConfig& cfg, Eigen::Index d) {
  if (cfg.state == "plus") {
    StateVector v = StateVector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
    return DensityMatrix::pure(v);
  }
  if (cfg.state == "zero") return DensityMatrix::basis(d, 0);
  if (cfg.state == "mixed") return DensityMatrix::maximally_mixed(d);
  if (cfg.state == "random") {
    Rng rng(cfg.seed);
    return DensityMatrix(random_density_operator(d, rng));
  }
  throw ConfigError("--state: expected plus, zero, mixed or random");
}

ordered report_json(const LemmaReport& r) {
  ordered j;
  j["family"] = r.family;
  j["max_derivative_norm"] = r.max_derivative_norm;
  j["fixed_output_distance"] = r.fixed_output_distance;
  j["hypothesis_met"] = r.hypothesis_met;
  j["verdict"] = to_string(r.verdict);
  return j;
}

}  // namespace

int cmd_flip(const RunConfig& cfg, std::ostream& out) {
  resolve_format(cfg, "json", false);
  const KrausChannel flipped = flipped_channel(build_channel(cfg), control_state(cfg.control));
  out << io::channel_to_json(flipped).dump(2) << '\n';
  return ok;
}

int cmd_decompose(const RunConfig& cfg, std::ostream& out) {
  resolve_format(cfg, "json", false);
  const KrausChannel ch = build_channel(cfg);
  const auto parts = sym_antisym_decomposition(ch);
  ordered j;
  j["dim"] = ch.dim_in();
  j["sym"] = ordered::array();
  for (const auto& k : parts.sym) j["sym"].push_back(ordered(io::to_json(k)));
  j["antisym"] = ordered::array();
  for (const auto& k : parts.antisym) j["antisym"].push_back(ordered(io::to_json(k)));
  try {
    const auto lrc = canonical_effective(ch);
    j["labeled"] = true;
    j["branches"] = ordered::array();
    for (const auto& b : lrc.branches()) {
      j["branches"].push_back({{"label", b.label}, {"probability", b.probability}});
    }
  } catch (const ValidationError&) {
    j["labeled"] = false;
  }
  out << j.dump(2) << '\n';
  return ok;
}

int cmd_capacities(const RunConfig& cfg, std::ostream& out) {
  const std::string format = resolve_format(cfg, "csv", true);
  if (cfg.family.empty()) throw ConfigError("--family is required for capacities");
  ChannelFamily family;
  try {
    family = parse_family(cfg.family);
  } catch (const DomainError&) {
    throw ConfigError("--family: capacities support depolarising and dephasing_y");
  }
  if (cfg.d < 2) throw ConfigError("--d: dimension must be at least 2");
  if (cfg.grid_size < 1024) throw ConfigError("--grid-size: must be at least 1024");
  const auto grid = parse_grid(cfg.grid);
  std::vector<CapacityCurve> curves;
  for (const auto& quantity : family_quantities(family)) {
    curves.push_back(curve_sweep(family, quantity, grid, cfg.d, cfg.grid_size));
  }
  if (format == "csv") {
    write_csv(out, curves);
    return ok;
  }
  ordered j;
  j["family"] = to_string(family);
  j["curves"] = ordered::array();
  for (const auto& c : curves) {
    ordered e;
    e["quantity"] = c.quantity;
    e["formula"] = c.formula;
    e["d"] = c.d;
    e["parameter"] = c.parameter_name;
    e["points"] = ordered::array();
    for (const auto& [x, y] : c.points) e["points"].push_back({x, y});
    j["curves"].push_back(std::move(e));
  }
  out << j.dump(2) << '\n';
  return ok;
}

int cmd_herald(const RunConfig& cfg, std::ostream& out) {
  resolve_format(cfg, "json", false);
  const KrausChannel ch = build_channel(cfg);
  const auto outcomes = heralded_transmit(ch, input_state(cfg, ch.dim_in()));
  Rng rng(cfg.seed);
  const auto counts = sample_outcomes(outcomes, cfg.shots, rng);
  const bool qubit_dephasing = cfg.family == "dephasing_y" || cfg.family == "dephasing";
  ordered j;
  j["seed"] = cfg.seed;
  j["shots"] = cfg.shots;
  j["outcomes"] = ordered::array();
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    const auto& o = outcomes[k];
    ordered e;
    e["outcome"] = to_string(o.outcome);
    e["probability"] = o.probability;
    e["noiseless"] = o.noiseless;
    e["count"] = counts[k];
    e["state"] = io::to_json(o.conditional_state.op());
    if (qubit_dephasing) e["decoded"] = io::to_json(dephasing_decode(o).op());
    j["outcomes"].push_back(std::move(e));
  }
  out << j.dump(2) << '\n';
  return ok;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  resolve_format(cfg, "json", false);
  VerifyOptions opts;
  opts.seed = cfg.seed;
  opts.shots = cfg.shots;
  opts.envelope_grid_size = cfg.grid_size;
  opts.tolerance_overrides = cfg.tolerances;
  for (const auto& [key, value] : cfg.tolerances) {
    if (!default_tolerances().count(key)) throw ConfigError("--tol: unknown tolerance key \"" + key + "\"");
    if (!(value >= 0.0)) throw ConfigError("--tol: " + key + " must be nonnegative");
  }
  if (cfg.shots < 1) throw ConfigError("--shots: must be positive");
  if (cfg.grid_size < 1024) throw ConfigError("--grid-size: must be at least 1024");
  const VerifyReport report = run_acceptance(opts);
  out << report_to_json(report);
  return report.passed() ? ok : verification_failure;
}

int cmd_nogo(const RunConfig& cfg, std::ostream& out) {
  resolve_format(cfg, "json", false);
  if (cfg.d < 2) throw ConfigError("--d: dimension must be at least 2");
  const Eigen::Index d = cfg.d;
  Rng rng(cfg.seed);
  ordered j;
  j["seed"] = cfg.seed;
  j["d"] = d;
  if (cfg.channel_json || !cfg.family.empty()) {
    j["sym_chan_flip_identity"] = sym_chan_flip_identity(build_channel(cfg), control_state(cfg.control));
  }
  const DensityMatrix sigma(random_density_operator(d, rng));
  const DensityMatrix rho(random_density_operator(d, rng));
  StateVector uniform = StateVector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
  std::vector<LemmaReport> reports{
      fixed_output_check(constant_channel(sigma, d), rho, d, "constant_decoder"),
      fixed_output_check(identity_channel(d), DensityMatrix::pure(uniform), d, "identity_decoder_on_plus"),
      fixed_output_check(identity_channel(d), DensityMatrix::maximally_mixed(d), d, "identity_decoder_on_mixed"),
  };
  const Supermap discard = [sigma](const KrausChannel& c) { return constant_channel(sigma, c.dim_in()); };
  const Supermap identity = [](const KrausChannel& c) { return c; };
  const Supermap flip_depolarise = [d](const KrausChannel& c) {
    const KrausChannel decode = compose(depolarising(1.0, d), partial_trace_channel(d, 2, Subsystem::A));
    return compose(decode, flipped_channel(c, DensityMatrix::pure(plus_ket())));
  };
  reports.push_back(side_channel_scan(discard, d, 8, cfg.seed, "constant_supermap"));
  reports.push_back(side_channel_scan(identity, d, 8, cfg.seed, "identity_supermap"));
  reports.push_back(side_channel_scan(flip_depolarise, d, 8, cfg.seed, "flip_then_depolarise"));
  bool failed = false;
  j["reports"] = ordered::array();
  for (const auto& r : reports) {
    failed = failed || r.verdict == Verdict::fail;
    j["reports"].push_back(report_json(r));
  }
  out << j.dump(2) << '\n';
  return failed ? verification_failure : ok;
}

namespace {

std::uint64_t parse_seed(const std::string& s) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used, 0);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("--seed: not an unsigned integer: " + s);
  }
}

std::map<std::string, double> parse_tolerances(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--tol: expected KEY=VALUE, got " + item);
    try {
      std::size_t used = 0;
      const std::string value = item.substr(eq + 1);
      out[item.substr(0, eq)] = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw ConfigError("--tol: invalid value in " + item);
    }
  }
  return out;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(field, &used));
      if (used != field.size()) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      throw ConfigError("--grid: expected start:stop:step, got \"" + text + "\"");
    }
  }
  if (parts.size() != 3) throw ConfigError("--grid: expected start:stop:step, got \"" + text + "\"");
  const double a = parts[0], b = parts[1], s = parts[2];
  if (!(s > 0.0) || !std::isfinite(a) || !std::isfinite(b)) throw ConfigError("--grid: step must be positive");
  if (b < a) throw ConfigError("--grid: empty grid (stop < start)");
  const auto n = static_cast<long long>(std::floor((b - a) / s + 1e-9));
  if (n > 10'000'000) throw ConfigError("--grid: too many points");
  std::vector<double> grid;
  for (long long k = 0; k <= n; ++k) {
    // Snap to 12 significant digits so 0.01 steps print as written.
    const double x = std::stod(format_value(a + static_cast<double>(k) * s));
    grid.push_back(std::min(x, b));
  }
  return grid;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string seed_text = "0xF11F";
  std::vector<std::string> tol_items;
  std::string channel_json, out_path;

  CLI::App app{"Quantum time flip channel toolkit"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--family", cfg.family, "depolarising, dephasing_y, projection or random_bistochastic");
  app.add_option("--q", cfg.q, "depolarising parameter");
  app.add_option("--p", cfg.p, "dephasing parameter");
  app.add_option("--theta", cfg.theta, "projection angle");
  app.add_option("--levels", cfg.levels, "projection levels m n")->expected(2)->delimiter(',');
  app.add_option("--d", cfg.d, "dimension");
  app.add_option("--unitaries", cfg.unitaries, "unitaries in a random bistochastic mixture");
  app.add_option("--control", cfg.control, "control state: plus, minus, zero, one");
  app.add_option("--state", cfg.state, "herald input: plus, zero, mixed, random");
  app.add_option("--grid", cfg.grid, "parameter grid start:stop:step");
  app.add_option("--channel-json", channel_json, "channel document");
  app.add_option("--out", out_path, "output file (default stdout)");
  app.add_option("--seed", seed_text, "PRNG seed (default 0xF11F)");
  app.add_option("--grid-size", cfg.grid_size, "envelope sampling grid");
  app.add_option("--format", cfg.format, "csv or json");
  app.add_option("--tol", tol_items, "tolerance override KEY=VALUE (verify)");
  app.add_option("--shots", cfg.shots, "Monte Carlo shots");

  for (const char* name : {"flip", "decompose", "capacities", "herald", "verify", "nogo"}) {
    app.add_subcommand(name)->callback([&cfg, name] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : config_error;
  }

  std::ostringstream buffer;
  int code = ok;
  try {
    cfg.seed = parse_seed(seed_text);
    cfg.tolerances = parse_tolerances(tol_items);
    if (!channel_json.empty()) cfg.channel_json = channel_json;
    if (!out_path.empty()) cfg.out = out_path;
    if (cfg.command == "flip") code = cmd_flip(cfg, buffer);
    else if (cfg.command == "decompose") code = cmd_decompose(cfg, buffer);
    else if (cfg.command == "capacities") code = cmd_capacities(cfg, buffer);
    else if (cfg.command == "herald") code = cmd_herald(cfg, buffer);
    else if (cfg.command == "verify") code = cmd_verify(cfg, buffer);
    else code = cmd_nogo(cfg, buffer);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return io_error;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return config_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return config_error;
  }

  if (cfg.out) {
    std::ofstream file(*cfg.out, std::ios::binary);
    if (!(file << buffer.str()) || !file.flush()) {
      err << "error: cannot write " << *cfg.out << '\n';
      return io_error;
    }
  } else {
    out << buffer.str();
  }
  if (code == verification_failure) err << "error: verification failed\n";
  return code;
}

}  // namespace qflip::cli
