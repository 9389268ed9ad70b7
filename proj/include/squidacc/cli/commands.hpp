#pragma once

// Subcommands of the squidacc tool. Each one reads a parsed RunConfig and
// writes to caller-supplied streams, so the same code runs in-process in the
// tests and behind the executable.

#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "squidacc/cli/config.hpp"

namespace squidacc::cli {

struct Options {
  Strictness strictness{};
  bool hertz = false;  // report frequencies in Hz (inputs stay rad/s)
  std::optional<int> precision;
};

/// "0.1" sets the pass threshold; "0.05:0.5" sets pass and fail thresholds.
inline Strictness parse_strictness(const std::string& text) {
  Strictness s;
  const auto colon = text.find(':');
  try {
    std::size_t used = 0;
    s.pass_below = std::stod(text.substr(0, colon), &used);
    if (used != colon && colon != std::string::npos) throw std::invalid_argument(text);
    if (colon != std::string::npos) s.fail_at = std::stod(text.substr(colon + 1));
  } catch (const std::logic_error&) {
    throw error(errc::configuration, "strictness must be 'pass' or 'pass:fail', got " + text);
  }
  if (!(s.pass_below > 0) || !(s.fail_at >= s.pass_below)) {
    throw error(errc::configuration, "strictness needs 0 < pass <= fail");
  }
  return s;
}

namespace detail {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline int precision(const RunConfig& cfg, const Options& opt) {
  return opt.precision.value_or(cfg.output.precision);
}

// Doubles in JSON reports are cut to the requested significant digits.
inline json rounded(double x, int digits) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(format_number(x, digits));
}

inline json verdict_json(const ValidityVerdict& v, int digits) {
  return {{"label", v.label}, {"ratio", rounded(v.ratio, digits)}, {"status", to_string(v.status)}};
}

inline void write_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

inline std::vector<double> make_grid(const GridSpec& g, double stop) {
  if (g.points) return *g.points;
  std::vector<double> out;
  for (std::size_t i = 0; i < g.count; ++i) {
    if (g.count == 1) {
      out.push_back(g.start);
      break;
    }
    const double u = static_cast<double>(i) / static_cast<double>(g.count - 1);
    out.push_back(g.log ? g.start * std::pow(stop / g.start, u) : g.start + u * (stop - g.start));
  }
  if (g.count > 1) out.back() = stop;
  return out;
}

inline const RfCircuitConfig& need_rf(const RunConfig& cfg, const char* command) {
  if (!cfg.rf) {
    throw error(errc::configuration, std::string(command) + " needs an rf device");
  }
  return *cfg.rf;
}

inline const DcSquidConfig& need_dc(const RunConfig& cfg, const char* command) {
  if (!cfg.dc) {
    throw error(errc::configuration, std::string(command) + " needs a dc device");
  }
  return *cfg.dc;
}

// Ring geometry for bandwidth flags, when the config has one.
inline std::optional<WireGeometry> ring_geometry(const RunConfig& cfg) {
  if (cfg.geometry && cfg.geometry->is_ring()) return cfg.geometry;
  return std::nullopt;
}

// Renames an omega[rad/s] column to nu[Hz] for display.
inline void emit_table(std::ostream& out, const SweepTable& table, int digits, bool hertz) {
  if (!hertz) {
    write_csv(out, table, digits);
    return;
  }
  std::vector<std::pair<std::string, std::string>> names;
  for (const auto& c : table.columns()) {
    if (c.name == "omega") {
      names.emplace_back("nu", "Hz");
    } else {
      names.emplace_back(c.name, c.unit);
    }
  }
  SweepTable shown(names);
  for (std::size_t r = 0; r < table.rows(); ++r) {
    std::vector<Cell> row;
    for (const auto& c : table.columns()) {
      if (c.name == "omega") {
        row.emplace_back(std::get<double>(c.cells[r]) / kTwoPi);
      } else {
        row.push_back(c.cells[r]);
      }
    }
    shown.add_row(std::move(row));
  }
  write_csv(out, shown, digits);
}

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

inline double parse_cell(const std::string& cell, std::size_t line) {
  const std::string s = trim(cell);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw error(errc::configuration,
                "line " + std::to_string(line) + ": '" + s + "' is not a number");
  }
  return x;
}

// Lists 1-based row numbers as collapsed ranges: "rows 3, 7-12".
inline std::string row_ranges(const std::vector<std::size_t>& rows) {
  std::string out = rows.size() == 1 ? "row " : "rows ";
  for (std::size_t i = 0; i < rows.size();) {
    std::size_t j = i;
    while (j + 1 < rows.size() && rows[j + 1] == rows[j] + 1) ++j;
    if (i > 0) out += ", ";
    out += std::to_string(rows[i] + 1);
    if (j > i) out += "-" + std::to_string(rows[j] + 1);
    i = j + 1;
  }
  return out;
}

}  // namespace detail

/// Reads a CSV with a header row and returns the columns named t and V
/// (a trailing [unit] on the header is ignored).
inline UniformSamples read_voltage_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw error(errc::configuration, "voltage CSV is empty");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      cell = detail::trim(cell);
      header.push_back(cell.substr(0, cell.find('[')));
    }
  }
  auto column = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw error(errc::configuration, "voltage CSV has no '" + name + "' column");
  };
  const std::size_t it = column("t");
  const std::size_t iv = column("V");
  std::vector<double> t;
  std::vector<double> v;
  for (std::size_t n = 2; std::getline(in, line); ++n) {
    if (detail::trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() < header.size()) {
      throw error(errc::configuration, "line " + std::to_string(n) + ": too few columns");
    }
    t.push_back(detail::parse_cell(cells[it], n));
    v.push_back(detail::parse_cell(cells[iv], n));
  }
  return to_uniform(t, v);
}

/// Operating-point table over the configured acceleration grid. Rows past the
/// principal branch are written with empty outputs and listed on `diag`.
inline void cmd_dc_sweep(const RunConfig& cfg, const Options& opt, std::ostream& out,
                         std::ostream& diag) {
  const auto& dc = detail::need_dc(cfg, "dc-sweep");
  if (!cfg.sweep) throw error(errc::configuration, "dc-sweep needs a sweep section");
  const double a_max = max_acceleration(dc);
  const auto grid = detail::make_grid(*cfg.sweep, cfg.sweep->stop.value_or(a_max));
  const auto table = dc_sweep(dc, grid, opt.strictness);
  const int digits = detail::precision(cfg, opt);
  std::vector<std::size_t> failed;
  for (std::size_t r = 0; r < table.rows(); ++r) {
    if (!table.number("I", r)) failed.push_back(r);
  }
  if (!failed.empty()) {
    diag << detail::row_ranges(failed) << ": a exceeds the principal-branch limit "
         << format_number(a_max, digits) << " m/s^2\n";
  }
  detail::emit_table(out, table, digits, false);
}

/// Voltage spectrum of the analytic chain at fixed |a_w|.
inline void cmd_rf_sweep(const RunConfig& cfg, const Options& opt, std::ostream& out,
                         std::ostream& diag) {
  const auto& rf = detail::need_rf(cfg, "rf-sweep");
  if (!cfg.sweep) throw error(errc::configuration, "rf-sweep needs a sweep section");
  if (!cfg.sweep->a_omega) throw error(errc::configuration, "rf-sweep needs sweep.a_omega");
  const auto grid = detail::make_grid(*cfg.sweep, cfg.sweep->stop.value_or(0.0));
  const auto table =
      frequency_sweep(rf, *cfg.sweep->a_omega, grid, detail::ring_geometry(cfg), opt.strictness);
  const int digits = detail::precision(cfg, opt);
  std::vector<std::size_t> failed;
  double worst = 0.0;
  for (std::size_t r = 0; r < table.rows(); ++r) {
    if (table.text("amplitude_ok", r) == "fail") {
      failed.push_back(r);
      worst = std::max(worst, *table.number("absI", r));
    }
  }
  if (!failed.empty()) {
    diag << detail::row_ranges(failed) << ": |I_w| exceeds Ic = " << format_number(rf.Ic, digits)
         << " A (largest " << format_number(worst, digits) << " A)\n";
  }
  detail::emit_table(out, table, digits, opt.hertz);
}

/// Time-domain run: channel CSV on `out`, JSON summary with the extracted
/// fundamental on `summary`.
inline void cmd_rf_sim(const RunConfig& cfg, const Options& opt, std::ostream& out,
                       std::ostream& summary) {
  const auto& rf = detail::need_rf(cfg, "rf-sim");
  if (!cfg.simulation) throw error(errc::configuration, "rf-sim needs a simulation section");
  const auto& sim = *cfg.simulation;
  const double period = detail::kTwoPi / sim.omega;
  const double settle = transient_periods(rf, sim.omega, sim.settle_periods);
  const double dt = sim.dt.value_or(period / std::ceil(period / max_step(rf, sim.omega)));
  const double t_end = sim.t_end.value_or((settle + sim.analysis_periods) * period);
  const Drive drive = sim.a_omega == 0.0 ? Drive::none() : Drive::tone(sim.a_omega, sim.omega);
  const auto ts = simulate(rf, drive, t_end, dt);

  const int digits = detail::precision(cfg, opt);
  SweepTable table({{"t", "s"}, {"delta_phi", "rad"}, {"V", "V"}, {"I_minus", "A"}, {"I_plus", "A"}});
  for (std::size_t i = 0; i < ts.size(); ++i) {
    table.add_row({ts.t[i], ts.delta_phi[i], ts.V[i], ts.I_minus[i], ts.I_plus[i]});
  }
  write_csv(out, table, digits);

  json report;
  report["omega"] = detail::rounded(sim.omega, digits);
  if (opt.hertz) report["nu_hz"] = detail::rounded(sim.omega / detail::kTwoPi, digits);
  report["dt"] = detail::rounded(dt, digits);
  report["t_end"] = detail::rounded(ts.t.back(), digits);
  report["samples"] = ts.size();
  report["settle_periods"] = detail::rounded(settle, digits);
  report["analysis_periods"] = sim.analysis_periods;
  report["flux_relation_residual"] = detail::rounded(flux_relation_residual(ts, rf), digits);
  auto phasor = [&](cplx z) {
    return json{{"re", detail::rounded(z.real(), digits)},
                {"im", detail::rounded(z.imag(), digits)},
                {"abs", detail::rounded(std::abs(z), digits)}};
  };
  const cplx linear = linearized_ode_response(sim.omega, rf).value * sim.a_omega;
  report["V_linearized"] = phasor(linear);
  if (t_end >= (settle + sim.analysis_periods) * period * (1.0 - 1e-12)) {
    const cplx V = extract_fundamental(ts.channel(ts.V), sim.omega, settle, sim.analysis_periods);
    report["V_fundamental"] = phasor(V);
    report["relative_error"] =
        std::abs(linear) > 0 ? detail::rounded(std::abs(V - linear) / std::abs(linear), digits)
                             : detail::rounded(std::abs(V), digits);
  } else {
    report["V_fundamental"] = nullptr;  // record too short for the settle window
  }
  double peak = 0.0;
  for (double x : ts.delta_phi) peak = std::max(peak, std::abs(x));
  report["max_abs_delta_phi"] = detail::rounded(peak, digits);
  detail::write_json(summary, report);
}

/// Acceleration spectrum from a measured voltage record.
inline void cmd_invert(const RunConfig& cfg, const Options& opt, std::istream& voltage,
                       std::ostream& out, std::ostream& diag) {
  const auto& rf = detail::need_rf(cfg, "invert");
  if (!cfg.invert) throw error(errc::configuration, "invert needs an invert section");
  const auto samples = read_voltage_csv(voltage);
  const WindowPolicy policy{cfg.invert->periods, cfg.invert->skip_time};
  const auto bins = invert_spectrum(samples, rf, cfg.invert->omegas, policy,
                                    detail::ring_geometry(cfg), opt.strictness);
  SweepTable table({{"omega", "rad/s"},
                    {"Re_a", "m/s^2"},
                    {"Im_a", "m/s^2"},
                    {"abs_a", "m/s^2"},
                    {"bandwidth", ""}});
  for (std::size_t i = 0; i < bins.size(); ++i) {
    const auto& b = bins[i];
    Cell flag;
    if (b.bandwidth) {
      flag = std::string(to_string(*b.bandwidth));
      if (*b.bandwidth != Status::pass) {
        diag << "bin " << i + 1 << ": omega = " << format_number(b.omega)
             << " rad/s is outside the bandwidth bound (" << to_string(*b.bandwidth) << ")\n";
      }
    }
    table.add_row({b.omega, b.a.re(), b.a.im(), b.a.abs(), flag});
  }
  detail::emit_table(out, table, detail::precision(cfg, opt), opt.hertz);
}

/// Trajectory-deviation report.
inline void cmd_deviation(const RunConfig& cfg, const Options& opt, std::ostream& out) {
  if (!cfg.deviation) throw error(errc::configuration, "deviation needs a deviation section");
  if (!cfg.material || !cfg.geometry) {
    throw error(errc::configuration, "deviation needs device.material and device.geometry");
  }
  const auto& spec = *cfg.deviation;
  const auto& material = *cfg.material;
  const double d = cfg.geometry->d;
  const double v = spec.v ? *spec.v : drift_velocity(*spec.I, material, *cfg.geometry);
  const int digits = detail::precision(cfg, opt);
  const auto params = condensate_params(material);
  const auto result = deviation_report(material, spec.a, d, v, opt.strictness);

  json report;
  report["a"] = detail::rounded(spec.a, digits);
  report["d"] = detail::rounded(d, digits);
  report["v"] = detail::rounded(v, digits);
  report["T"] = detail::rounded(material.T, digits);
  report["mu"] = detail::rounded(params.mu, digits);
  report["gc"] = detail::rounded(params.gc, digits);
  report["N0"] = detail::rounded(params.N0, digits);
  report["dr_z_closed"] = detail::rounded(result.dr_z, digits);
  report["dr_z_numeric"] = detail::rounded(deviation_numeric(spec.a, d, params.mu), digits);
  report["wavelength"] = detail::rounded(kConst.hbar / (kConst.cooper_mass * v), digits);
  report["bound"] = detail::verdict_json(result.bound, digits);
  if (!spec.T_grid.empty()) {
    const auto table = deviation_vs_temperature(material, spec.a, d, spec.T_grid);
    json rows = json::array();
    for (std::size_t r = 0; r < table.rows(); ++r) {
      rows.push_back({{"T", detail::rounded(*table.number("T", r), digits)},
                      {"mu", detail::rounded(*table.number("mu", r), digits)},
                      {"dr_z", detail::rounded(*table.number("dr_z", r), digits)}});
    }
    report["temperature_sweep"] = rows;
  }
  detail::write_json(out, report);
}

/// Every validity verdict that applies to the configured device at (a, w).
inline void cmd_validate(const RunConfig& cfg, const Options& opt, double a, double omega,
                         std::ostream& out) {
  const int digits = detail::precision(cfg, opt);
  std::vector<ValidityVerdict> verdicts;
  if (cfg.geometry) {
    const auto& g = *cfg.geometry;
    const double size = g.is_ring() ? g.ring().Rs : std::min(g.rectangle().b, g.rectangle().c);
    verdicts.push_back(dominance(g.d, size, "thin_wire", opt.strictness));
  }
  if (cfg.dc) {
    for (auto& v : validity_report(*cfg.dc, a, opt.strictness)) verdicts.push_back(v);
  }
  if (cfg.rf) {
    const auto& rf = *cfg.rf;
    if (const auto ring = detail::ring_geometry(cfg)) {
      for (auto& v : bandwidth_limit(rf, *ring, omega, opt.strictness)) verdicts.push_back(v);
    }
    const double I = current_from_acceleration({a, PhasorUnit::acceleration}, omega, rf).abs();
    verdicts.push_back({I / rf.Ic, I <= rf.Ic ? Status::pass : Status::fail, "amplitude"});
  }
  Status overall = Status::pass;
  json list = json::array();
  for (const auto& v : verdicts) {
    overall = worst(overall, v.status);
    list.push_back(detail::verdict_json(v, digits));
  }
  json report;
  report["device"] = cfg.kind;
  report["a"] = detail::rounded(a, digits);
  report["omega"] = detail::rounded(omega, digits);
  if (opt.hertz) report["nu_hz"] = detail::rounded(omega / detail::kTwoPi, digits);
  report["verdicts"] = list;
  report["overall"] = to_string(overall);
  detail::write_json(out, report);
}

}  // namespace squidacc::cli
