// squidacc: sweeps, simulations and validity reports for SQUID accelerometers.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "squidacc/cli/commands.hpp"

namespace {

using namespace squidacc;
using namespace squidacc::cli;

struct Common {
  std::string config;
  std::string out;
  std::string strictness;
  bool hertz = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", c.out, "output file (default: output.path, else stdout)");
  sub->add_option("--strictness", c.strictness, "dominance thresholds: PASS or PASS:FAIL (default 0.1:1)");
  sub->add_flag("--hertz", c.hertz, "print frequencies in Hz instead of rad/s");
}

// Output goes to the --out path, the configured path, or stdout.
class Sink {
 public:
  explicit Sink(const std::optional<std::string>& path) {
    if (path && !path->empty()) {
      file_ = std::make_unique<std::ofstream>(*path, std::ios::binary);
      if (!*file_) throw error(errc::configuration, "cannot write " + *path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void close() {
    if (file_) {
      file_->close();
      if (!*file_) throw error(errc::configuration, "write failed");
    }
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SQUID accelerometer toolkit"};
  app.require_subcommand(1);

  Common common;
  auto* dc = app.add_subcommand("dc-sweep", "dc operating points over an acceleration grid (CSV)");
  auto* rf = app.add_subcommand("rf-sweep", "rf voltage spectrum at fixed acceleration (CSV)");
  auto* sim = app.add_subcommand("rf-sim", "time-domain rf simulation (CSV + JSON summary)");
  auto* inv = app.add_subcommand("invert", "acceleration spectrum from a voltage record (CSV)");
  auto* dev = app.add_subcommand("deviation", "condensate trajectory deviation (JSON)");
  auto* val = app.add_subcommand("validate", "validity verdicts at one operating point (JSON)");
  for (auto* sub : {dc, rf, sim, inv, dev, val}) add_common(sub, common);

  std::string summary_path;
  sim->add_option("--summary", summary_path, "summary JSON file (default: output.summary, else stderr)");
  std::string voltage_path;
  inv->add_option("--voltage", voltage_path, "CSV with t and V columns")->required()->check(CLI::ExistingFile);
  double a = 0.0;
  double omega = 0.0;
  val->add_option("--a", a, "acceleration [m/s^2]")->required();
  val->add_option("--omega", omega, "angular frequency [rad/s]");

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig cfg = load_config(common.config);
    Options opt;
    opt.hertz = common.hertz;
    if (!common.strictness.empty()) opt.strictness = parse_strictness(common.strictness);
    Sink sink(common.out.empty() ? cfg.output.path : std::optional<std::string>(common.out));

    if (*dc) {
      cmd_dc_sweep(cfg, opt, sink.stream(), std::cerr);
    } else if (*rf) {
      cmd_rf_sweep(cfg, opt, sink.stream(), std::cerr);
    } else if (*sim) {
      Sink summary(summary_path.empty() ? cfg.output.summary : std::optional<std::string>(summary_path));
      const bool to_file = !summary_path.empty() || cfg.output.summary;
      cmd_rf_sim(cfg, opt, sink.stream(), to_file ? summary.stream() : std::cerr);
      summary.close();
    } else if (*inv) {
      std::ifstream voltage(voltage_path, std::ios::binary);
      cmd_invert(cfg, opt, voltage, sink.stream(), std::cerr);
    } else if (*dev) {
      cmd_deviation(cfg, opt, sink.stream());
    } else if (*val) {
      cmd_validate(cfg, opt, a, omega, sink.stream());
    }
    sink.close();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
