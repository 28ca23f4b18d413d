#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "sovxxz/errors.hpp"
#include "sovxxz/harness.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("sovxxz");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* lvl = std::getenv("SOVXXZ_LOG_LEVEL")) {
    const auto parsed = spdlog::level::from_str(lvl);
    if (parsed == spdlog::level::off && std::string(lvl) != "off") {
      spdlog::warn("ignoring unknown SOVXXZ_LOG_LEVEL '{}'", lvl);
    } else {
      spdlog::set_level(parsed);
    }
  }
}

// Accepts "1/2", "0.5" or "1" and returns 2s.
int parse_spin(const std::string& s) {
  double v = 0.0;
  try {
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
      v = std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
    } else {
      v = std::stod(s);
    }
  } catch (const std::exception&) {
    throw sovxxz::ConfigError("cannot parse spin '" + s + "'");
  }
  const double two_s = 2.0 * v;
  if (two_s < 0.5 || std::abs(two_s - std::round(two_s)) > 1e-9) {
    throw sovxxz::ConfigError("spin '" + s + "' is not a positive half-integer");
  }
  return static_cast<int>(std::round(two_s));
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw sovxxz::ConfigError("cannot write " + path);
  out << text;
}

int cmd_run(const std::string& path, std::string report_path, std::string csv_path) {
  const sovxxz::RunConfig config = sovxxz::load_config(path);
  if (report_path.empty()) report_path = config.report_path;
  if (csv_path.empty()) csv_path = config.roots_csv_path;

  spdlog::info("running pipeline '{}' on {} site(s)", sovxxz::to_string(config.pipeline),
               config.model.two_s.size());
  const sovxxz::RunReport rep = sovxxz::run(config);
  for (std::size_t k = 0; k < rep.eigen.size(); ++k) {
    const auto& r = rep.eigen[k];
    spdlog::debug("eigenvalue {}: t(xi_1) = {} {:+}i, discrete {:.2e}, inhom grid {:.2e}, hom grid {:.2e}",
                  k + 1, r.t_at_xi[0].real(), r.t_at_xi[0].imag(), r.discrete_residual,
                  r.inhom_grid, r.hom_grid);
  }
  for (const auto& f : rep.summary.failures) spdlog::error("{}", f);

  if (!report_path.empty()) write_file(report_path, sovxxz::emit_report(rep));
  if (!csv_path.empty()) write_file(csv_path, sovxxz::roots_csv(rep));

  const auto& s = rep.summary;
  std::cout << (s.pass ? "PASS" : "FAIL") << ": " << s.eigen_count << "/" << s.hilbert_dim
            << " eigenvalues, " << s.failures.size() << " failure(s)\n";
  return s.pass ? kPass : kFail;
}

int cmd_generate(std::uint64_t seed, int sites, const std::vector<std::string>& spins,
                 const std::vector<double>& eta, double delta_min, const std::string& out) {
  std::vector<int> two_s;
  for (const auto& s : spins) two_s.push_back(parse_spin(s));
  if (two_s.size() == 1 && sites > 1) two_s.assign(static_cast<std::size_t>(sites), two_s.front());
  if (static_cast<int>(two_s.size()) != sites) {
    throw sovxxz::ConfigError("--spins needs one value or one per site");
  }
  if (eta.size() != 2) throw sovxxz::ConfigError("--eta takes two numbers: re im");
  const sovxxz::cplx e(eta[0], eta[1]);
  const sovxxz::ChainModel model = sovxxz::generate_model(seed, two_s, delta_min, e);

  sovxxz::RunConfig config;
  config.model.two_s = two_s;
  config.model.xi = model.xi();
  config.model.xi_seed = seed;
  config.model.delta_min = delta_min;
  config.model.eta = e;
  config.seed = seed;
  const std::string text = sovxxz::emit_config(config);
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_file(out, text);
    spdlog::info("wrote {}", out);
  }
  return kPass;
}

int cmd_check(const std::string& path) {
  sovxxz::check_config(sovxxz::load_config(path));
  std::cout << "OK\n";
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();

  CLI::App app{"Spectrum of twisted antiperiodic XXZ chains by separation of variables"};
  app.require_subcommand(1);

  std::string run_config;
  std::string run_report;
  std::string run_csv;
  auto* run = app.add_subcommand("run", "Run the verification pipelines on a config");
  run->add_option("config", run_config, "Config file (JSON)")->required();
  run->add_option("--report", run_report, "Write the JSON report here");
  run->add_option("--roots-csv", run_csv, "Write Bethe roots as CSV here");

  std::uint64_t seed = 1;
  int sites = 1;
  std::vector<std::string> spins{"1/2"};
  std::vector<double> eta{0.31, 0.07};
  double delta_min = 0.05;
  std::string out;
  auto* gen = app.add_subcommand("generate", "Draw a random admissible model and write a config");
  gen->add_option("--seed", seed, "Random seed")->required();
  gen->add_option("--sites", sites, "Number of sites")->required()->check(CLI::PositiveNumber);
  gen->add_option("--spins", spins, "Spin per site (e.g. 1/2 1), or one value for all");
  gen->add_option("--eta", eta, "Anisotropy as: re im")->expected(2);
  gen->add_option("--delta-min", delta_min, "Minimal shift-lattice separation");
  gen->add_option("--out", out, "Output config path ('-' for stdout)");

  std::string check_path;
  auto* chk = app.add_subcommand("check", "Validate a config without computing");
  chk->add_option("config", check_path, "Config file (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (run->parsed()) return cmd_run(run_config, run_report, run_csv);
    if (gen->parsed()) return cmd_generate(seed, sites, spins, eta, delta_min, out);
    if (chk->parsed()) return cmd_check(check_path);
  } catch (const sovxxz::ConfigError& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  } catch (const sovxxz::GenerationExhausted& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  } catch (const sovxxz::Error& e) {
    spdlog::error("{}: {}", e.kind(), e.what());
    return kFail;
  }
  return kUsage;
}
