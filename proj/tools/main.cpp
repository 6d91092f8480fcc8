// casimir-workbench: Casimir and patch-potential calculations from an INI config.
//
// exit codes: 0 success, 2 configuration or domain error, 3 numerical error,
// 4 fit did not converge.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "battery.hpp"
#include "casimir/config.hpp"
#include "casimir/errors.hpp"
#include "casimir/fit.hpp"
#include "casimir/workbench.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfig = 2;
constexpr int kNumerical = 3;
constexpr int kFit = 4;

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw casimir::ConfigError("cannot write " + path);
  file << text;
}

int run(const std::string& command, const Options& opt) {
  casimir::RunConfig config = casimir::load_config(opt.config);
  for (const std::string& o : opt.overrides) casimir::apply_override(config, o);
  if (opt.seed) config.patch.seed = *opt.seed;
  if (!opt.out.empty()) config.output.path = opt.out;
  config.validate();

  const casimir::RunOutput output = casimir::run_command(command, config);
  std::ostringstream text;
  casimir::write_output(text, output, config);
  write_text(config.output.path, text.str());
  if (output.fit && !config.output.path.empty()) {
    write_text(config.output.path + ".report.txt", casimir::format_fit_report(*output.fit));
  }
  return kOk;
}

int selftest(const Options& opt) {
  const std::uint64_t seed = opt.seed.value_or(1);
  const auto results = acceptance::run_battery(seed);
  write_text(opt.out, acceptance::render(results));
  for (const auto& c : results) {
    if (!c.pass) return kNumerical;
  }
  return kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir free energies, pressures, PFA forces and patch-potential fits"};
  app.require_subcommand(1);
  Options opt;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"pressure", "pressure and free energy per area on the distance grid"},
      {"energy", "free energy per area against the ideal-mirror law"},
      {"compare", "base material against the alternative material and perfect mirrors"},
      {"pfa", "sphere-plane force and force gradient (proximity force approximation)"},
      {"patch-spectrum", "patch-voltage spectrum S(k)"},
      {"patch-pressure", "electrostatic patch pressure on the distance grid"},
      {"fit", "fit the quasi-local patch model to a residual curve"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opt.config, "INI configuration or a previous output file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "output path (default: [output] path, else stdout)");
    sub->add_option("--seed", opt.seed, "patch RNG seed, replaces [patch] seed");
    sub->add_option("--override", opt.overrides, "section.key=value, repeatable");
  }
  CLI::App* self = app.add_subcommand("selftest", "run the acceptance battery");
  self->add_option("--out", opt.out, "report path (default: stdout)");
  self->add_option("--seed", opt.seed, "battery seed (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return command == "selftest" ? selftest(opt) : run(command, opt);
  } catch (const casimir::FitError& e) {
    std::cerr << "fit error: " << e.what() << '\n' << e.trace();
    return kFit;
  } catch (const casimir::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const casimir::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::invalid_argument& e) {
    // domain, model, validity and alignment errors
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::out_of_range& e) {
    std::cerr << "range error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
}
