// qsw: command line front-end for quantum stochastic walk simulation.
//
// Subcommands:
//   qsw run <config> [--omega X] [--t X | --t1 X --tq X --steps N]
//                    [--workers N] [--out PATH]
//   qsw inspect <container>
//   qsw plot-data <container> --quantity NAME [--out PATH]
//
// Exit codes: 0 ok, 2 config error, 3 I/O error, 4 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include "qsw/config.hpp"
#include "qsw/container.hpp"
#include "qsw/expm.hpp"
#include "qsw/run.hpp"
#include "qsw/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumerical = 4;

struct RunFlags {
  std::string config_path;
  std::optional<double> omega;
  std::optional<double> t;
  std::optional<double> t1;
  std::optional<double> tq;
  std::optional<std::size_t> steps;
  std::optional<std::size_t> workers;
  std::string out_path;
};

int do_run(const RunFlags& flags) {
  qsw::RunConfig config = qsw::RunConfig::from_json_file(flags.config_path);

  // Flag overrides win over config file values.
  if (flags.omega) config.omega = *flags.omega;
  if (flags.workers) config.workers = *flags.workers;
  if (flags.t) {
    config.time = {};
    config.time.is_series = false;
    config.time.t = *flags.t;
  } else if (flags.t1 || flags.tq || flags.steps) {
    if (!(flags.t1 && flags.tq && flags.steps)) {
      throw qsw::ConfigError("series overrides need all of --t1, --tq and --steps");
    }
    config.time.is_series = true;
    config.time.t1 = *flags.t1;
    config.time.tq = *flags.tq;
    config.time.steps = *flags.steps;
  }

  qsw::ResultContainer result = qsw::run(config);

  std::filesystem::path out = flags.out_path;
  if (out.empty()) {
    out = std::filesystem::path(flags.config_path).stem();
    out += ".qswc";
  }
  qsw::write_container(result, out);
  std::cout << "wrote " << out.string() << "\n";
  return kExitOk;
}

int do_inspect(const std::string& path) {
  const qsw::ResultContainer c = qsw::read_container(path);
  std::cout << "container: " << path << "\n";
  std::cout << "--- metadata ---\n" << c.metadata;
  std::cout << "--- arrays ---\n";
  for (const auto& [name, block] : c.arrays) {
    std::cout << name << " : ";
    for (std::size_t i = 0; i < block.shape.size(); ++i) {
      std::cout << block.shape[i] << (i + 1 < block.shape.size() ? " x " : "");
    }
    std::cout << " (" << block.data.size() << " values)\n";
  }
  return kExitOk;
}

int do_plot_data(const std::string& path, const std::string& quantity,
                 const std::string& out_path) {
  const qsw::ResultContainer c = qsw::read_container(path);
  if (out_path.empty()) {
    qsw::emit_plot_data(c, quantity, std::cout);
  } else {
    qsw::emit_plot_data(c, quantity, std::filesystem::path(out_path));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum stochastic walk simulator"};
  app.set_version_flag("--version", qsw::kVersionString);
  app.require_subcommand(1);

  RunFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "execute a walk described by a config file");
  run->add_option("config", run_flags.config_path, "JSON run configuration")->required();
  double omega_v{}, t_v{}, t1_v{}, tq_v{};
  std::size_t steps_v{}, workers_v{};
  auto* omega_opt = run->add_option("--omega", omega_v, "override the decoherence parameter");
  auto* t_opt = run->add_option("--t", t_v, "override with a single time point");
  auto* t1_opt = run->add_option("--t1", t1_v, "series start time");
  auto* tq_opt = run->add_option("--tq", tq_v, "series end time");
  auto* steps_opt = run->add_option("--steps", steps_v, "series interval count");
  auto* workers_opt = run->add_option("--workers", workers_v, "worker count");
  run->add_option("--out", run_flags.out_path, "output container path");
  t_opt->excludes(t1_opt)->excludes(tq_opt)->excludes(steps_opt);

  std::string inspect_path;
  CLI::App* inspect = app.add_subcommand("inspect", "describe a result container");
  inspect->add_option("container", inspect_path, "container file")->required();

  std::string plot_path, plot_quantity, plot_out;
  CLI::App* plot = app.add_subcommand("plot-data", "dump a quantity as delimited text");
  plot->add_option("container", plot_path, "container file")->required();
  plot->add_option("--quantity", plot_quantity, "array to dump (e.g. populations)")->required();
  plot->add_option("--out", plot_out, "output text path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run->parsed()) {
      if (omega_opt->count()) run_flags.omega = omega_v;
      if (t_opt->count()) run_flags.t = t_v;
      if (t1_opt->count()) run_flags.t1 = t1_v;
      if (tq_opt->count()) run_flags.tq = tq_v;
      if (steps_opt->count()) run_flags.steps = steps_v;
      if (workers_opt->count()) run_flags.workers = workers_v;
      return do_run(run_flags);
    }
    if (inspect->parsed()) return do_inspect(inspect_path);
    if (plot->parsed()) return do_plot_data(plot_path, plot_quantity, plot_out);
  } catch (const qsw::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::logic_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const qsw::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const qsw::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const qsw::FileFormatError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitConfig;
}
