// omcsim — linear-response spectra, cooling energies and force-detection
// limits of a detuned-pump optomechanical cavity
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "jobconfig.hpp"
#include "jobs.hpp"
#include "omcsim/errors.hpp"
#include "omcsim/version.hpp"

namespace {

struct ModeSpec {
  omcsim::cli::Mode mode;
  const char* name;
  const char* help;
};

constexpr ModeSpec kModes[] = {
    {omcsim::cli::Mode::spectrum, "spectrum",
     "homodyne quadrature spectrum over a sideband grid"},
    {omcsim::cli::Mode::energy, "energy",
     "steady-state phonon number and mechanical energy"},
    {omcsim::cli::Mode::force_min, "force-min",
     "force-referred noise, optimal pump and minimal detectable force"},
    {omcsim::cli::Mode::cancel_check, "cancel-check",
     "fluctuation back-action cancellation fit and conservation audits"},
    {omcsim::cli::Mode::compare, "compare",
     "closed-form model against the dense model across gamma/omega_m"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"detuned-pump cavity optomechanics simulator"};
  app.set_version_flag("--version", omcsim::kVersion);
  app.require_subcommand(1);

  struct Options {
    std::string config;
    std::string out_override;
    bool verbose = false;
  };
  Options opts;
  const ModeSpec* selected = nullptr;
  for (const ModeSpec& spec : kModes) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    sub->add_option("--config", opts.config, "job configuration JSON")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out_override, "override the config's output path");
    sub->add_flag("--verbose", opts.verbose, "progress messages on stderr");
    sub->callback([&selected, &spec] { selected = &spec; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    omcsim::cli::JobConfig cfg =
        omcsim::cli::load_job_config(opts.config, selected->mode);
    if (!opts.out_override.empty()) cfg.output_path = opts.out_override;
    omcsim::cli::run_job(cfg, opts.verbose);
    return 0;
  } catch (const omcsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
  } catch (const omcsim::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
  } catch (const omcsim::ConsistencyError& e) {
    std::cerr << "consistency error: " << e.what() << "\n";
  } catch (const omcsim::InstabilityError& e) {
    std::cerr << "instability: " << e.what() << " (at " << e.where() << " rad/s)\n";
    return 2;
  } catch (const omcsim::AccuracyError& e) {
    std::cerr << "accuracy error: " << e.what() << "\n";
    return 2;
  } catch (const omcsim::OptimizationError& e) {
    std::cerr << "optimization error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
