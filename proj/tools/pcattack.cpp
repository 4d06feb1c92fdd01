#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "pca/harness.hpp"

namespace {

std::string slug(std::string s) {
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-') c = '_';
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pilot-contamination attack experiments for massive-MIMO downlinks"};
  app.require_subcommand(1);

  std::string scenario, config_path, out, scale, unit;
  std::optional<std::uint64_t> seed;
  std::optional<int> realizations;

  auto* run = app.add_subcommand("run", "run a scenario and write CSV results");
  run->add_option("scenario", scenario, "scenario id (see list-scenarios)")->required();
  run->add_option("--seed", seed, "master seed");
  run->add_option("--realizations", realizations, "Monte Carlo realizations per sweep point");
  run->add_option("--scale", scale, "desk or paper")->check(CLI::IsMember({"desk", "paper"}));
  run->add_option("--unit", unit, "se (bit/s/Hz) or mbps")->check(CLI::IsMember({"se", "mbps"}));
  run->add_option("--out", out, "CSV output path (default stdout)");
  run->add_option("--config", config_path, "experiment config file")->check(CLI::ExistingFile);

  app.add_subcommand("list-scenarios", "list scenario ids");

  auto* check = app.add_subcommand("validate-config", "parse and validate a config file");
  check->add_option("--config", config_path, "experiment config file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("list-scenarios")) {
      for (const auto& s : pca::scenario_catalog())
        std::cout << s.id << "\t" << s.sweep_variable << "\t" << s.description << "\n";
      return 0;
    }

    pca::ExperimentSpec spec;
    if (!config_path.empty()) pca::apply_config(spec, pca::read_config(config_path));

    if (app.got_subcommand("validate-config")) {
      if (spec.scenario.empty()) throw std::invalid_argument("config has no scenario");
      spec.validate();
      std::cout << "ok: " << spec.scenario << ", " << spec.realizations << " realizations, M = "
                << spec.M << "\n";
      return 0;
    }

    // flags override the file
    spec.scenario = scenario;
    if (!scale.empty()) pca::apply_scale(spec, scale == "paper" ? pca::Scale::Paper : pca::Scale::Desk);
    if (seed) spec.seed = *seed;
    if (realizations) spec.realizations = *realizations;
    if (!unit.empty()) spec.unit = unit == "mbps" ? pca::Unit::Mbps : pca::Unit::SE;
    if (!out.empty()) spec.out = out;

    const pca::ExperimentResult res = pca::run_experiment(spec);
    for (const auto& n : res.notes) std::cerr << "note: " << n << "\n";
    if (spec.out.empty()) {
      pca::write_csv(res.rows, std::cout);
    } else {
      pca::emit_csv(res.rows, spec.out);
      const std::filesystem::path p(spec.out);
      for (const auto& c : res.cdfs) {
        const auto cdf = p.parent_path() / (p.stem().string() + "_" + slug(c.scheme) + "_cdf.csv");
        pca::emit_cdf(c.samples, cdf.string());
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
