#include <iostream>

#include <CLI11.hpp>

#include "mutkit/cli.hpp"

namespace {

struct Usage {
  const char* name;
  const char* help;
  int min_inputs;
  int max_inputs;
};

constexpr Usage kUsages[] = {
    {"solve-conjugator", "Solve for the conjugator A and certify A^m = +-1", 1, 1},
    {"build-mutant", "Write rho_X and the mutant representation", 1, 1},
    {"check-maskit", "Sampled precise-invariance checks on the limit set", 1, 1},
    {"volume", "Volume of a representation on an ideal triangulation", 2, 2},
    {"verify-mutation", "Compare the volumes of M and its mutant", 4, 4},
    {"cover-check", "Cover multiplicativity and product-cycle checks", 2, 2},
    {"classify", "Classify generator images of a representation or mutation file", 1, 1},
    {"validate", "Check an input file and print diagnostics", 1, 1},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mutkit: mutation, limit-set and volume checks for Kleinian representations"};
  app.require_subcommand(1);

  mutkit::JobConfig config;
  double tol = 0.0;
  std::string emit_image;
  std::string mutation;

  for (const auto& u : kUsages) {
    auto* sub = app.add_subcommand(u.name, u.help);
    sub->add_option("inputs", config.inputs, "input files")->required()->expected(u.min_inputs, u.max_inputs);
    sub->add_option("--tol", tol, "override the command's main tolerance");
    sub->add_option("--seed", config.seed, "probe RNG seed");
    sub->add_option("--max-word-length", config.max_word_length, "limit-set word length")->check(CLI::Range(1, 20));
    sub->add_flag("--strict-sl-lift", config.strict_sl_lift, "require relators to map to +1");
    sub->add_flag("--force", config.force, "continue past relator residual failures");
    sub->add_option("--emit-image", emit_image, "write an SVG of the curve and probes");
    sub->add_option("--out", config.out_dir, "report directory");
    sub->add_option("--degree", config.degree, "cover degree when no mutation file is given")->check(CLI::PositiveNumber);
    sub->add_option("--circle-steps", config.circle_steps, "circle subdivision of the product cycle");
    sub->add_option("--mutation", mutation, "mutation file giving A and 2m");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (auto* sub : app.get_subcommands()) {
    config.command = sub->get_name();
    if (sub->count("--tol")) config.tol = tol;
    if (sub->count("--emit-image")) config.emit_image = emit_image;
    if (sub->count("--mutation")) config.mutation = mutation;
  }

  const auto result = mutkit::run(config);
  if (config.command == "validate" && result.report.contains("diagnostics")) {
    for (const auto& d : result.report["diagnostics"]) {
      std::cerr << config.inputs[0] << ":" << d["line"].get<int>() << ": " << d["message"].get<std::string>() << "\n";
    }
  }
  std::cout << result.summary << "\n";
  if (!result.report_path.empty()) std::cout << "report: " << result.report_path << "\n";
  return result.exit_code;
}
