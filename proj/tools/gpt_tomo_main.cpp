#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "gpttomo/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Builds composite state spaces, splits them into locally "
               "accessible and holistic parts, classifies entanglement and "
               "runs the information-protocol demos"};
  app.require_subcommand(1);

  gpttomo::Command cmd;
  std::string output_path;
  long long seed_flag = -1;

  auto add_common = [&](CLI::App* sub, bool needs_theory) {
    sub->add_option("--output", output_path, "Write the JSON result to a file");
    sub->add_option("--seed", seed_flag, "Seed for randomized parts");
    auto* opt = sub->add_option("--theory", cmd.theory,
                                "Theory selector: classical:<n>, bct, two-rebit, qubit-pair");
    if (needs_theory) opt->required();
  };

  auto* validate = app.add_subcommand("validate", "Check the composition requirements");
  add_common(validate, true);

  auto* decompose = app.add_subcommand("decompose", "Report subspace dimensions");
  add_common(decompose, true);

  auto* classify = app.add_subcommand("classify", "Classify the entanglement of a state");
  add_common(classify, true);
  classify->add_option("--state", cmd.state_name, "Named state, e.g. omega-plus");
  classify->add_option("--state-json", cmd.state_json, "Inline JSON coordinate array");

  auto* report = app.add_subcommand("report", "Verify the projector identities");
  add_common(report, true);

  auto* demo = app.add_subcommand("demo", "Run a protocol demo");
  add_common(demo, false);
  demo->add_option("name", cmd.demo_name,
                   "bell | steering | teleport | densecode | datahide | locc-decode | "
                   "secret-share")
      ->required();
  demo->add_option("--state", cmd.state_name, "Named state for state-driven demos");
  demo->add_option("--state-json", cmd.state_json, "Inline JSON coordinate array");
  demo->add_option("--bit", cmd.bit, "Hidden bit for locc-decode")->check(CLI::Range(0, 1));
  demo->add_option("--bit-x", cmd.bit_x, "First message bit for densecode")
      ->check(CLI::Range(0, 1));
  demo->add_option("--bit-y", cmd.bit_y, "Second message bit for densecode")
      ->check(CLI::Range(0, 1));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage errors exit 1; --help exits 0
  }

  if (validate->parsed()) cmd.verb = "validate";
  if (decompose->parsed()) cmd.verb = "decompose";
  if (classify->parsed()) cmd.verb = "classify";
  if (report->parsed()) cmd.verb = "report";
  if (demo->parsed()) cmd.verb = "demo";

  if (const char* env_seed = std::getenv("GPT_TOMO_SEED"))
    cmd.seed = std::strtoull(env_seed, nullptr, 10);
  else if (seed_flag >= 0)
    cmd.seed = static_cast<std::uint64_t>(seed_flag);

  const gpttomo::RunResult result = gpttomo::run(cmd);
  const std::string text = result.output.dump(2);
  if (!output_path.empty()) {
    std::ofstream out(output_path);
    out << text << "\n";
  } else {
    std::cout << text << "\n";
  }
  if (result.exit_code == 1 && result.output.contains("error"))
    std::cerr << "error: " << result.output["error"].get<std::string>() << "\n";
  return result.exit_code;
}
