#include "parasurf/errors.hpp"
#include "parasurf/runner.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
  using namespace parasurf;

  CLI::App app{"parasurf: induced almost paracontact structures on affine hypersurfaces"};
  app.require_subcommand(1);

  std::string verify_path;
  std::string json_path;
  bool diagnostic = false;
  bool no_timing = false;
  auto* verify = app.add_subcommand("verify", "Run the verification batteries on a scene file");
  verify->add_option("scene", verify_path, "Scene file (JSON)")->required();
  verify->add_option("--json", json_path, "Write the full report to this path");
  verify->add_flag("--diagnostic", diagnostic, "Run suites even when their hypotheses fail");
  verify->add_flag("--no-timing", no_timing, "Omit timing from the JSON report");

  int gen_n = 1;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen-quadric", "Write a random quadric_radial scene file");
  gen->add_option("--n", gen_n, "Half of the tangent dimension minus one")->required();
  gen->add_option("--seed", gen_seed, "Generator seed")->required();
  gen->add_option("--out", gen_out, "Output path")->required();

  std::string sweep_path;
  std::string sweep_param;
  std::string sweep_values;
  auto* sweep = app.add_subcommand("sweep", "Re-run a scene over a list of parameter values");
  sweep->add_option("scene", sweep_path, "Scene file (JSON)")->required();
  sweep->add_option("--param", sweep_param, "Parameter name (epsilon)")->required();
  sweep->add_option("--values", sweep_values, "Comma-separated values")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*verify) {
      std::optional<std::string> out_json;
      if (!json_path.empty()) out_json = json_path;
      return cmd_verify(verify_path, out_json, {.diagnostic = diagnostic, .timing = !no_timing}, std::cout, std::cerr);
    }
    if (*gen) return cmd_gen_quadric(gen_n, gen_seed, gen_out, std::cout, std::cerr);
    if (*sweep) return cmd_sweep(sweep_path, sweep_param, parse_value_list(sweep_values), std::cout, std::cerr);
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  }
  return kExitInput;
}
