#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "hoeffding/cli.hpp"

namespace {

bool parse_tol_env(double& tol) {
  const char* env = std::getenv("HO_TOL");
  if (env == nullptr) return true;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0)) return false;
  tol = v;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  using hoeffding::Command;
  using hoeffding::RunConfig;

  RunConfig config;
  if (!parse_tol_env(config.tol)) {
    std::cerr << "error: HO_TOL must be a positive number\n";
    return 2;
  }

  CLI::App app{
      "Exact generalized Hoeffding (functional ANOVA) decomposition of "
      "models with finitely supported, possibly dependent inputs"};
  app.require_subcommand(1);

  std::string cell_arg, g_arg;

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    if (needs_input)
      sub->add_option("input", config.input_path,
                      "input JSON file (law + model)")
          ->required();
    sub->add_option("-o,--output", config.output_path,
                    "write the report to a file instead of stdout");
    sub->add_option("--tol", config.tol,
                    "rank/residual tolerance (default 1e-10, or HO_TOL)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--eps-pd", config.eps_pd,
                    "positive-definiteness threshold on the smallest "
                    "eigenvalue (default 1e-10)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--exhaustive", config.exhaustive,
                  "check every subset pair even for d > 8");
    sub->add_flag("--skip-checks", config.skip_checks,
                  "skip the admissibility checks; results are stamped "
                  "unverified");
  };

  CLI::App* check = app.add_subcommand(
      "check", "run the admissibility checks and report the verdict");
  add_common(check, true);

  CLI::App* angles = app.add_subcommand(
      "angles", "emit the matrix of pairwise angle cosines");
  add_common(angles, true);
  angles->add_option("--format", config.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  CLI::App* decompose = app.add_subcommand(
      "decompose", "compute the component functions of the model");
  add_common(decompose, true);

  CLI::App* indices = app.add_subcommand(
      "indices", "compute the four sensitivity-index families");
  add_common(indices, true);
  indices->add_option("--which", config.which,
                      "comma list of structural,correlative,pure,dependence");
  indices->add_option("--format", config.format, "json, csv or table")
      ->check(CLI::IsMember({"json", "csv", "table"}));

  CLI::App* explain = app.add_subcommand(
      "explain", "attribute one model evaluation to input subsets");
  add_common(explain, true);
  explain->add_option("--cell", cell_arg,
                      "grid cell as 0-based level indices, e.g. 0,1")
      ->required();
  explain->add_option("--format", config.format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));

  CLI::App* bernoulli = app.add_subcommand(
      "bernoulli", "closed-form decomposition for two Bernoulli inputs");
  bernoulli->add_option("--q1", config.pair.q1, "P(X1 = 1)")->required();
  bernoulli->add_option("--q2", config.pair.q2, "P(X2 = 1)")->required();
  bernoulli->add_option("--rho", config.pair.rho, "E[X1 X2]")->required();
  bernoulli->add_option("--g", g_arg, "model values G00,G01,G10,G11")
      ->required();
  bernoulli->add_option("-o,--output", config.output_path,
                        "write the report to a file instead of stdout");
  bernoulli->add_option("--tol", config.tol, "rank/residual tolerance")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (check->parsed()) config.command = Command::check;
  if (angles->parsed()) config.command = Command::angles;
  if (decompose->parsed()) config.command = Command::decompose;
  if (indices->parsed()) config.command = Command::indices;
  if (explain->parsed()) {
    config.command = Command::explain;
    std::stringstream ss(cell_arg);
    std::string token;
    while (std::getline(ss, token, ',')) {
      try {
        config.cell.push_back(std::stoi(token));
      } catch (const std::exception&) {
        std::cerr << "error: --cell expects comma-separated integers\n";
        return 2;
      }
    }
  }
  if (bernoulli->parsed()) {
    config.command = Command::bernoulli;
    std::stringstream ss(g_arg);
    std::string token;
    while (std::getline(ss, token, ',')) {
      try {
        config.bernoulli_g.push_back(std::stod(token));
      } catch (const std::exception&) {
        std::cerr << "error: --g expects comma-separated numbers\n";
        return 2;
      }
    }
  }

  return hoeffding::run(config);
}
