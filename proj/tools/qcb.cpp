#include <iostream>

#include "CLI11.hpp"
#include "qcb/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Canonical bases and left graphs of integrable highest weight modules"};
  app.require_subcommand(1);
  qcb::RunConfig config;
  std::string order;
  std::string suites;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--quiver", config.quiver_path, "Quiver JSON file")->required();
    sub->add_option("--max-height", config.max_height, "Largest height of weight spaces")->capture_default_str();
    sub->add_option("--order", order, "Vertex order for paths, comma separated ids");
    sub->add_option("--format", config.format, "json, dot or table")->capture_default_str();
    sub->add_option("--cache", config.cache_dir, "Cache directory");
    sub->add_option("--threads", config.threads, "Worker threads, 0 for all cores")->capture_default_str();
  };
  add_common(app.add_subcommand("dims", "Weight space ranks against the Freudenthal multiplicities"));
  add_common(app.add_subcommand("basis", "Canonical basis elements and monomial transition matrices"));
  add_common(app.add_subcommand("graph", "Left graph with admissible paths"));
  auto* verify = app.add_subcommand("verify", "Run invariant suites");
  add_common(verify);
  auto* suite_opt = verify->add_option("--suite", suites, "Comma separated suites (empty string for none)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? qcb::kOk : qcb::kInputError;
  }
  config.command = app.get_subcommands().front()->get_name();
  config.order = qcb::split_list(order);
  if (suite_opt->count() > 0) config.suites = qcb::split_list(suites);

  const auto result = qcb::run_command(config);
  std::cout << result.output;
  if (!result.error.empty()) std::cerr << result.error << '\n';
  return result.status;
}
