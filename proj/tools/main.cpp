#include "report.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

struct Flags {
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string format = "json";
};

void add_common(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config_path, "experiment config (JSON)")->check(CLI::ExistingFile);
  cmd->add_option("--seed", flags.seed, "seed for randomized experiments");
  cmd->add_option("--out", flags.out_path, "report path (default: stdout)");
  cmd->add_option("--format", flags.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  using namespace wwlab;
  CLI::App app{"wwlab: Wiener-Wintner experiments on weights, spectra, matrix systems and Van der Corput bounds"};
  app.require_subcommand(1);
  Flags flags;

  struct Group {
    std::string name, help;
    std::vector<std::string> actions;
  };
  const std::vector<Group> groups{
      {"weight", "correlation tables and Besicovitch classification", {"analyze", "classify"}},
      {"spectral", "Wiener ladders, point masses and affinities", {"estimate", "affinity"}},
      {"system", "matrix systems and uniform twisted averages", {"simulate", "ww-uniform"}},
      {"vdc", "Van der Corput bound checks", {"check", "fuzz"}},
  };
  std::vector<std::pair<CLI::App*, std::string>> leaves;
  for (const auto& [group, help, actions] : groups) {
    CLI::App* g = app.add_subcommand(group, help);
    g->require_subcommand(1);
    for (const auto& action : actions) {
      CLI::App* leaf = g->add_subcommand(action);
      add_common(leaf, flags);
      leaves.emplace_back(leaf, group + " " + action);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitInput;
  }

  std::string command;
  CLI::App* leaf = nullptr;
  for (const auto& [l, name] : leaves)
    if (l->parsed()) {
      leaf = l;
      command = name;
    }

  try {
    cli::Common common;
    if (leaf->count("--seed") > 0) common.seed = flags.seed;
    common.format = flags.format;
    io::json config = io::json::object();
    if (!flags.config_path.empty()) {
      config = io::read_json_file(flags.config_path);
      if (!config.is_object()) throw Error(ErrorKind::io, "config must be a JSON object");
      common.base_dir = std::filesystem::path(flags.config_path).parent_path();
      if (common.base_dir.empty()) common.base_dir = ".";
    }
    const cli::Outcome outcome = cli::run_command(command, config, common);
    std::string text;
    if (flags.format == "csv") {
      if (outcome.csv.empty()) throw Error(ErrorKind::invalid_argument, command + " has no csv output");
      text = outcome.csv;
    } else {
      text = cli::make_report(command, outcome, cli::utc_timestamp()).dump(2) + "\n";
    }
    if (flags.out_path.empty()) std::cout << text;
    else io::write_text_file(flags.out_path, text);
    return outcome.exit_code;
  } catch (const Error& e) {
    std::cerr << "wwlab: " << e.what() << "\n";
    return cli::exit_code_for(e.kind());
  } catch (const io::json::exception& e) {
    std::cerr << "wwlab: " << e.what() << "\n";
    return cli::kExitInput;
  }
}
