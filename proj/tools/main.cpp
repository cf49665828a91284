#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wigner/cli.hpp"

namespace {

struct Options {
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("-c,--config", opt.config_path, "JSON run configuration")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("-o,--out", opt.out_dir, "output directory override");
  cmd->add_option("--set", opt.overrides, "dotted.key=value config override (repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wigner functions and phase-space currents in box billiards"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* wigner_cmd = app.add_subcommand("wigner", "export Wigner function fields");
  CLI::App* current_cmd = app.add_subcommand("current", "export current fields and contours");
  CLI::App* check_cmd = app.add_subcommand("check", "run configured self-checks");
  CLI::App* project_cmd = app.add_subcommand("project", "print state expansion coefficients");
  for (CLI::App* cmd : {wigner_cmd, current_cmd, check_cmd, project_cmd})
    add_common(cmd, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    nlohmann::json raw = wigner::load_config_file(opt.config_path);
    for (const std::string& kv : opt.overrides) wigner::apply_override(raw, kv);
    wigner::RunConfig cfg = wigner::parse_config(raw);
    if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;

    if (wigner_cmd->parsed()) return wigner::cmd_wigner(cfg);
    if (current_cmd->parsed()) return wigner::cmd_current(cfg);
    if (check_cmd->parsed()) return wigner::cmd_check(cfg);
    return wigner::cmd_project(cfg);
  } catch (const wigner::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
