#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "weblin/report.hpp"

using weblin::Config;

namespace {

bool parse_box(const std::string& text, Config& cfg) {
  double v[4];
  char tail;
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf,%lf%c", &v[0], &v[1], &v[2],
                  &v[3], &tail) != 4)
    return false;
  cfg.x1min = v[0];
  cfg.x1max = v[1];
  cfg.x2min = v[2];
  cfg.x2max = v[3];
  return true;
}

bool parse_params(const std::vector<std::string>& items, Config& cfg) {
  for (const std::string& it : items) {
    std::size_t eq = it.find('=');
    if (eq == 0 || eq == std::string::npos) return false;
    char* end = nullptr;
    double v = std::strtod(it.c_str() + eq + 1, &end);
    if (end == it.c_str() + eq + 1 || *end != '\0') return false;
    cfg.params[it.substr(0, eq)] = v;
  }
  return true;
}

void add_common(CLI::App* cmd, Config& cfg, std::string& box,
                std::vector<std::string>& params) {
  cmd->add_option("--f", cfg.f_text, "web function f(x1, x2)")->required();
  cmd->add_option("--box", box, "domain box x1min,x1max,x2min,x2max");
  cmd->add_option("--param", params, "parameter binding name=value");
  cmd->add_option("--samples", cfg.samples, "sample count (at least 10)");
  cmd->add_option("--seed", cfg.seed, "sample sequence offset");
  cmd->add_option("--json", cfg.json_path, "write the JSON report here");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linearizability analysis of planar 3-webs"};
  app.require_subcommand(1);

  Config cfg;
  std::string box;
  std::vector<std::string> params;

  CLI::App* analyze = app.add_subcommand("analyze", "search for constant bases");
  add_common(analyze, cfg, box, params);
  CLI::App* verify = app.add_subcommand("verify", "check a closed-form candidate");
  add_common(verify, cfg, box, params);
  verify->add_option("--candidate", cfg.candidate_path, "candidate JSON file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (!box.empty() && !parse_box(box, cfg)) {
    std::cout << "error: --box expects x1min,x1max,x2min,x2max\n";
    return 2;
  }
  if (!parse_params(params, cfg)) {
    std::cout << "error: --param expects name=value\n";
    return 2;
  }

  try {
    if (app.got_subcommand(analyze)) return weblin::cmd_analyze(cfg, std::cout);
    return weblin::cmd_verify(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cout << "error: " << e.what() << "\n";
    return 2;
  }
}
