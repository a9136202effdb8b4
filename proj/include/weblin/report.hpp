#pragma once

#include <map>
#include <ostream>
#include <string>

#include "json.hpp"

namespace weblin {

/// Shared configuration of the two commands.
struct Config {
  std::string f_text;
  std::map<std::string, double> params;
  double x1min = 2.0, x1max = 3.0, x2min = 2.0, x2max = 3.0;
  int samples = 20;
  unsigned seed = 0;
  std::string json_path;       // write the JSON report here when nonempty
  std::string candidate_path;  // verify only
};

/// Rounds to 12 significant digits so reports diff reproducibly.
double sig12(double v);

/// Exit codes: 0 done, 2 input error, 3 degenerate web.
int cmd_analyze(const Config& cfg, std::ostream& out);
int cmd_verify(const Config& cfg, std::ostream& out);

}  // namespace weblin
