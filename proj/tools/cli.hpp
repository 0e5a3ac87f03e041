#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qlat::cli {

enum ExitCode : int {
  ok = 0,
  usage_error = 2,   // bad flags, unknown command or preset
  config_error = 3,
  output_error = 4,
  numerical_error = 5,
};

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qlat::cli
