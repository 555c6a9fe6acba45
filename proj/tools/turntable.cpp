#include <string>
#include <vector>

#include "turntable/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return turntable::cli::run_cli(args);
}
