#include <iostream>
#include <string>
#include <vector>

#include <octak/report.hpp>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  octak::CliResult r = octak::run_cli(std::move(args));
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
