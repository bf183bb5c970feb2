#include <iostream>

#include "foon/cli.hpp"

int main(int argc, char** argv) {
  int exit_code = 0;
  const std::optional<foon::CliConfig> config =
      foon::parse_cli(argc, argv, std::cout, std::cerr, exit_code);
  if (!config) return exit_code;
  return foon::run(*config, std::cout, std::cerr);
}
