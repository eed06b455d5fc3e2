#include <iostream>
#include <string>
#include <vector>

#include "mrfsom/app/commands.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return mrfsom::app::run_cli(args, std::cout, std::cerr);
}
