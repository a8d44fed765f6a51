#include <iostream>
#include <string>
#include <vector>

#include "momentbody/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return momentbody::cli::dispatch(args, std::cout, std::cerr);
}
