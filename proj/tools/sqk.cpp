#include <iostream>
#include <string>
#include <vector>

#include "sqk/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sqk::dispatch(args, std::cout, std::cerr);
}
