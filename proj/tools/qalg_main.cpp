#include <iostream>
#include <string>
#include <vector>

#include "qalg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qalg::cmdDispatch(args, std::cout, std::cerr);
}
