#include <iostream>
#include <string>
#include <vector>

#include "textforge/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return textforge::main_entry(args, std::cerr);
}
