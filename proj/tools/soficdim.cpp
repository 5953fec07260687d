#include <string>
#include <vector>

#include "soficlab/cli.hpp"

int main(int argc, char** argv) {
  return soficlab::cli_main(std::vector<std::string>(argv + 1, argv + argc));
}
