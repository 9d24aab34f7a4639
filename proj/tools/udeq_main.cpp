#include <iostream>

#include "udeq/cli.hpp"

int main(int argc, char** argv) {
  return udeq::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
