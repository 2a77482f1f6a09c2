#include <iostream>

#include "approxcover/cli/app.hpp"

int main(int argc, char** argv) {
  return approxcover::cli::run(argc, argv, std::cout, std::cerr);
}
