#include <cstdlib>
#include <iostream>

#include "cli/app.hpp"

int main(int argc, char** argv) {
  std::optional<std::string> env_tol;
  if (const char* v = std::getenv("TETRALAB_TOL")) env_tol = v;
  return tetra::cli::run(argc, argv, std::cout, std::cerr, env_tol);
}
