#include <iostream>
#include <span>

#include "cli.hpp"

int main(int argc, char** argv) {
  return trispin::cli::run(std::span<const char* const>(argv, static_cast<std::size_t>(argc)),
                           std::cout, std::cerr);
}
