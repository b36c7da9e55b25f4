// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <string>
#include <vector>

#include "thinging/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return thinging::cli::run(args, std::cout, std::cerr, std::cin);
}
