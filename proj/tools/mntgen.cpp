// Copyright 2026 The mntgen Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#include "mntgen/cli.hpp"

#include <iostream>

int main(int argc, char **argv) {
    return mntgen::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
