// SPDX-License-Identifier: Apache-2.0

#include <string>
#include <vector>

#include "disksplit/cli.hpp"

int main(int argc, char** argv) {
    return disksplit::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
