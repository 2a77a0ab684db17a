#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace surfrep::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace surfrep::cli

// Implementation lives here; the CLI is header-only like the rest of the
// library and is compiled once by tools/surfrep_main.cpp (and the tests).
#include "surfrep/cli_impl.hpp"
