#pragma once
#include <ostream>
#include <string>
#include <vector>
namespace wargraph::cli { int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err); }
