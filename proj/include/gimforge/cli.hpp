#pragma once
#include <ostream>
namespace gimforge::cli {
int run(int argc, char** argv, std::ostream& out, std::ostream& err);
}
