#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace thetarough::cli {

// 0 success, 1 failed check, 2 usage error
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace thetarough::cli
