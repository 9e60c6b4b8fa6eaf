#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ontoform::cli {

enum ExitCode : int { Ok = 0, Usage = 1, InputError = 2, CheckError = 3 };

// Runs `ontoform <args...>` in-process. args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace ontoform::cli
