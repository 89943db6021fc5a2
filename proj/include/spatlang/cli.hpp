#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spatlang {

// Command-line front door. Returns the process exit status: 0 success,
// 1 domain failure (unparseable, indiscriminable, uninterpretable,
// unexpressible), 2 usage or schema error. Reads stdin only for
// `produce` without --text.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            std::istream& in);

}  // namespace spatlang
