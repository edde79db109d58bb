#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ewt {

// Exit codes: 0 success, 2 usage / bad params, 3 malformed input,
// 4 dimension mismatch.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ewt
