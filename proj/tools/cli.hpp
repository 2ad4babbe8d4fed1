#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace isc {

// Exit codes: 0 success, 2 obstructed or negative verdict, 3 invalid input,
// 4 internal invariant violation.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// names accepted by `isc fixture`
std::vector<std::string> fixture_names();

}  // namespace isc
