#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ddlyap {

// Entry point shared by the installed binary and the in-process CLI tests.
// `args` holds the command line without the program name. All console
// output goes to the supplied streams.
//
// Exit codes: 0 success (verify: all claims pass), 1 claim failure,
// 2 usage or configuration error, 3 numerical failure.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ddlyap
