#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace salem {

// Exit codes: 0 success, 1 a verification found a witness, 2 usage or input error.
int dispatch(int argc, char** argv);
// Same, for arguments after the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace salem
