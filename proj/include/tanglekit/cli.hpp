#pragma once

#include <iosfwd>
#include <string>

#include "tanglekit/tangle.hpp"

namespace tk::cli {

// Exit status: 0 success, 1 domain error, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Text picture, top of the tangle first.
std::string render(const Tangle& T);

}  // namespace tk::cli
