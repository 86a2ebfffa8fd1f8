#ifndef FINT_CLI_HPP
#define FINT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace fint::cli {

// Exit codes: 0 success, 2 certified negative result, 1 failure.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace fint::cli

#endif
