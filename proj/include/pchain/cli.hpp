// Command-line front end. Exit codes: 0 success, 1 usage or budget error,
// 2 invalid spec, 3 spec not positive.

#ifndef PCHAIN_CLI_HPP
#define PCHAIN_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace pchain::cli {

/// Run with `args` excluding the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pchain::cli

#endif
