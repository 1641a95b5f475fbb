#ifndef AOPLKIT_CLI_H
#define AOPLKIT_CLI_H

#include <ostream>

namespace aoplkit {

// Exit codes: 0 ok, 1 no plan, 2 validation or ambiguity, 3 I/O, config or usage.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace aoplkit

#endif
