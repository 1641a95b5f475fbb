#include "aoplkit/errors.h"

namespace aoplkit {

static std::string describe_parse_error(SourcePos pos, const std::vector<std::string> &expected,
                                        const std::string &found) {
    std::string msg = std::to_string(pos.line) + ":" + std::to_string(pos.column) +
                      ": unexpected " + found + ", expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i)
            msg += i + 1 == expected.size() ? " or " : ", ";
        msg += expected[i];
    }
    return msg;
}

ParseError::ParseError(SourcePos p, std::vector<std::string> exp, std::string f)
    : Error(describe_parse_error(p, exp, f)), pos(p), expected(std::move(exp)),
      found(std::move(f)) {}

ConfigError::ConfigError(std::string k, const std::string &message)
    : Error(k + ": " + message), key(std::move(k)) {}

AmbiguityError::AmbiguityError(std::string first, std::string second, int s)
    : Error("policy is not categorical at step " + std::to_string(s) + ": " + first +
            " and " + second + " derive complementary heads"),
      first_label(std::move(first)), second_label(std::move(second)), step(s) {}

AmbiguousPenalty::AmbiguousPenalty(std::string l, int s)
    : Error("several penalty statements match " + l + " at step " + std::to_string(s)),
      label(std::move(l)), step(s) {}

}  // namespace aoplkit
