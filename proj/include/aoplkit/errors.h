#ifndef AOPLKIT_ERRORS_H
#define AOPLKIT_ERRORS_H

#include <stdexcept>
#include <string>
#include <vector>

#include "aoplkit/term.h"

namespace aoplkit {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(SourcePos pos, std::vector<std::string> expected, std::string found);

    SourcePos pos;
    std::vector<std::string> expected;
    std::string found;
};

// Problem configuration rejected; `key` names the offending JSON path.
class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string &message);
    std::string key;
};

// Unreadable or unwritable file.
class IoError : public Error {
public:
    using Error::Error;
};

class ExecError : public Error {
public:
    using Error::Error;
};

class EmitError : public Error {
public:
    using Error::Error;
};

class BoundExceeded : public Error {
public:
    using Error::Error;
};

class OracleBoundExceeded : public Error {
public:
    using Error::Error;
};

class NoDurationEntry : public Error {
public:
    using Error::Error;
};

// Two surviving defeasible rules derive complementary heads; the policy is
// not categorical in the evaluated state.
class AmbiguityError : public Error {
public:
    AmbiguityError(std::string first, std::string second, int step);
    std::string first_label;
    std::string second_label;
    int step;
};

class AmbiguousPenalty : public Error {
public:
    AmbiguousPenalty(std::string label, int step);
    std::string label;
    int step;
};

}  // namespace aoplkit

#endif
