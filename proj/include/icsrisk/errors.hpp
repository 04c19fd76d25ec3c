#pragma once

#include <stdexcept>
#include <string>

namespace icsrisk {

// Base for all library errors; the CLI maps anything derived from this to
// exit code 2. what() always names the offending token, line, or level.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownLevelError : public Error {
public:
    explicit UnknownLevelError(int level)
        : Error("UnknownLevel " + std::to_string(level)), level_(level) {}
    int level() const { return level_; }

private:
    int level_;
};

} // namespace icsrisk
