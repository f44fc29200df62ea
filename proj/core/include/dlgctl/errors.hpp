#pragma once

#include <stdexcept>
#include <string>

namespace dlgctl {

/// Raised when an input file (transcript, judge votes, scenario, config)
/// cannot be parsed.  Carries the source name and 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string source, int line, const std::string& reason)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + reason),
          source_(std::move(source)),
          line_(line) {}

    const std::string& source() const { return source_; }
    int line() const { return line_; }

private:
    std::string source_;
    int line_;
};

/// Raised when a precondition between already-parsed values is violated
/// (judge rows vs. shift count, unknown proposition ids, and so on).
class ContractError : public std::runtime_error {
public:
    explicit ContractError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dlgctl
