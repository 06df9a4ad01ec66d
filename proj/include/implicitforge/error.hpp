#ifndef IMPLICITFORGE_ERROR_HPP
#define IMPLICITFORGE_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace implicitforge {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed DSL text. `offset` is the byte offset where parsing stopped.
class ParseError : public Error {
public:
    ParseError(std::string message, std::size_t offset, std::vector<std::string> expected = {})
        : Error(compose(message, offset, expected)), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    static std::string compose(const std::string& message, std::size_t offset,
                               const std::vector<std::string>& expected) {
        std::string out = "offset " + std::to_string(offset) + ": " + message;
        if (!expected.empty()) {
            out += " (expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i) out += ", ";
                out += expected[i];
            }
            out += ")";
        }
        return out;
    }

    std::size_t offset_;
    std::vector<std::string> expected_;
};

class UnboundParameter : public Error {
public:
    explicit UnboundParameter(const std::string& name)
        : Error("unbound parameter '" + name + "'"), name_(name) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// A domain invariant was violated by caller-supplied values.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class UnknownPreset : public Error {
public:
    explicit UnknownPreset(const std::string& name) : Error("unknown preset '" + name + "'") {}
};

/// Stream failures and malformed binary payloads.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace implicitforge

#endif
