#pragma once

#include <stdexcept>
#include <string>

namespace zoom3d {

/// Error categories. The CLI maps each one to a fixed exit code and a
/// one-word tag on stderr.
enum class ErrorKind {
    InvalidArgument,
    Config,
    Io,
    Format,
    DegenerateInput,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& what) : Error(ErrorKind::InvalidArgument, what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

struct FormatError : Error {
    explicit FormatError(const std::string& what) : Error(ErrorKind::Format, what) {}
};

struct DegenerateInput : Error {
    explicit DegenerateInput(const std::string& what) : Error(ErrorKind::DegenerateInput, what) {}
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace zoom3d
