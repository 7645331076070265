#pragma once

#include <stdexcept>
#include <string>

namespace ragleak {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad configuration or unusable input files. The CLI maps this to exit code 1.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Filesystem-level failure (open/read/write).
class IoError : public Error {
public:
    using Error::Error;
};

/// Structurally broken data: malformed JSONL, wrong chunk-store version, bad wire payloads.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Remote endpoint returned a non-2xx status or the transport failed.
class HttpError : public Error {
public:
    HttpError(int status, const std::string& message) : Error(message), status_(status) {}
    int status() const { return status_; }

private:
    int status_ = 0;  // 0 = transport-level failure, no HTTP status available
};

/// Remote completion came back empty. Distinct from transport errors so callers
/// can tell "model said nothing" apart from "request failed".
class EmptyCompletionError : public Error {
public:
    using Error::Error;
};

}  // namespace ragleak
