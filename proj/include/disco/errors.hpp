#pragma once

#include <stdexcept>

namespace disco {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad usage or configuration. CLI exit code 1.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Malformed or inconsistent input data. CLI exit code 2.
class DataError : public Error {
public:
    using Error::Error;
};

// Transport or model-side failure from a generation client. CLI exit code 3.
class ClientError : public Error {
public:
    using Error::Error;
};

}  // namespace disco
