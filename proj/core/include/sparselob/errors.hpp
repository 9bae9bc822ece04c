#pragma once

#include <stdexcept>

namespace sparselob {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// User-facing problems: bad config files, bad values, impossible requests.
// The CLI maps this family to exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

class ParseError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class ValidationError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// A statistics request needs a book snapshot that was never recorded.
class MissingSnapshot : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// An analysis window contains no full sampling step (or is outside the data).
class EmptyWindow : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// Contract violations between engine and book transitions. Reaching one of
// these from the CLI means a bug, not a user error; exit code 1.
class InternalError : public Error {
public:
    using Error::Error;
};

class InvalidMarks : public InternalError {
public:
    using InternalError::InternalError;
};

class VolumeExceedsSide : public InternalError {
public:
    using InternalError::InternalError;
};

class InvalidLevel : public InternalError {
public:
    using InternalError::InternalError;
};

// A market order arrived while the targeted side holds less volume than the
// tradable floor; the engine discards the event.
class SideTooThin : public InternalError {
public:
    using InternalError::InternalError;
};

} // namespace sparselob
