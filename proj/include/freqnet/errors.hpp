#pragma once

#include <stdexcept>
#include <string>

namespace freqnet {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class DecodeError : public Error {
public:
    using Error::Error;
};

class EmptyDataset : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

// Malformed or inconsistent run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Unreadable or structurally invalid model checkpoint.
class CheckpointError : public Error {
public:
    using Error::Error;
};

} // namespace freqnet
