#pragma once

#include <stdexcept>
#include <string>

namespace stagecast {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or out-of-contract caller input (non-finite values, bad ranges).
class InvalidInput : public Error {
public:
    using Error::Error;
};

// Raster dimensions do not agree where they must.
class SizeMismatch : public Error {
public:
    using Error::Error;
};

// Bad configuration (rates that do not factor, unstable filter sections, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Failure while parsing an external file (calibration, scene, plan, WAV).
class ParseError : public Error {
public:
    using Error::Error;
};

// I/O failure (file open/read/write, sockets).
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace stagecast
