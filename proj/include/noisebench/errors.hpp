#pragma once

#include <stdexcept>
#include <string>

namespace noisebench {

// Invalid user-facing parameter (bad sigma, even window, ...). CLI exit code 2.
class parameter_error : public std::invalid_argument {
public:
    explicit parameter_error(const std::string& what) : std::invalid_argument(what) {}
};

// Mismatched image dimensions between two operands.
class shape_error : public std::invalid_argument {
public:
    explicit shape_error(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed input bytes (PGM decoding). CLI exit code 3.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem-level failure. CLI exit code 3.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

// Numeric consistency violation (e.g. a spectrum that is not the transform
// of any real image).
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace noisebench
