// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace splitedge {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file or unparseable field.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Layer chain whose shapes do not propagate, or an invalid layer parameter.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Corrupt or inconsistent encoded stream (bad magic, truncation, invalid code).
class CodecError : public Error {
public:
    using Error::Error;
};

/// Accuracy-curve lookup failure or an unsatisfiable loss bound.
class CurveError : public Error {
public:
    using Error::Error;
};

}  // namespace splitedge
