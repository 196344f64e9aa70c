// Copyright 2026 The junctionlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace junctionlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Physically invalid input (non-positive capacitance, negative gap, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Wrong number of levels, points or parameters for an operation.
class ArityError : public Error {
public:
    using Error::Error;
};

/// Eigensolver or quadrature failure.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Truncated basis not converged to the requested tolerance.
class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// No spectrum inversion inside the transmon regime.
class InversionError : public Error {
public:
    using Error::Error;
};

/// Mutually inconsistent inputs, e.g. a negative extracted capacitance.
class InconsistentInputError : public Error {
public:
    using Error::Error;
};

/// Requested window or grid outside the data domain.
class RangeError : public Error {
public:
    using Error::Error;
};

class ResolutionError : public Error {
public:
    using Error::Error;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// Model parameters not identifiable from the data (singular Jacobian).
class DegenerateModelError : public Error {
public:
    using Error::Error;
};

/// Malformed trace data (non-monotone axis, length mismatch, ...).
class InputError : public Error {
public:
    using Error::Error;
};

/// Gap extraction failed at one temperature (no sum-gap peak).
class ExtractionError : public Error {
public:
    using Error::Error;
};

/// Regime outside the validity of an approximation.
class UnsupportedRegimeError : public Error {
public:
    using Error::Error;
};

}  // namespace junctionlab
