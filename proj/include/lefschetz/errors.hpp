/*
   Copyright 2026 The lefschetz authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef LEFSCHETZ_ERRORS_HPP
#define LEFSCHETZ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lefschetz {

/// Base of every error the library raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input rejected before any computation. The CLI maps these to exit code 2.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A computed quantity contradicts a proven identity. Exit code 3.
class InvariantError : public Error {
public:
    using Error::Error;
};

class ParseError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Twist sequences or entry grids of the wrong length.
class ShapeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// An explicit entry whose degree differs from a_i - b_j.
class DegreeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// The cokernel is not of finite length: the four-term alternating sum of
/// free-module dimensions disagrees with the measured dimension somewhere.
class NotFiniteLength : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// random_instance exhausted its retry cap.
class GenerationFailed : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// No sampled line gave a restricted kernel profile of the form O(e) + O(f).
class LineDegenerate : public InvariantError {
public:
    using InvariantError::InvariantError;
};

/// Euler characteristic or duality cross-check failed.
class ConsistencyFailure : public InvariantError {
public:
    using InvariantError::InvariantError;
};

/// A measured multiplication rank contradicts the predicted ranges.
class TheoremViolation : public InvariantError {
public:
    using InvariantError::InvariantError;
};

}  // namespace lefschetz

#endif  // LEFSCHETZ_ERRORS_HPP
