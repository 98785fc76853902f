/*
 * Copyright 2026 the epicast authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef EPICAST_ERRORS_HPP
#define EPICAST_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace epicast {

/// Base class for all epicast failures that carry a diagnostic message.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// --- ingest ---

class MalformedHeader : public Error {
public:
    using Error::Error;
};

class RaggedRow : public Error {
public:
    using Error::Error;
};

class NonNumericCount : public Error {
public:
    using Error::Error;
};

class UnknownCountry : public Error {
public:
    using Error::Error;
};

class AllZero : public Error {
public:
    using Error::Error;
};

// --- numerics / models ---

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Thrown when a factorization hits a non-positive pivot; reports which one.
class NotPositiveDefinite : public Error {
public:
    NotPositiveDefinite(const std::string& what, std::size_t pivot)
        : Error(what), pivot_index(pivot) {}
    std::size_t pivot_index;
};

class SingularSystem : public Error {
public:
    using Error::Error;
};

class DegenerateInput : public Error {
public:
    using Error::Error;
};

// --- evaluate ---

class TooShort : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

// --- cli ---

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace epicast

#endif // EPICAST_ERRORS_HPP
