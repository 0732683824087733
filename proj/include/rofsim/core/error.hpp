/*
 * Copyright (c) 2026, rofsim authors. All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace rofsim {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A payload or buffer does not have the length an operation requires.
class SizingError : public Error {
public:
    using Error::Error;
};

/// Two sequences that must be paired have different lengths.
class LengthMismatchError : public Error {
public:
    using Error::Error;
};

/// Waveforms with different sample rates were combined.
class SampleRateMismatchError : public Error {
public:
    using Error::Error;
};

/// A frequency falls outside the representable (Nyquist) band.
class AliasingError : public Error {
public:
    using Error::Error;
};

/// The receiver could not locate a frame preamble.
class SynchronizationError : public Error {
public:
    using Error::Error;
};

/// A parameter violates a documented invariant.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A device could not find the optical tone it is supposed to act on.
class ToneNotFoundError : public Error {
public:
    using Error::Error;
};

/// Not enough optical power left to serve a signal.
class PowerBudgetError : public Error {
public:
    using Error::Error;
};

/// A path through the network tree does not exist.
class TopologyError : public Error {
public:
    using Error::Error;
};

/// Configuration failed validation. Maps to CLI exit code 2.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Configuration text could not be parsed.
class ParseError : public ValidationError {
public:
    ParseError(const std::string& what, int line, int column)
        : ValidationError(what + " (line " + std::to_string(line) + ", column " +
                          std::to_string(column) + ")"),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// Runtime failure inside a scenario, tagged with the pipeline stage. Maps to exit code 3.
class SimulationError : public Error {
public:
    SimulationError(std::string stage, const std::string& what)
        : Error("[" + stage + "] " + what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

/// Number for error messages; doubles keep 6 significant digits instead of fixed notation.
template <typename T>
std::string num(T v) {
    if constexpr (std::is_integral_v<T>) {
        return std::to_string(v);
    } else {
        std::ostringstream os;
        os << v;
        return os.str();
    }
}

}  // namespace rofsim
