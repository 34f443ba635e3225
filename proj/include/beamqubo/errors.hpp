// Copyright 2026 The beamqubo Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace beamqubo {

/// Coarse error classes. The C API maps these one-to-one onto status codes.
enum class ErrorKind {
    Validation,
    DegenerateGeometry,
    Capacity,
    Infeasible,
    Resource,
    BudgetExhausted,
    Transport,
    Protocol,
    Format,
    Io,
};

class Error : public std::runtime_error {
 public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

 private:
    ErrorKind kind_;
};

class ValidationError : public Error {
 public:
    explicit ValidationError(const std::string& msg) : Error(ErrorKind::Validation, msg) {}
};

class DegenerateGeometryError : public Error {
 public:
    explicit DegenerateGeometryError(const std::string& msg)
            : Error(ErrorKind::DegenerateGeometry, msg) {}
};

/// Problem too large for the configured limit (QUBO size, exact solver width,
/// annealer capacity).
class CapacityError : public Error {
 public:
    CapacityError(const std::string& msg, std::size_t count)
            : Error(ErrorKind::Capacity, msg), count_(count) {}
    std::size_t count() const noexcept { return count_; }

 private:
    std::size_t count_;
};

class InfeasibleError : public Error {
 public:
    explicit InfeasibleError(const std::string& msg) : Error(ErrorKind::Infeasible, msg) {}
};

class ResourceError : public Error {
 public:
    explicit ResourceError(const std::string& msg) : Error(ErrorKind::Resource, msg) {}
};

class BudgetExhaustedError : public Error {
 public:
    explicit BudgetExhaustedError(const std::string& msg)
            : Error(ErrorKind::BudgetExhausted, msg) {}
};

class TransportError : public Error {
 public:
    TransportError(const std::string& msg, int status)
            : Error(ErrorKind::Transport, msg), status_(status) {}
    /// HTTP status, or 0 when no response was received.
    int status() const noexcept { return status_; }

 private:
    int status_;
};

class ProtocolError : public Error {
 public:
    explicit ProtocolError(const std::string& msg) : Error(ErrorKind::Protocol, msg) {}
};

class FormatError : public Error {
 public:
    explicit FormatError(const std::string& msg) : Error(ErrorKind::Format, msg) {}
};

class IoError : public Error {
 public:
    explicit IoError(const std::string& msg) : Error(ErrorKind::Io, msg) {}
};

}  // namespace beamqubo
