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

#include <chrono>
#include <string>

#include "beamqubo/qubo.hpp"
#include "beamqubo/sampler.hpp"

namespace beamqubo {

/// HTTP endpoint of a remote annealing service.
///
/// Request body:  {"size": S, "offset": c, "qubo": [[i, j, v], ...], "num_reads": n}
/// Response body: {"samples": [[0, 1, ...], ...], "energies": [...]}
/// with an optional "num_occurrences" array.
struct RemoteEndpoint {
    /// e.g. http://host:8080/solve
    std::string url;
    /// Sent as "Authorization: Bearer <token>" when non-empty.
    std::string token;
    std::chrono::milliseconds timeout{60000};
    std::size_t num_reads = 100;

    /// Reads BEAMQUBO_REMOTE_URL and BEAMQUBO_REMOTE_TOKEN.
    /// Throws ValidationError when the URL is unset.
    static RemoteEndpoint from_environment();
};

/// True when the library was built with the HTTP adapter.
bool remote_available() noexcept;

/// Serialises the request body for q.
std::string remote_request_body(const QuboMatrix& q, std::size_t num_reads);

/// Parses a response body. Energies are recomputed from q.
/// Throws ProtocolError on malformed JSON or samples of the wrong length.
SampleResult parse_remote_response(const QuboMatrix& q, const std::string& body);

/// Blocking POST to the endpoint.
///
/// Throws TransportError (with the HTTP status, 0 when no response arrived)
/// and ProtocolError on a malformed answer.
SampleResult remote_submit(const QuboMatrix& q, const RemoteEndpoint& endpoint);

}  // namespace beamqubo
