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

#include "beamqubo/remote.hpp"

#include <cstdlib>

#include "json.hpp"

#include "beamqubo/errors.hpp"

#ifdef BEAMQUBO_WITH_REMOTE
#include <httplib.h>
#endif

namespace beamqubo {

using nlohmann::json;

RemoteEndpoint RemoteEndpoint::from_environment() {
    RemoteEndpoint ep;
    const char* url = std::getenv("BEAMQUBO_REMOTE_URL");
    if (url == nullptr || *url == '\0') {
        throw ValidationError("BEAMQUBO_REMOTE_URL is not set");
    }
    ep.url = url;
    if (const char* tok = std::getenv("BEAMQUBO_REMOTE_TOKEN")) ep.token = tok;
    return ep;
}

bool remote_available() noexcept {
#ifdef BEAMQUBO_WITH_REMOTE
    return true;
#else
    return false;
#endif
}

std::string remote_request_body(const QuboMatrix& q, std::size_t num_reads) {
    json terms = json::array();
    for (const auto& t : q.terms()) terms.push_back(json::array({t.row, t.col, t.value}));
    json body{{"size", q.size()}, {"offset", q.offset()}, {"qubo", std::move(terms)},
              {"num_reads", num_reads}};
    return body.dump();
}

SampleResult parse_remote_response(const QuboMatrix& q, const std::string& body) {
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::parse_error& e) {
        throw ProtocolError(std::string("response is not JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("samples") || !doc["samples"].is_array()) {
        throw ProtocolError("response lacks a \"samples\" array");
    }
    const json& samples = doc["samples"];
    if (doc.contains("energies")) {
        if (!doc["energies"].is_array() || doc["energies"].size() != samples.size()) {
            throw ProtocolError("\"energies\" does not match \"samples\" in length");
        }
    }
    const json* occ = nullptr;
    if (doc.contains("num_occurrences")) {
        occ = &doc["num_occurrences"];
        if (!occ->is_array() || occ->size() != samples.size()) {
            throw ProtocolError("\"num_occurrences\" does not match \"samples\" in length");
        }
    }

    std::vector<Bitstring> reads;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const json& s = samples[k];
        if (!s.is_array() || s.size() != q.size()) {
            throw ProtocolError("sample " + std::to_string(k) + " has length " +
                                std::to_string(s.is_array() ? s.size() : 0) + ", expected " +
                                std::to_string(q.size()));
        }
        Bitstring bits(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (!s[i].is_number_integer() || (s[i] != 0 && s[i] != 1)) {
                throw ProtocolError("sample " + std::to_string(k) + " holds a non-binary value");
            }
            bits[i] = s[i].get<int>() == 1 ? 1 : 0;
        }
        std::size_t copies = 1;
        if (occ != nullptr) {
            if (!(*occ)[k].is_number_unsigned()) throw ProtocolError("bad occurrence count");
            copies = (*occ)[k].get<std::size_t>();
        }
        for (std::size_t c = 0; c < copies; ++c) reads.push_back(bits);
    }
    return collect_samples(q, std::move(reads), "remote");
}

#ifdef BEAMQUBO_WITH_REMOTE

namespace {

struct SplitUrl {
    std::string origin;  // scheme://host[:port]
    std::string path;
};

SplitUrl split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw ValidationError("remote URL lacks a scheme: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

SampleResult remote_submit(const QuboMatrix& q, const RemoteEndpoint& endpoint) {
    const auto t0 = std::chrono::steady_clock::now();
    const SplitUrl u = split_url(endpoint.url);
    if (u.origin.rfind("http://", 0) != 0) {
        throw TransportError("only plain http endpoints are supported: " + endpoint.url, 0);
    }
    httplib::Client cli(u.origin);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(endpoint.timeout);
    const auto usecs =
        std::chrono::duration_cast<std::chrono::microseconds>(endpoint.timeout - secs);
    cli.set_connection_timeout(secs.count(), usecs.count());
    cli.set_read_timeout(secs.count(), usecs.count());
    cli.set_write_timeout(secs.count(), usecs.count());

    httplib::Headers headers;
    if (!endpoint.token.empty()) headers.emplace("Authorization", "Bearer " + endpoint.token);

    auto res = cli.Post(u.path, headers, remote_request_body(q, endpoint.num_reads),
                        "application/json");
    if (!res) {
        throw TransportError("request to " + endpoint.url +
                                 " failed: " + httplib::to_string(res.error()),
                             0);
    }
    if (res->status < 200 || res->status >= 300) {
        throw TransportError("remote answered HTTP " + std::to_string(res->status),
                             res->status);
    }
    auto out = parse_remote_response(q, res->body);
    out.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

#else

SampleResult remote_submit(const QuboMatrix&, const RemoteEndpoint&) {
    throw TransportError("built without the remote adapter", 0);
}

#endif

}  // namespace beamqubo
