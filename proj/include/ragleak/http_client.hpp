#pragma once

#include <chrono>
#include <string>

#include <nlohmann/json.hpp>

namespace ragleak {

/// Name of the environment variable holding the bearer token for remote
/// endpoints. When unset, requests go out without an Authorization header.
inline constexpr const char* kApiKeyEnvVar = "RAGLEAK_API_KEY";

/// Thin JSON-over-HTTP POST client for OpenAI-compatible endpoints.
/// An endpoint like "http://host:8080/v1" splits into the client base and a
/// path prefix applied to every request ("/v1/chat/completions", ...).
class JsonHttpClient {
public:
    explicit JsonHttpClient(std::string endpoint, std::chrono::milliseconds timeout = std::chrono::milliseconds(30000));

    /// POST `body` to <endpoint><path>. Throws HttpError on transport failure or
    /// non-2xx status (429 carries any Retry-After value in the message), and
    /// FormatError when the response body is not valid JSON.
    nlohmann::json post_json(const std::string& path, const nlohmann::json& body) const;

    const std::string& endpoint() const { return endpoint_; }
    std::chrono::milliseconds timeout() const { return timeout_; }

private:
    std::string endpoint_;
    std::string base_;         // scheme://host[:port]
    std::string path_prefix_;  // remainder, "" or "/v1" etc.
    std::chrono::milliseconds timeout_;
};

}  // namespace ragleak
