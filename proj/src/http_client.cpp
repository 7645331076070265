#include "ragleak/http_client.hpp"

#include <cstdlib>
#include <memory>

#include <httplib.h>

#include "ragleak/error.hpp"

namespace ragleak {

namespace {

std::string bearer_token() {
    const char* key = std::getenv(kApiKeyEnvVar);
    return key ? std::string(key) : std::string();
}

}  // namespace

JsonHttpClient::JsonHttpClient(std::string endpoint, std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), timeout_(timeout) {
    auto scheme_end = endpoint_.find("://");
    std::size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
    auto path_start = endpoint_.find('/', host_start);
    if (path_start == std::string::npos) {
        base_ = endpoint_;
    } else {
        base_ = endpoint_.substr(0, path_start);
        path_prefix_ = endpoint_.substr(path_start);
        while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
    }
    if (base_.empty()) throw ConfigError("empty endpoint URL");
}

nlohmann::json JsonHttpClient::post_json(const std::string& path, const nlohmann::json& body) const {
    httplib::Client client(base_);
    client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout_) + std::chrono::seconds(1));
    client.set_read_timeout(timeout_);
    client.set_write_timeout(timeout_);

    httplib::Headers headers;
    const std::string token = bearer_token();
    if (!token.empty()) headers.emplace("Authorization", "Bearer " + token);

    const auto started = std::chrono::steady_clock::now();
    auto res = client.Post(path_prefix_ + path, headers, body.dump(), "application/json");
    if (!res) {
        const auto elapsed =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
        if (res.error() == httplib::Error::Read || res.error() == httplib::Error::ConnectionTimeout)
            throw HttpError(0, "request to " + base_ + path_prefix_ + path + " timed out after " +
                                   std::to_string(elapsed.count()) + " ms");
        throw HttpError(0, "request to " + base_ + path_prefix_ + path +
                               " failed: " + httplib::to_string(res.error()));
    }
    if (res->status < 200 || res->status >= 300) {
        std::string message = "HTTP " + std::to_string(res->status) + " from " + base_ + path_prefix_ + path;
        if (res->status == 401) message += " (authentication failed)";
        if (res->status == 429) {
            message += " (rate limited";
            if (res->has_header("Retry-After")) message += ", retry after " + res->get_header_value("Retry-After") + " s";
            message += ")";
        }
        if (!res->body.empty() && res->body.size() < 512) message += ": " + res->body;
        throw HttpError(res->status, message);
    }
    try {
        return nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::parse_error&) {
        throw FormatError("non-JSON response from " + base_ + path_prefix_ + path);
    }
}

}  // namespace ragleak
