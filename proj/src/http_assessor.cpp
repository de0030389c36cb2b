#include "slrscreen/http_assessor.hpp"

#include <httplib.h>

#include <nlohmann/json.hpp>

namespace slrscreen {

namespace {

using nlohmann::json;

}  // namespace

HttpAssessor::HttpAssessor(const RunConfig& config, std::string api_key)
    : model_(config.model_name),
      temperature_(config.temperature),
      timeout_(config.request_timeout),
      api_key_(std::move(api_key)) {
    const std::string& url = config.endpoint_url;
    if (!url.starts_with("http://") && !url.starts_with("https://")) {
        throw std::invalid_argument("endpoint URL must be http(s): " + url);
    }
    const size_t host_start = url.find("//") + 2;
    const size_t path_start = url.find('/', host_start);
    if (path_start == std::string::npos) {
        base_ = url;
        path_ = "/";
    } else {
        base_ = url.substr(0, path_start);
        path_ = url.substr(path_start);
    }
}

TransportResult HttpAssessor::send(const std::string& instruction,
                                   const std::string& user_message) {
    json body;
    body["model"] = model_;
    body["temperature"] = temperature_;
    body["messages"] = json::array({
        json{{"role", "system"}, {"content", instruction}},
        json{{"role", "user"}, {"content", user_message}},
    });

    // A client per call keeps this trivially safe under concurrent sends;
    // connection setup is noise next to a completion round trip.
    httplib::Client client(base_);
    client.set_connection_timeout(timeout_.count() / 1000,
                                  (timeout_.count() % 1000) * 1000);
    client.set_read_timeout(timeout_.count() / 1000, (timeout_.count() % 1000) * 1000);
    client.set_write_timeout(timeout_.count() / 1000, (timeout_.count() % 1000) * 1000);

    httplib::Headers headers;
    if (!api_key_.empty()) {
        headers.emplace("Authorization", "Bearer " + api_key_);
    }

    auto res = client.Post(path_, headers,
                           body.dump(-1, ' ', false, json::error_handler_t::replace),
                           "application/json");
    if (!res) {
        return TransportFailure{0, httplib::to_string(res.error())};
    }
    if (res->status != 200) {
        return TransportFailure{res->status, res->body};
    }

    json reply = json::parse(res->body, nullptr, false);
    if (reply.is_discarded() || !reply.contains("choices") || !reply["choices"].is_array() ||
        reply["choices"].empty() || !reply["choices"][0].contains("message") ||
        !reply["choices"][0]["message"].contains("content") ||
        !reply["choices"][0]["message"]["content"].is_string()) {
        return TransportFailure{200, "malformed completion body: " + res->body};
    }

    TransportReply out;
    out.body = reply["choices"][0]["message"]["content"].get<std::string>();
    if (reply.contains("id") && reply["id"].is_string()) {
        out.request_id = reply["id"].get<std::string>();
    } else if (auto it = res->headers.find("x-request-id"); it != res->headers.end()) {
        out.request_id = it->second;
    }
    return out;
}

}  // namespace slrscreen
