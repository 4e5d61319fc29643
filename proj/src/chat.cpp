#ifdef DRIVEQA_WITH_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include "driveqa/chat.hpp"

#include <chrono>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "driveqa/errors.hpp"

namespace driveqa::qa {
namespace {

struct ParsedUrl {
    std::string scheme;
    std::string host_port;  // host[:port]
    std::string path;
};

ParsedUrl parse_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw std::invalid_argument("endpoint_url must look like http://host:port/path");
    ParsedUrl out;
    out.scheme = url.substr(0, scheme_end);
    const auto rest = url.substr(scheme_end + 3);
    const auto slash = rest.find('/');
    out.host_port = slash == std::string::npos ? rest : rest.substr(0, slash);
    out.path = slash == std::string::npos ? "/" : rest.substr(slash);
    return out;
}

}  // namespace

void to_json(njson& j, const ChatMessage& m) {
    j = njson{{"role", m.role}, {"content", m.content}};
}

void from_json(const njson& j, ChatMessage& m) {
    j.at("role").get_to(m.role);
    j.at("content").get_to(m.content);
}

void TeacherConfig::validate() const {
    if (max_retries < 0) throw std::invalid_argument("TeacherConfig: max_retries must be >= 0");
    if (!(requests_per_minute > 0.0))
        throw std::invalid_argument("TeacherConfig: requests_per_minute must be > 0");
}

struct HttpChatClient::Impl {
    TeacherConfig cfg;
    std::string base;  // scheme://host:port
    std::string path;
    std::string api_key;
    std::chrono::steady_clock::time_point next_allowed = std::chrono::steady_clock::now();
};

HttpChatClient::HttpChatClient(TeacherConfig cfg) : impl_(new Impl) {
    cfg.validate();
    const ParsedUrl url = parse_url(cfg.endpoint_url);
#ifndef DRIVEQA_WITH_OPENSSL
    if (url.scheme == "https")
        throw std::invalid_argument("built without TLS support; use an http:// endpoint");
#endif
    impl_->cfg = cfg;
    impl_->base = url.scheme + "://" + url.host_port;
    impl_->path = url.path;
    if (!cfg.api_key_env.empty()) {
        const char* key = std::getenv(cfg.api_key_env.c_str());
        if (key == nullptr)
            throw std::runtime_error("environment variable not set: " + cfg.api_key_env);
        impl_->api_key = key;
    }
}

HttpChatClient::~HttpChatClient() = default;

std::string HttpChatClient::complete(const std::vector<ChatMessage>& messages) {
    // Blocking rate limit: one request per 60/rpm seconds.
    const auto now = std::chrono::steady_clock::now();
    if (now < impl_->next_allowed) std::this_thread::sleep_until(impl_->next_allowed);
    impl_->next_allowed = std::chrono::steady_clock::now() +
                          std::chrono::milliseconds(static_cast<int>(
                              60000.0 / impl_->cfg.requests_per_minute));

    njson body;
    body["model"] = impl_->cfg.model_name;
    body["messages"] = messages;
    body["temperature"] = impl_->cfg.temperature;

    httplib::Client client(impl_->base);
    client.set_connection_timeout(std::chrono::duration<double>(impl_->cfg.timeout_s));
    client.set_read_timeout(std::chrono::duration<double>(impl_->cfg.timeout_s));
    httplib::Headers headers;
    if (!impl_->api_key.empty())
        headers.emplace("Authorization", "Bearer " + impl_->api_key);

    const auto res = client.Post(impl_->path, headers, body.dump(), "application/json");
    if (!res)
        throw TransportError("request to " + impl_->cfg.endpoint_url + " failed: " +
                             httplib::to_string(res.error()));
    if (res->status < 200 || res->status >= 300)
        throw TransportError("endpoint returned HTTP " + std::to_string(res->status));

    try {
        const njson reply = njson::parse(res->body);
        return reply.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const std::exception& e) {
        throw TransportError(std::string("unexpected chat-completion reply shape: ") + e.what());
    }
}

std::string with_retries(const TeacherConfig& cfg, const std::function<std::string()>& fn) {
    const int attempts = cfg.max_retries + 1;
    for (int attempt = 0;; ++attempt) {
        try {
            return fn();
        } catch (const TransportError&) {
            if (attempt + 1 >= attempts) throw;
        } catch (const MalformedReplyError&) {
            if (attempt + 1 >= attempts) throw;
        }
        const double delay = cfg.backoff_base_s * (1 << attempt);
        if (delay > 0.0)
            std::this_thread::sleep_for(std::chrono::duration<double>(delay));
    }
}

}  // namespace driveqa::qa
