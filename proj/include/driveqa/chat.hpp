#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "driveqa/json.hpp"

namespace driveqa::qa {

struct ChatMessage {
    std::string role;
    std::string content;
    bool operator==(const ChatMessage&) const = default;
};

void to_json(njson& j, const ChatMessage& m);
void from_json(const njson& j, ChatMessage& m);

/// Connection settings for a remote chat-completion endpoint (teacher,
/// grader or driver agent alike).
struct TeacherConfig {
    std::string endpoint_url;  // e.g. http://host:port/v1/chat/completions
    std::string model_name = "gpt-3.5-turbo";
    std::string api_key_env = "DRIVE_LLM_API_KEY";
    double temperature = 0.2;
    int max_retries = 3;            // attempts = max_retries + 1
    double requests_per_minute = 60.0;
    double timeout_s = 60.0;
    double backoff_base_s = 1.0;  // exponential: base, 2x, 4x, ...

    void validate() const;
};

/// Single-attempt chat transport. Implementations must be safe to call
/// repeatedly; retrying is layered on top via with_retries().
class ChatBackend {
public:
    virtual ~ChatBackend() = default;
    /// Returns the assistant message content. Throws TransportError.
    virtual std::string complete(const std::vector<ChatMessage>& messages) = 0;
};

/// POSTs the chat-completion wire format {model, messages, temperature} with
/// a bearer token taken from the environment variable named in the config.
/// Blocking rate limit: successive requests are spaced 60/rpm seconds apart.
class HttpChatClient : public ChatBackend {
public:
    explicit HttpChatClient(TeacherConfig cfg);
    ~HttpChatClient() override;
    std::string complete(const std::vector<ChatMessage>& messages) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Runs fn up to cfg.max_retries + 1 times, sleeping backoff_base_s * 2^k
/// between attempts. Retries on TransportError and MalformedReplyError;
/// anything else propagates immediately.
std::string with_retries(const TeacherConfig& cfg, const std::function<std::string()>& fn);

}  // namespace driveqa::qa
