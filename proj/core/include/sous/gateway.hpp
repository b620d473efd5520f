#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace sous {

struct ChatMessage {
    std::string role;  // "system" | "user" | "assistant"
    std::string content;
};

struct LlmReply {
    bool ok = false;
    std::string text;
    std::string error;
};

// Provider-agnostic text-generation interface. Every request/response pair
// is appended to the audit log when one is configured.
class LlmGateway {
public:
    virtual ~LlmGateway() = default;

    LlmReply complete(const std::vector<ChatMessage>& messages);

    void set_audit_log(const std::string& path) { audit_path_ = path; }

protected:
    virtual LlmReply complete_impl(const std::vector<ChatMessage>& messages) = 0;

private:
    void audit(const std::vector<ChatMessage>& messages, const LlmReply& reply);

    std::string audit_path_;
    std::mutex audit_mutex_;
};

// Deterministic offline backend: the reply is a pure function of the prompt
// hash. It recognizes each pipeline's template by a marker phrase and emits
// a well-formed reply for it, so the whole textgen stage is reproducible
// without network access.
class MockGateway : public LlmGateway {
public:
    explicit MockGateway(uint64_t seed = 0) : seed_(seed) {}

protected:
    LlmReply complete_impl(const std::vector<ChatMessage>& messages) override;

private:
    uint64_t seed_;
};

// Test backend: replays a fixed queue of canned replies.
class ScriptedGateway : public LlmGateway {
public:
    explicit ScriptedGateway(std::vector<std::string> replies);

    size_t remaining() const { return replies_.size(); }

protected:
    LlmReply complete_impl(const std::vector<ChatMessage>& messages) override;

private:
    std::deque<std::string> replies_;
};

struct RemoteConfig {
    std::string base_url = "https://api.openai.com";
    std::string path = "/v1/chat/completions";
    std::string model = "gpt-4o";
    std::string credential_env = "SOUS_API_KEY";
    int max_retries = 3;
    int backoff_ms = 500;
    double temperature = 0.7;
};

// OpenAI-style chat-completions client with bounded retries and exponential
// backoff on transient failures.
class RemoteGateway : public LlmGateway {
public:
    explicit RemoteGateway(RemoteConfig config);

protected:
    LlmReply complete_impl(const std::vector<ChatMessage>& messages) override;

private:
    RemoteConfig config_;
};

std::unique_ptr<LlmGateway> make_gateway(const std::string& backend,
                                         uint64_t seed = 0,
                                         const RemoteConfig& remote = {});

}  // namespace sous
