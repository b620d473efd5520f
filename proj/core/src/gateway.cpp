#include "sous/gateway.hpp"

#include <chrono>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "sous/action.hpp"
#include "sous/rng.hpp"

#ifdef SOUS_WITH_HTTP
#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#endif

namespace sous {

LlmReply LlmGateway::complete(const std::vector<ChatMessage>& messages) {
    LlmReply reply = complete_impl(messages);
    audit(messages, reply);
    return reply;
}

void LlmGateway::audit(const std::vector<ChatMessage>& messages,
                       const LlmReply& reply) {
    if (audit_path_.empty()) return;
    nlohmann::ordered_json j;
    j["request"] = nlohmann::json::array();
    for (const auto& m : messages) {
        j["request"].push_back({{"role", m.role}, {"content", m.content}});
    }
    j["ok"] = reply.ok;
    j["response"] = reply.ok ? reply.text : reply.error;
    std::lock_guard<std::mutex> lock(audit_mutex_);
    std::ofstream out(audit_path_, std::ios::app);
    out << j.dump() << "\n";
}

namespace {

std::string joined(const std::vector<ChatMessage>& messages) {
    std::string all;
    for (const auto& m : messages) {
        all += m.role;
        all += ":\n";
        all += m.content;
        all += "\n";
    }
    return all;
}

bool contains(const std::string& haystack, const char* needle) {
    return haystack.find(needle) != std::string::npos;
}

// Extracts the text following `label` up to end of line.
std::string after_label(const std::string& text, const std::string& label) {
    // The last occurrence: system templates may contain the same label as a
    // placeholder example, the user message carries the real value.
    auto pos = text.rfind(label);
    if (pos == std::string::npos) return {};
    pos += label.size();
    auto end = text.find('\n', pos);
    std::string out = text.substr(pos, end == std::string::npos ? std::string::npos
                                                                : end - pos);
    while (!out.empty() && (out.front() == ' ' || out.front() == '\t'))
        out.erase(out.begin());
    while (!out.empty() && (out.back() == ' ' || out.back() == '\r'))
        out.pop_back();
    return out;
}

std::string mock_map_text() {
    return
        "##T##O###\n"
        "#       N\n"
        "B X     #\n"
        "#   H   C\n"
        "S       #\n"
        "#   I   G\n"
        "D Y     #\n"
        "#       E\n"
        "#########\n";
}

std::string mock_coaching_reply(uint64_t h) {
    static const char* kLeads[] = {
        "Focus on the station your defect involves and follow the recipe steps in order.",
        "Check the game state before each interaction so your next step actually advances the recipe.",
        "Match your actions to what the recipe needs next instead of repeating the same mistake.",
        "Watch the station's state closely and only interact when the rules allow it.",
        "Plan each trip around the kitchen so every interaction moves the dish forward.",
    };
    std::string out;
    for (int i = 0; i < 5; ++i) {
        out += "Correction" + std::to_string(i + 1) + ": " +
               kLeads[(h + static_cast<uint64_t>(i)) % 5] + "\n";
    }
    return out;
}

std::string mock_augment_reply(const std::string& prompt) {
    // Echo the provided corrections; the directive's style change is not
    // meaningful for a deterministic mock, the meaning must stay intact.
    std::string out;
    for (int i = 1; i <= 5; ++i) {
        std::string text =
            after_label(prompt, "Correction" + std::to_string(i) + ":");
        out += "Augmented Correction" + std::to_string(i) + ": " + text + "\n";
    }
    return out;
}

std::string mock_reasoning_reply(uint64_t h) {
    SplitMix64 rng(h);
    auto conf = [&]() {
        return 0.5 + 0.5 * rng.uniform();
    };
    nlohmann::ordered_json j;
    j["summary"] =
        "The player worked through the kitchen stations attempting to "
        "prepare and deliver the recipe.";
    j["successes"] =
        "The player picked up ingredients and made progress at the stations "
        "named in the event list.";
    j["challenges"] =
        "Some interactions failed or were repeated, slowing the player's "
        "progress toward a delivery.";
    j["verification"] = {
        {"summary", {{"valid", true}, {"confidence", conf()}}},
        {"successes", {{"valid", true}, {"confidence", conf()}}},
        {"challenges", {{"valid", true}, {"confidence", conf()}}},
    };
    return j.dump();
}

std::string mock_judge_reply(const std::string& prompt) {
    // Test decision rule: generated advice passes iff it equals the
    // reference snippet.
    std::string generated = after_label(prompt, "Generated Advice:");
    std::string reference = after_label(prompt, "Reference Coaching Advice:");
    bool yes = !generated.empty() && generated == reference;
    std::string think =
        yes ? "The generated advice matches the reference for this defect."
            : "The generated advice differs from the reference for this defect.";
    return "Think: " + think + "\nLabel: [" + (yes ? "Yes" : "No") + "]";
}

std::string mock_critic_reply(const std::string& prompt, uint64_t h) {
    if (contains(prompt, "choose from one of the following 8 actions")) {
        Action a = kAllActions[h % kAllActions.size()];
        nlohmann::ordered_json j;
        j["analysis"] = "Mock analysis of the downsampled trajectory.";
        j["action"] = std::string(to_string(a));
        return j.dump();
    }
    nlohmann::ordered_json j;
    j["analysis"] = "Mock analysis of the downsampled trajectory.";
    j["feedback"] =
        "Review the recipe steps and use each station for its intended "
        "purpose.";
    return j.dump();
}

}  // namespace

LlmReply MockGateway::complete_impl(const std::vector<ChatMessage>& messages) {
    std::string prompt = joined(messages);
    uint64_t h = fnv1a(prompt, 0xcbf29ce484222325ULL ^ seed_);
    LlmReply reply;
    reply.ok = true;
    if (contains(prompt, "create new overcooked maps")) {
        reply.text = mock_map_text();
    } else if (contains(prompt, "five different potential corrections")) {
        reply.text = mock_coaching_reply(h);
    } else if (contains(prompt, "## Directive")) {
        reply.text = mock_augment_reply(prompt);
    } else if (contains(prompt, "Generated Advice:")) {
        reply.text = mock_judge_reply(prompt);
    } else if (contains(prompt, "adequately addresses")) {
        reply.text = "Yes";
    } else if (contains(prompt, "structured summary of an Overcooked gameplay "
                                "trajectory")) {
        reply.text = mock_reasoning_reply(h);
    } else if (contains(prompt, "**Task:**")) {
        reply.text = mock_critic_reply(prompt, h);
    } else {
        reply.text = "OK";
    }
    return reply;
}

ScriptedGateway::ScriptedGateway(std::vector<std::string> replies)
    : replies_(replies.begin(), replies.end()) {}

LlmReply ScriptedGateway::complete_impl(const std::vector<ChatMessage>&) {
    LlmReply reply;
    if (replies_.empty()) {
        reply.error = "scripted gateway exhausted";
        return reply;
    }
    reply.ok = true;
    reply.text = replies_.front();
    replies_.pop_front();
    return reply;
}

RemoteGateway::RemoteGateway(RemoteConfig config) : config_(std::move(config)) {}

LlmReply RemoteGateway::complete_impl(const std::vector<ChatMessage>& messages) {
    LlmReply reply;
#ifndef SOUS_WITH_HTTP
    (void)messages;
    reply.error = "remote gateway not built with HTTP support";
    return reply;
#else
    const char* key = std::getenv(config_.credential_env.c_str());
    if (!key || !*key) {
        reply.error = "credential env var " + config_.credential_env + " unset";
        return reply;
    }
    nlohmann::json body;
    body["model"] = config_.model;
    body["temperature"] = config_.temperature;
    body["messages"] = nlohmann::json::array();
    for (const auto& m : messages) {
        body["messages"].push_back({{"role", m.role}, {"content", m.content}});
    }
    httplib::Client client(config_.base_url);
    client.set_connection_timeout(30);
    client.set_read_timeout(120);
    httplib::Headers headers = {
        {"Authorization", std::string("Bearer ") + key}};
    int backoff = config_.backoff_ms;
    for (int attempt = 0; attempt < config_.max_retries; ++attempt) {
        auto res = client.Post(config_.path, headers, body.dump(),
                               "application/json");
        if (res && res->status == 200) {
            auto j = nlohmann::json::parse(res->body, nullptr, false);
            if (!j.is_discarded() && j.contains("choices") &&
                !j["choices"].empty()) {
                reply.ok = true;
                reply.text =
                    j["choices"][0]["message"]["content"].get<std::string>();
                return reply;
            }
            reply.error = "malformed completion response";
            return reply;
        }
        reply.error = res ? "http status " + std::to_string(res->status)
                          : "connection failed";
        bool transient = !res || res->status == 429 || res->status >= 500;
        if (!transient) return reply;
        std::this_thread::sleep_for(std::chrono::milliseconds(backoff));
        backoff *= 2;
    }
    return reply;
#endif
}

std::unique_ptr<LlmGateway> make_gateway(const std::string& backend,
                                         uint64_t seed,
                                         const RemoteConfig& remote) {
    if (backend == "remote") return std::make_unique<RemoteGateway>(remote);
    return std::make_unique<MockGateway>(seed);
}

}  // namespace sous
