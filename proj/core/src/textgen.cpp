#include "sous/textgen.hpp"

#include <algorithm>
#include <cctype>

#include <nlohmann/json.hpp>

#include "sous/prompts.hpp"
#include "sous/rng.hpp"

namespace sous {

namespace {

std::string trimmed(std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.pop_back();
    return s;
}

// Extracts "<label>: text" values in order; returns empty vector on a
// malformed reply.
std::vector<std::string> parse_labeled(const std::string& reply,
                                       const std::string& label, int count) {
    std::vector<std::string> out;
    for (int i = 1; i <= count; ++i) {
        std::string key = label + std::to_string(i) + ":";
        auto pos = reply.find(key);
        if (pos == std::string::npos) return {};
        pos += key.size();
        auto end = reply.find('\n', pos);
        std::string text = reply.substr(
            pos, end == std::string::npos ? std::string::npos : end - pos);
        text = trimmed(text);
        if (text.empty()) return {};
        out.push_back(text);
    }
    return out;
}

std::string require(LlmGateway& gateway,
                    const std::vector<ChatMessage>& messages) {
    LlmReply reply = gateway.complete(messages);
    if (!reply.ok) throw LlmUnavailable(reply.error);
    return reply.text;
}

bool vote_is_yes(const std::string& reply) {
    std::string t = trimmed(reply);
    return t.size() >= 3 && (t[0] == 'Y' || t[0] == 'y') &&
           (t[1] == 'e' || t[1] == 'E') && (t[2] == 's' || t[2] == 'S');
}

int validate_votes(LlmGateway& gateway, const Defect& defect,
                   const std::string& correction) {
    std::string tpl = load_prompt("coaching_validator.txt");
    std::string prompt = render_template(
        tpl, {{"defect", defect.description}, {"correction", correction}});
    int yes = 0;
    for (int v = 0; v < 5; ++v) {
        if (vote_is_yes(require(gateway, {{"user", prompt}}))) ++yes;
    }
    return yes;
}

FieldVerification parse_verification(const nlohmann::json& v) {
    FieldVerification out;
    if (!v.is_object() || !v.contains("valid") || !v.contains("confidence"))
        throw SchemaViolation("verification entry missing valid/confidence");
    out.valid = v.at("valid").get<bool>();
    out.confidence = v.at("confidence").get<double>();
    if (out.confidence < 0.0 || out.confidence > 1.0)
        throw SchemaViolation("confidence outside [0, 1]");
    return out;
}

ReasoningTrace parse_trace(const std::string& reply) {
    auto j = nlohmann::json::parse(reply, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw SchemaViolation("reasoning reply is not a JSON object");
    for (const char* field : {"summary", "successes", "challenges",
                              "verification"}) {
        if (!j.contains(field))
            throw SchemaViolation(std::string("missing field: ") + field);
    }
    ReasoningTrace trace;
    trace.summary = j.at("summary").get<std::string>();
    trace.successes = j.at("successes").get<std::string>();
    trace.challenges = j.at("challenges").get<std::string>();
    const auto& v = j.at("verification");
    for (const char* field : {"summary", "successes", "challenges"}) {
        if (!v.contains(field))
            throw SchemaViolation(std::string("missing verification: ") + field);
    }
    trace.v_summary = parse_verification(v.at("summary"));
    trace.v_successes = parse_verification(v.at("successes"));
    trace.v_challenges = parse_verification(v.at("challenges"));
    return trace;
}

constexpr const char* kFormatInstructions =
    "Respond with a JSON object containing exactly these keys: 'summary' (a "
    "concise overview of the trajectory), 'successes' (what the player "
    "accomplished), 'challenges' (what went wrong or slowed the player "
    "down), and 'verification' (an object with one entry per field above, "
    "each holding 'valid' and 'confidence').";

}  // namespace

PersonaSet default_personas() {
    return PersonaSet{{"make the correction convey more urgency",
                       "make the correction convey mild frustration",
                       "make the correction more encouraging",
                       "make the correction as brief as possible"}};
}

int sentence_count(const std::string& text) {
    int count = 0;
    bool pending = false;
    for (char c : text) {
        if (c == '.' || c == '!' || c == '?') {
            if (pending) {
                ++count;
                pending = false;
            }
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            pending = true;
        }
    }
    if (pending) ++count;
    return count;
}

const std::vector<std::string>& no_defect_pool() {
    static const std::vector<std::string> pool = {
        "Your strategy looks sound; keep serving dishes promptly.",
        "Nice work — your routine covers every station the recipe needs.",
        "No issues spotted; keep cycling ingredients to the ranges and "
        "delivering finished dishes.",
        "You are playing cleanly; keep an eye on cook timers and keep the "
        "dishes moving.",
        "Solid play; continue prepping ahead so a dish is always close to "
        "ready.",
    };
    return pool;
}

std::vector<CoachingSnippet> generate_coaching(LlmGateway& gateway,
                                               const Defect& defect,
                                               int n_seeds,
                                               const PersonaSet& personas) {
    if (defect.id == "no-defect") {
        std::vector<CoachingSnippet> out;
        for (const auto& text : no_defect_pool()) {
            out.push_back({text, defect.id, "", SnippetStage::Raw, 5});
        }
        return out;
    }

    std::string rules = rules_text(variant_for(defect));
    std::string seed_system = render_template(
        load_prompt("coaching_seed_system.txt"), {{"rules", rules}});
    std::string seed_user = render_template(
        load_prompt("coaching_seed_user.txt"), {{"defect", defect.description}});

    std::string reply =
        require(gateway, {{"system", seed_system}, {"user", seed_user}});
    std::vector<std::string> raw = parse_labeled(reply, "Correction", n_seeds);
    if (raw.empty())
        throw ParseError("seed reply not in 'Correction1: ...' format");

    std::string aug_system = render_template(
        load_prompt("coaching_augment_system.txt"), {{"rules", rules}});
    std::string aug_tpl = load_prompt("coaching_augment_user.txt");

    std::vector<CoachingSnippet> candidates;
    for (const auto& persona : personas.directives) {
        std::map<std::string, std::string> slots = {
            {"defect", defect.description}, {"directive", persona}};
        for (int i = 0; i < n_seeds; ++i) {
            slots["correction" + std::to_string(i + 1)] = raw[i];
        }
        std::string aug_reply =
            require(gateway, {{"system", aug_system},
                              {"user", render_template(aug_tpl, slots)}});
        std::vector<std::string> augmented =
            parse_labeled(aug_reply, "Augmented Correction", n_seeds);
        if (augmented.empty())
            throw ParseError(
                "augment reply not in 'Augmented Correction1: ...' format");
        for (const auto& text : augmented) {
            candidates.push_back(
                {text, defect.id, persona, SnippetStage::Augmented, 0});
        }
    }

    std::vector<CoachingSnippet> retained;
    for (auto& candidate : candidates) {
        if (sentence_count(candidate.text) > 2) continue;
        candidate.votes_passed = validate_votes(gateway, defect, candidate.text);
        if (candidate.votes_passed >= 4) retained.push_back(candidate);
    }
    if (retained.empty())
        throw InsufficientSurvivors("no snippet survived ensemble validation");
    return retained;
}

ReasoningTrace generate_reasoning(LlmGateway& gateway, const EventList& events,
                                  RecipeVariant variant) {
    if (events.empty())
        throw std::invalid_argument("generate_reasoning: empty event log");
    std::string event_lines;
    for (const auto& e : events) {
        event_lines += describe(e);
        event_lines += "\n";
    }
    std::string prompt = render_template(
        load_prompt("reasoning.txt"),
        {{"overcooked_rules", rules_text(variant)},
         {"format_instructions", kFormatInstructions},
         {"events", event_lines}});

    std::vector<ReasoningTrace> valid;
    for (int attempt = 0; attempt < 3; ++attempt) {
        ReasoningTrace trace = parse_trace(require(gateway, {{"user", prompt}}));
        trace.attempt_index = attempt;
        if (trace.v_summary.valid && trace.v_successes.valid &&
            trace.v_challenges.valid) {
            valid.push_back(trace);
        }
    }
    if (valid.empty())
        throw AllAttemptsInvalid("all reasoning attempts were marked invalid");
    return *std::max_element(valid.begin(), valid.end(),
                             [](const ReasoningTrace& a,
                                const ReasoningTrace& b) {
                                 return a.mean_confidence() <
                                        b.mean_confidence();
                             });
}

const CoachingSnippet& assign_coaching(const Trajectory& traj,
                                       const std::vector<CoachingSnippet>& pool,
                                       uint64_t seed) {
    std::vector<const CoachingSnippet*> matching;
    for (const auto& s : pool) {
        if (s.defect_id == traj.meta.defect_id) matching.push_back(&s);
    }
    if (matching.empty())
        throw EmptyPool("no coaching snippet for defect " +
                        traj.meta.defect_id);
    SplitMix64 rng(derive_seed(seed, "assign", traj.meta.map_id,
                               traj.meta.heuristic_id, traj.meta.defect_id));
    return *matching[rng.below(matching.size())];
}

}  // namespace sous
