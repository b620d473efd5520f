#include "sous/eval.hpp"

#include <algorithm>
#include <cctype>

#include <nlohmann/json.hpp>

#include "sous/action.hpp"
#include "sous/prompts.hpp"
#include "sous/render.hpp"

namespace sous {

namespace {

std::string normalized(const std::string& text) {
    std::string out;
    bool space_pending = false;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            space_pending = !out.empty();
            continue;
        }
        if (space_pending) {
            out += ' ';
            space_pending = false;
        }
        out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

std::string replace_all_copy(std::string text, const std::string& needle,
                             const std::string& value) {
    size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        text.replace(pos, needle.size(), value);
        pos += value.size();
    }
    return text;
}

std::optional<JudgeVerdict> parse_label(const std::string& reply) {
    auto pos = reply.rfind("Label:");
    if (pos == std::string::npos) return std::nullopt;
    std::string rest = reply.substr(pos + 6);
    auto yes = rest.find("Yes");
    auto no = rest.find("No");
    if (yes != std::string::npos && (no == std::string::npos || yes < no))
        return JudgeVerdict::Yes;
    if (no != std::string::npos) return JudgeVerdict::No;
    return std::nullopt;
}

std::string defect_list_text() {
    std::string out;
    for (const auto& d : defect_registry()) {
        out += "- " + d.description + "\n";
    }
    return out;
}

}  // namespace

CorrectionScore score_corrections(
    const std::vector<std::pair<std::string, std::string>>& predictions,
    const std::vector<DatasetRecord>& truth) {
    std::map<std::string, const DatasetRecord*> by_id;
    for (const auto& rec : truth) by_id[rec.id] = &rec;

    CorrectionScore score;
    for (const auto& [id, prediction] : predictions) {
        auto it = by_id.find(id);
        if (it == by_id.end()) throw UnknownRecordId("unknown record id: " + id);
        const DatasetRecord& rec = *it->second;
        bool hit = false;
        if (auto action = parse_action(normalized(prediction))) {
            hit = normalized(prediction) == normalized(rec.target) &&
                  to_string(*action) == normalized(rec.target);
        }
        ++score.total;
        const std::string defect =
            rec.defect_ids.empty() ? std::string("?") : rec.defect_ids[0];
        auto& [c, t] = score.per_defect[defect];
        ++t;
        if (hit) {
            ++score.correct;
            ++c;
        }
    }
    score.accuracy =
        score.total ? static_cast<double>(score.correct) / score.total : 0.0;
    return score;
}

std::vector<ChatMessage> judge_messages(const std::string& generated,
                                        const std::string& defect_description,
                                        const std::string& reference) {
    std::string user = load_prompt("judge_user.txt");
    user = replace_all_copy(user, "<|generated_answer|>", generated);
    user = replace_all_copy(user, "<|answer|>", defect_description);
    user = replace_all_copy(user, "<|reference_answer|>", reference);
    return {{"system", load_prompt("judge_system.txt")}, {"user", user}};
}

JudgeVerdict judge_coaching(LlmGateway& gateway, const std::string& generated,
                            const Defect& defect,
                            const CoachingSnippet& reference) {
    auto messages = judge_messages(generated, defect.description,
                                   reference.text);
    for (int attempt = 0; attempt < 2; ++attempt) {
        LlmReply reply = gateway.complete(messages);
        if (!reply.ok) throw LlmUnavailable(reply.error);
        if (auto verdict = parse_label(reply.text)) return *verdict;
    }
    throw ParseError("judge reply missing a parsable Label line");
}

CriticResult behavior_critic(LlmGateway& gateway, const Trajectory& traj,
                             CriticTask task, bool with_summaries,
                             const ReasoningTrace* trace,
                             const Trajectory* reference) {
    std::string name =
        task == CriticTask::Coach
            ? (with_summaries ? "behavior_critic_coach_reasoning.txt"
                              : "behavior_critic_coach.txt")
            : (with_summaries ? "behavior_critic_correct_reasoning.txt"
                              : "behavior_critic_correct.txt");
    std::string tpl = load_prompt(name);

    std::string examples =
        task == CriticTask::Coach
            ? "{\"analysis\": \"<your analysis of the clip>\", \"feedback\": "
              "\"<your corrective feedback>\"}"
            : "{\"analysis\": \"<your analysis of the clip>\", \"action\": "
              "\"<one of the 8 actions>\"}";

    int frames = static_cast<int>(traj.frames.size());
    auto indices = stride_indices(frames, stride_for_budget(frames));
    std::string extra;
    for (size_t i = 0; i < indices.size(); ++i) {
        extra += "<image_" + std::to_string(i + 1) + ">\n";
    }
    if (task == CriticTask::Correct && reference) {
        extra += "\nReference trajectory actions:\n";
        for (const auto& frame : reference->frames) {
            if (frame.action) {
                extra += std::string(to_string(*frame.action)) + "\n";
            }
        }
    }
    if (with_summaries && trace) {
        extra += "\nTrajectory analysis:\nSummary: " + trace->summary +
                 "\nSuccesses: " + trace->successes +
                 "\nChallenges: " + trace->challenges + "\n";
    }

    std::string prompt = render_template(
        tpl, {{"examples", examples},
              {"defects", defect_list_text()},
              {"overcooked_rules", rules_text(traj.meta.variant)},
              {"extra", extra}});

    LlmReply reply = gateway.complete({{"user", prompt}});
    if (!reply.ok) throw LlmUnavailable(reply.error);

    CriticResult result;
    result.prompt = prompt;
    result.raw_reply = reply.text;
    result.images_used = static_cast<int>(indices.size());

    auto j = nlohmann::json::parse(reply.text, nullptr, false);
    if (task == CriticTask::Coach) {
        if (j.is_discarded() || !j.contains("feedback"))
            throw ParseError("critic coaching reply missing 'feedback'");
        result.feedback = j["feedback"].get<std::string>();
    } else {
        if (j.is_discarded() || !j.contains("action"))
            throw ParseError("critic correction reply missing 'action'");
        result.action = parse_action(j["action"].get<std::string>());
        if (!result.action)
            throw ParseError("critic correction reply has an unknown action");
    }
    return result;
}

}  // namespace sous
