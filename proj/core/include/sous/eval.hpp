#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sous/datasets.hpp"
#include "sous/gateway.hpp"
#include "sous/textgen.hpp"

namespace sous {

struct UnknownRecordId : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Normalizes case/whitespace and matches against the 8 canonical action
// strings; anything else counts as wrong.
struct CorrectionScore {
    double accuracy = 0.0;
    int total = 0;
    int correct = 0;
    std::map<std::string, std::pair<int, int>> per_defect;  // correct, total
};

CorrectionScore score_corrections(
    const std::vector<std::pair<std::string, std::string>>& predictions,
    const std::vector<DatasetRecord>& truth);

enum class JudgeVerdict : uint8_t { Yes, No };

// Renders the judge prompt (system + user templates) for a snapshot test.
std::vector<ChatMessage> judge_messages(const std::string& generated,
                                        const std::string& defect_description,
                                        const std::string& reference);

// Parses the "Label: [Yes/No]" line; malformed replies are retried once,
// then ParseError.
JudgeVerdict judge_coaching(LlmGateway& gateway, const std::string& generated,
                            const Defect& defect,
                            const CoachingSnippet& reference);

enum class CriticTask : uint8_t { Coach, Correct };

struct CriticResult {
    std::string prompt;      // rendered prompt (audit/debug)
    std::string raw_reply;
    std::string feedback;    // coaching text, when task == Coach
    std::optional<Action> action;  // parsed action, when task == Correct
    int images_used = 0;
};

// GPT-4o-style baseline: downsampled trajectory frames (<= 15 images),
// variant rules, and -- for coaching -- the full defect list. With
// summaries, the reasoning trace is appended.
CriticResult behavior_critic(LlmGateway& gateway, const Trajectory& traj,
                             CriticTask task, bool with_summaries,
                             const ReasoningTrace* trace = nullptr,
                             const Trajectory* reference = nullptr);

}  // namespace sous
