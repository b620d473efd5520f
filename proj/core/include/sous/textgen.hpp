#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sous/defect.hpp"
#include "sous/event.hpp"
#include "sous/gateway.hpp"
#include "sous/recipe.hpp"
#include "sous/rollout.hpp"

namespace sous {

struct LlmUnavailable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientSurvivors : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SchemaViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AllAttemptsInvalid : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyPool : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SnippetStage : uint8_t { Raw, Augmented };

struct CoachingSnippet {
    std::string text;  // at most two sentences
    std::string defect_id;
    std::string persona;  // empty for Raw / the no-defect pool
    SnippetStage stage = SnippetStage::Raw;
    int votes_passed = 0;  // 0..5; retained snippets have >= 4
};

struct PersonaSet {
    std::vector<std::string> directives;
};

// urgency, frustration, encouragement, brevity.
PersonaSet default_personas();

int sentence_count(const std::string& text);

// Fixed pool of affirmations used when defect == "no-defect"; the seeded
// generation pipeline only applies to real defects.
const std::vector<std::string>& no_defect_pool();

// Seed prompt (5 corrections) -> one augmentation call per persona ->
// 5-vote ensemble validation; keeps candidates with >= 4 Yes votes and at
// most two sentences. Throws LlmUnavailable / ParseError /
// InsufficientSurvivors.
std::vector<CoachingSnippet> generate_coaching(
    LlmGateway& gateway, const Defect& defect, int n_seeds = 5,
    const PersonaSet& personas = default_personas());

struct FieldVerification {
    bool valid = false;
    double confidence = 0.0;
};

struct ReasoningTrace {
    std::string summary;
    std::string successes;
    std::string challenges;
    FieldVerification v_summary;
    FieldVerification v_successes;
    FieldVerification v_challenges;
    int attempt_index = 0;  // 0-based attempt that produced this trace

    double mean_confidence() const {
        return (v_summary.confidence + v_successes.confidence +
                v_challenges.confidence) /
               3.0;
    }
};

// Three attempts against the reasoning prompt; best mean confidence wins.
// Attempts with any field marked invalid are rejected. Throws
// LlmUnavailable / SchemaViolation / AllAttemptsInvalid.
ReasoningTrace generate_reasoning(LlmGateway& gateway, const EventList& events,
                                  RecipeVariant variant);

// Seeded-uniform pick among the snippets matching the trajectory's defect.
// Throws EmptyPool when no snippet matches.
const CoachingSnippet& assign_coaching(const Trajectory& traj,
                                       const std::vector<CoachingSnippet>& pool,
                                       uint64_t seed);

}  // namespace sous
