#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sous/rng.hpp"
#include "sous/rollout.hpp"

namespace sous {

struct QaQuestion {
    std::string id;
    std::string text;   // template; [arg] slot where applicable
    bool takes_arg = false;
};

// The 13 image questions and the 10 trajectory/video questions, in bank order.
const std::vector<QaQuestion>& image_questions();
const std::vector<QaQuestion>& trajectory_questions();

struct QaPair {
    std::string question_id;
    std::string question_text;  // instantiated (arg substituted)
    std::string answer_text;
    std::string arg;
};

struct UnanswerableOnState : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CorpusTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Canonical answer formats: "Yes"/"No", digits, "(row, col)", comma lists.
QaPair answer_image_question(const WorldState& state, const std::string& qid,
                             const std::string& arg = {});

// A contiguous slice of frames [start, start+k). Actions/events covered are
// the ticks [start, start+k-1).
struct SubTrajectory {
    const Trajectory* traj = nullptr;
    int start = 0;
    int k = 0;

    const Frame& frame(int i) const { return traj->frames[start + i]; }
    EventList events_in_window() const;
};

QaPair answer_trajectory_question(const SubTrajectory& sub,
                                  const std::string& qid);

// K ~ round(N(15, 2)) clamped to [5, 30].
int sample_k(SplitMix64& rng);

struct GroundingRecord {
    std::string kind;  // image_qa | trajectory_qa | video_qa
    int traj_index = 0;
    int frame_index = 0;  // image_qa
    int start = 0;        // trajectory/video slices
    int k = 0;
    std::vector<QaPair> qa;  // exactly 6, distinct question ids
};

struct GroundingCounts {
    int image = 0;
    int trajectory = 0;
    int video = 0;
};

// Deterministic in (corpus order, seed). Throws CorpusTooSmall when a
// requested count cannot be met.
std::vector<GroundingRecord> build_grounding_datasets(
    const std::vector<Trajectory>& corpus, const GroundingCounts& counts,
    uint64_t seed);

// Move-count distance from the player to a tile adjacent to `goal_kind`.
// Hazard tiles block when `holding`; -1 when unreachable.
int distance_to_station(const WorldState& state, TileKind goal_kind,
                        bool respect_holding);

}  // namespace sous
