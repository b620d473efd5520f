#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sous/gateway.hpp"
#include "sous/qa.hpp"
#include "sous/rollout.hpp"
#include "sous/textgen.hpp"

namespace sous {

struct TrajectoryTooShort : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CountUnreachable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DanglingImageRef : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Chat-style multimodal record. Image placeholders in message content are
// "<image_N>" (1-based) and index into image_refs.
struct DatasetRecord {
    std::string id;
    std::string kind;  // image_qa | trajectory_qa | video_qa | coach |
                       // correct | defect_delineation
    std::vector<std::string> image_refs;  // relative frame paths
    std::vector<ChatMessage> messages;    // system/user; assistant == target
    std::string target;

    std::vector<std::string> defect_ids;
    std::string heuristic_id;
    std::string map_id;
    RecipeVariant variant = RecipeVariant::Original;
    std::string split;
    uint64_t seed = 0;
    bool has_reasoning = false;
};

// Frame path inside a corpus directory: <triple>/frames/NNNNNN.png.
std::string frame_ref(const TrajectoryMeta& meta, int frame_index);

// Split labels: "train", "heldout", "taskgen_alt1..3"; few-shot carving
// prefixes "fewshot_". Derived from the record's defect ids.
std::string split_for_defects(const std::vector<std::string>& defect_ids);

// target = assigned snippet; prompt = coaching instruction + trajectory
// frames downsampled to the render budget. Cycles the corpus
// deterministically until `count` records exist.
std::vector<DatasetRecord> build_coach(
    const std::vector<Trajectory>& corpus,
    const std::vector<CoachingSnippet>& snippets,
    const std::map<std::string, ReasoningTrace>& traces,
    bool include_reasoning, int count, uint64_t seed);

// references: one noise-free trajectory per (heuristic_id, variant) keyed
// "h|variant". Trajectories with < 10 steps are skipped and their triple
// keys reported via `skipped`.
std::vector<DatasetRecord> build_correct(
    const std::vector<Trajectory>& corpus,
    const std::map<std::string, Trajectory>& references, int count,
    uint64_t seed, std::vector<std::string>* skipped = nullptr);

std::string reference_key(const std::string& heuristic_id,
                          RecipeVariant variant);

// Paired-trajectory same-defect task; negatives:positives = neg_ratio:1
// exactly. `count` must be divisible by neg_ratio + 1.
std::vector<DatasetRecord> build_defect_delineation(
    const std::vector<Trajectory>& corpus, int count, uint64_t seed,
    int neg_ratio = 5);

// Converts grounding QA records (6 QA pairs each) into dataset records.
std::vector<DatasetRecord> records_from_grounding(
    const std::vector<Trajectory>& corpus,
    const std::vector<GroundingRecord>& grounding);

struct SplitManifest {
    // split name -> sorted record ids; few-shot splits carry exactly 10
    // records per new (held-out or task-gen) defect.
    std::map<std::string, std::vector<std::string>> splits;
    uint64_t content_hash = 0;
};

// Assigns splits in-place from defect metadata and carves few-shot subsets
// (10 records per non-train defect, taken from coach records).
SplitManifest make_split_manifest(std::vector<DatasetRecord>& records);

std::string record_to_json(const DatasetRecord& record);

struct ExportResult {
    std::map<std::string, uint64_t> file_hashes;  // relative path -> hash
    uint64_t manifest_hash = 0;
};

// One JSONL per (kind, split), stable id order; manifest.json with
// per-file hashes; train_interleave.jsonl mixing coach/correct/dd train
// records with equal weight. When `image_root` is nonempty every image_ref
// must exist beneath it.
ExportResult export_records(const std::vector<DatasetRecord>& records,
                            const SplitManifest& manifest,
                            const std::string& out_dir,
                            const std::string& image_root = {});

struct ScalePlan {
    int image_qa = 0;
    int trajectory_qa = 0;
    int video_qa = 0;
    int coach = 0;
    int correct = 0;
    int defect_delineation = 0;
};

// "paper" = 55,000/54,000/55,000/26,000/27,000/20,000; "desk" = 1% of that.
ScalePlan scale_plan(const std::string& profile);

}  // namespace sous
