#include "sous/datasets.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "sous/prompts.hpp"
#include "sous/render.hpp"
#include "sous/rng.hpp"

namespace fs = std::filesystem;

namespace sous {

namespace {

std::string replace_all_copy(std::string text, const std::string& needle,
                             const std::string& value) {
    size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        text.replace(pos, needle.size(), value);
        pos += value.size();
    }
    return text;
}

std::string image_token(int n) {
    return "<image_" + std::to_string(n) + ">";
}

// Renders a frame window as interleaved image placeholders and serialized
// actions, appending the frame refs to `refs`.
std::string trajectory_block(const Trajectory& traj,
                             const std::vector<int>& indices,
                             std::vector<std::string>& refs) {
    std::string out;
    for (int idx : indices) {
        refs.push_back(frame_ref(traj.meta, idx));
        out += image_token(static_cast<int>(refs.size()));
        const auto& frame = traj.frames[idx];
        if (frame.action) {
            out += " action: ";
            out += to_string(*frame.action);
        }
        out += "\n";
    }
    return out;
}

std::string padded(int value, int width) {
    std::string s = std::to_string(value);
    while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
    return s;
}

std::string reasoning_block(const ReasoningTrace& trace) {
    return "\nTrajectory analysis:\nSummary: " + trace.summary +
           "\nSuccesses: " + trace.successes +
           "\nChallenges: " + trace.challenges + "\n";
}

const Defect& defect_or_throw(const std::string& id) {
    const Defect* d = find_defect(id);
    if (!d) throw UnknownDefect("unknown defect id: " + id);
    return *d;
}

}  // namespace

std::string frame_ref(const TrajectoryMeta& meta, int frame_index) {
    return triple_key(meta.map_id, meta.heuristic_id, meta.defect_id) +
           "/frames/" + padded(frame_index, 6) + ".png";
}

std::string split_for_defects(const std::vector<std::string>& defect_ids) {
    std::string split = "train";
    for (const auto& id : defect_ids) {
        const Defect& d = defect_or_throw(id);
        if (d.split == DefectSplit::TaskGen) {
            switch (*d.taskgen_variant) {
                case RecipeVariant::Alt1: return "taskgen_alt1";
                case RecipeVariant::Alt2: return "taskgen_alt2";
                case RecipeVariant::Alt3: return "taskgen_alt3";
                default: break;
            }
        }
        if (d.split == DefectSplit::HeldOut) split = "heldout";
    }
    return split;
}

std::vector<DatasetRecord> build_coach(
    const std::vector<Trajectory>& corpus,
    const std::vector<CoachingSnippet>& snippets,
    const std::map<std::string, ReasoningTrace>& traces,
    bool include_reasoning, int count, uint64_t seed) {
    if (corpus.empty()) throw CountUnreachable("coach: empty corpus");
    std::string tpl = load_prompt("model_task_coach.txt");
    std::vector<DatasetRecord> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        const Trajectory& traj = corpus[i % corpus.size()];
        const CoachingSnippet& snippet =
            assign_coaching(traj, snippets, derive_seed(seed, "coach-snippet",
                                                        std::to_string(i)));
        DatasetRecord rec;
        rec.id = "coach-" + padded(i, 6);
        rec.kind = "coach";
        rec.defect_ids = {traj.meta.defect_id};
        rec.heuristic_id = traj.meta.heuristic_id;
        rec.map_id = traj.meta.map_id;
        rec.variant = traj.meta.variant;
        rec.seed = traj.meta.seed;
        rec.target = snippet.text;

        int frames = static_cast<int>(traj.frames.size());
        auto indices = stride_indices(frames, stride_for_budget(frames));
        std::string block = trajectory_block(traj, indices, rec.image_refs);
        std::string prompt = replace_all_copy(
            tpl, "<recipe prompt>", recipe_text(traj.meta.variant));
        prompt = replace_all_copy(prompt, "<defective_trajectory>", block);
        if (include_reasoning) {
            auto it = traces.find(triple_key(traj.meta.map_id,
                                             traj.meta.heuristic_id,
                                             traj.meta.defect_id));
            if (it == traces.end())
                throw CountUnreachable("coach: missing reasoning trace for " +
                                       traj.meta.defect_id);
            prompt += reasoning_block(it->second);
            rec.has_reasoning = true;
        }
        rec.messages = {{"system", prompt}};
        rec.messages.push_back({"assistant", rec.target});
        out.push_back(std::move(rec));
    }
    return out;
}

std::string reference_key(const std::string& heuristic_id,
                          RecipeVariant variant) {
    return heuristic_id + "|" + to_string(variant);
}

std::vector<DatasetRecord> build_correct(
    const std::vector<Trajectory>& corpus,
    const std::map<std::string, Trajectory>& references, int count,
    uint64_t seed, std::vector<std::string>* skipped) {
    (void)seed;
    std::string tpl = load_prompt("model_task_correct.txt");
    std::vector<const Trajectory*> usable;
    for (const auto& traj : corpus) {
        // Last 10 steps need 11 frames (10 actions + terminal state).
        if (static_cast<int>(traj.frames.size()) < 11) {
            if (skipped)
                skipped->push_back(triple_key(traj.meta.map_id,
                                              traj.meta.heuristic_id,
                                              traj.meta.defect_id));
            continue;
        }
        if (!references.count(
                reference_key(traj.meta.heuristic_id, traj.meta.variant)))
            throw CountUnreachable("correct: missing reference for " +
                                   traj.meta.heuristic_id);
        usable.push_back(&traj);
    }
    if (usable.empty()) throw CountUnreachable("correct: no usable trajectory");

    std::vector<DatasetRecord> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        const Trajectory& traj = *usable[i % usable.size()];
        const Trajectory& ref = references.at(
            reference_key(traj.meta.heuristic_id, traj.meta.variant));
        DatasetRecord rec;
        rec.id = "correct-" + padded(i, 6);
        rec.kind = "correct";
        rec.defect_ids = {traj.meta.defect_id};
        rec.heuristic_id = traj.meta.heuristic_id;
        rec.map_id = traj.meta.map_id;
        rec.variant = traj.meta.variant;
        rec.seed = traj.meta.seed;
        rec.target = std::string(to_string(ground_truth_correction(traj)));

        int ref_frames = static_cast<int>(ref.frames.size());
        auto ref_indices =
            stride_indices(ref_frames, stride_for_budget(ref_frames));
        std::string ref_block = trajectory_block(ref, ref_indices,
                                                 rec.image_refs);

        int frames = static_cast<int>(traj.frames.size());
        std::vector<int> tail;
        for (int idx = frames - 11; idx < frames; ++idx) tail.push_back(idx);
        std::string tail_block = trajectory_block(traj, tail, rec.image_refs);

        std::string prompt = replace_all_copy(
            tpl, "<recipe prompt>", recipe_text(traj.meta.variant));
        prompt = replace_all_copy(prompt, "<reference_trajectory>", ref_block);
        prompt = replace_all_copy(prompt, "<defective_trajectory>", tail_block);
        rec.messages = {{"system", prompt}, {"assistant", rec.target}};
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<DatasetRecord> build_defect_delineation(
    const std::vector<Trajectory>& corpus, int count, uint64_t seed,
    int neg_ratio) {
    if (count % (neg_ratio + 1) != 0)
        throw CountUnreachable(
            "defect delineation count must be divisible by neg_ratio + 1");
    int positives = count / (neg_ratio + 1);
    int negatives = count - positives;

    // Group trajectory indices by defect, within each recipe variant so a
    // pair is always drawn from one task.
    std::map<std::string, std::map<std::string, std::vector<int>>> by_variant;
    for (size_t i = 0; i < corpus.size(); ++i) {
        by_variant[to_string(corpus[i].meta.variant)]
                  [corpus[i].meta.defect_id]
                      .push_back(static_cast<int>(i));
    }
    std::vector<std::pair<std::string, std::string>> pos_groups;  // variant,defect
    std::vector<std::string> multi_defect_variants;
    for (const auto& [variant, defects] : by_variant) {
        for (const auto& [defect, idxs] : defects) {
            if (idxs.size() >= 2) pos_groups.emplace_back(variant, defect);
        }
        if (defects.size() >= 2) multi_defect_variants.push_back(variant);
    }
    if (pos_groups.empty())
        throw CorpusTooSmall("no defect has two trajectories in one variant");
    if (multi_defect_variants.empty())
        throw CorpusTooSmall("no variant has two distinct defects");

    SplitMix64 rng(derive_seed(seed, "defect-delineation"));
    std::vector<DatasetRecord> out;
    out.reserve(count);
    auto make_record = [&](int n, const Trajectory& a, const Trajectory& b,
                           bool same) {
        DatasetRecord rec;
        rec.id = "dd-" + padded(n, 6);
        rec.kind = "defect_delineation";
        rec.defect_ids = {a.meta.defect_id};
        if (!same) rec.defect_ids.push_back(b.meta.defect_id);
        rec.heuristic_id = a.meta.heuristic_id;
        rec.map_id = a.meta.map_id;
        rec.variant = a.meta.variant;
        rec.seed = a.meta.seed;
        if (same) {
            rec.target = "Yes. The defect in both trajectories is " +
                         defect_or_throw(a.meta.defect_id).description;
        } else {
            rec.target = "No. The defect in trajectory 1 is " +
                         defect_or_throw(a.meta.defect_id).description +
                         ". The defect in trajectory 2 is " +
                         defect_or_throw(b.meta.defect_id).description + ".";
        }
        std::string prompt =
            "You will see two Overcooked gameplay trajectories. Decide "
            "whether both players exhibit the same defect. Answer \"Yes. The "
            "defect in both trajectories is <defect>\" when they match, and "
            "otherwise \"No. The defect in trajectory 1 is <defect1>. The "
            "defect in trajectory 2 is <defect2>.\"\n\nTrajectory 1:\n";
        for (const Trajectory* t : {&a, &b}) {
            int frames = static_cast<int>(t->frames.size());
            auto indices = stride_indices(frames, stride_for_budget(frames));
            if (t == &b) prompt += "\nTrajectory 2:\n";
            prompt += trajectory_block(*t, indices, rec.image_refs);
        }
        rec.messages = {{"system", prompt}, {"assistant", rec.target}};
        out.push_back(std::move(rec));
    };

    for (int n = 0; n < positives; ++n) {
        const auto& [variant, defect] =
            pos_groups[rng.below(pos_groups.size())];
        const auto& idxs = by_variant[variant][defect];
        int i = static_cast<int>(rng.below(idxs.size()));
        int j = static_cast<int>(rng.below(idxs.size() - 1));
        if (j >= i) ++j;
        make_record(static_cast<int>(out.size()), corpus[idxs[i]],
                    corpus[idxs[j]], true);
    }
    for (int n = 0; n < negatives; ++n) {
        const std::string& variant =
            multi_defect_variants[rng.below(multi_defect_variants.size())];
        const auto& defects = by_variant[variant];
        std::vector<std::string> ids;
        for (const auto& [id, idxs] : defects) ids.push_back(id);
        int i = static_cast<int>(rng.below(ids.size()));
        int j = static_cast<int>(rng.below(ids.size() - 1));
        if (j >= i) ++j;
        const auto& ai = defects.at(ids[i]);
        const auto& bj = defects.at(ids[j]);
        make_record(static_cast<int>(out.size()),
                    corpus[ai[rng.below(ai.size())]],
                    corpus[bj[rng.below(bj.size())]], false);
    }
    return out;
}

std::vector<DatasetRecord> records_from_grounding(
    const std::vector<Trajectory>& corpus,
    const std::vector<GroundingRecord>& grounding) {
    std::vector<DatasetRecord> out;
    out.reserve(grounding.size());
    std::map<std::string, int> counters;
    for (const auto& g : grounding) {
        const Trajectory& traj = corpus[g.traj_index];
        DatasetRecord rec;
        rec.kind = g.kind;
        rec.id = g.kind + "-" + padded(counters[g.kind]++, 6);
        rec.defect_ids = {traj.meta.defect_id};
        rec.heuristic_id = traj.meta.heuristic_id;
        rec.map_id = traj.meta.map_id;
        rec.variant = traj.meta.variant;
        rec.seed = traj.meta.seed;

        std::string prompt;
        if (g.kind == "image_qa") {
            rec.image_refs.push_back(frame_ref(traj.meta, g.frame_index));
            prompt = image_token(1) +
                     "\nAnswer the following questions about the scene.\n";
        } else if (g.kind == "video_qa") {
            auto offsets = stride_indices(g.k, stride_for_budget(g.k));
            for (int off : offsets) {
                rec.image_refs.push_back(frame_ref(traj.meta, g.start + off));
                prompt += image_token(static_cast<int>(rec.image_refs.size()));
                prompt += "\n";
            }
            prompt += "Answer the following questions about the clip.\n";
        } else {
            prompt = "Actions taken:\n";
            for (int i = 0; i + 1 < g.k; ++i) {
                const auto& frame = traj.frames[g.start + i];
                if (frame.action) {
                    prompt += std::to_string(i + 1) + ". ";
                    prompt += to_string(*frame.action);
                    prompt += "\n";
                }
            }
            prompt += "Answer the following questions about the trajectory.\n";
        }
        std::string answers;
        for (size_t q = 0; q < g.qa.size(); ++q) {
            prompt += "Q" + std::to_string(q + 1) + ": " +
                      g.qa[q].question_text + "\n";
            answers += "A" + std::to_string(q + 1) + ": " +
                       g.qa[q].answer_text + "\n";
        }
        rec.target = answers;
        rec.messages = {{"user", prompt}, {"assistant", answers}};
        out.push_back(std::move(rec));
    }
    return out;
}

SplitManifest make_split_manifest(std::vector<DatasetRecord>& records) {
    for (auto& rec : records) rec.split = split_for_defects(rec.defect_ids);

    // Carve few-shot subsets: 10 coach records per non-train defect.
    std::map<std::string, std::vector<DatasetRecord*>> coach_by_defect;
    for (auto& rec : records) {
        if (rec.kind == "coach" && rec.defect_ids.size() == 1 &&
            rec.split != "train") {
            coach_by_defect[rec.defect_ids[0]].push_back(&rec);
        }
    }
    for (auto& [defect_id, recs] : coach_by_defect) {
        if (static_cast<int>(recs.size()) < 10)
            throw CountUnreachable("fewer than 10 coach records for defect " +
                                   defect_id);
        for (int i = 0; i < 10; ++i) {
            recs[i]->split = "fewshot_" + recs[i]->split;
        }
    }

    SplitManifest manifest;
    for (const auto& rec : records) manifest.splits[rec.split].push_back(rec.id);
    uint64_t h = fnv1a("split-manifest");
    for (auto& [split, ids] : manifest.splits) {
        std::sort(ids.begin(), ids.end());
        h = fnv1a(split, h);
        for (const auto& id : ids) h = fnv1a(id, h);
    }
    manifest.content_hash = h;
    return manifest;
}

std::string record_to_json(const DatasetRecord& record) {
    nlohmann::ordered_json j;
    j["id"] = record.id;
    j["kind"] = record.kind;
    j["images"] = record.image_refs;
    j["messages"] = nlohmann::ordered_json::array();
    for (const auto& m : record.messages) {
        j["messages"].push_back({{"role", m.role}, {"content", m.content}});
    }
    j["target"] = record.target;
    j["meta"] = {{"defect_ids", record.defect_ids},
                 {"heuristic_id", record.heuristic_id},
                 {"map_id", record.map_id},
                 {"variant", to_string(record.variant)},
                 {"split", record.split},
                 {"seed", record.seed},
                 {"has_reasoning", record.has_reasoning}};
    return j.dump();
}

ExportResult export_records(const std::vector<DatasetRecord>& records,
                            const SplitManifest& manifest,
                            const std::string& out_dir,
                            const std::string& image_root) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());

    if (!image_root.empty()) {
        for (const auto& rec : records) {
            for (const auto& ref : rec.image_refs) {
                if (!fs::exists(fs::path(image_root) / ref))
                    throw DanglingImageRef(ref);
            }
        }
    }

    std::map<std::string, std::vector<const DatasetRecord*>> by_file;
    for (const auto& rec : records) {
        by_file[rec.kind + "_" + rec.split + ".jsonl"].push_back(&rec);
    }

    ExportResult result;
    auto write_file = [&](const std::string& name, const std::string& body) {
        std::ofstream out(fs::path(out_dir) / name, std::ios::binary);
        if (!out) throw IoError("cannot write " + name);
        out << body;
        result.file_hashes[name] = fnv1a(body);
    };

    for (auto& [name, recs] : by_file) {
        std::sort(recs.begin(), recs.end(),
                  [](const DatasetRecord* a, const DatasetRecord* b) {
                      return a->id < b->id;
                  });
        std::string body;
        for (const DatasetRecord* rec : recs) {
            body += record_to_json(*rec);
            body += "\n";
        }
        write_file(name, body);
    }

    // Equal-weight interleave of the three task datasets' train records.
    std::map<std::string, std::vector<const DatasetRecord*>> tasks;
    for (const auto& rec : records) {
        if (rec.split != "train") continue;
        if (rec.kind == "coach" || rec.kind == "correct" ||
            rec.kind == "defect_delineation") {
            tasks[rec.kind].push_back(&rec);
        }
    }
    if (tasks.size() == 3) {
        for (auto& [kind, recs] : tasks) {
            std::sort(recs.begin(), recs.end(),
                      [](const DatasetRecord* a, const DatasetRecord* b) {
                          return a->id < b->id;
                      });
        }
        std::string body;
        static const char* kOrder[] = {"coach", "correct",
                                       "defect_delineation"};
        size_t n = std::min({tasks["coach"].size(), tasks["correct"].size(),
                             tasks["defect_delineation"].size()});
        for (size_t i = 0; i < n; ++i) {
            for (const char* kind : kOrder) {
                nlohmann::ordered_json j;
                j["kind"] = kind;
                j["id"] = tasks[kind][i]->id;
                body += j.dump();
                body += "\n";
            }
        }
        write_file("train_interleave.jsonl", body);
    }

    nlohmann::ordered_json mj;
    mj["splits"] = nlohmann::ordered_json::object();
    for (const auto& [split, ids] : manifest.splits) mj["splits"][split] = ids;
    mj["split_hash"] = hex64(manifest.content_hash);
    mj["files"] = nlohmann::ordered_json::object();
    uint64_t chain = fnv1a("dataset-manifest");
    for (const auto& [name, hash] : result.file_hashes) {
        mj["files"][name] = hex64(hash);
        chain = fnv1a(name, chain);
        chain = fnv1a(hex64(hash), chain);
    }
    chain = fnv1a(hex64(manifest.content_hash), chain);
    result.manifest_hash = chain;
    mj["manifest_hash"] = hex64(chain);
    std::ofstream out(fs::path(out_dir) / "manifest.json", std::ios::binary);
    if (!out) throw IoError("cannot write manifest.json");
    out << mj.dump(2) << "\n";
    return result;
}

ScalePlan scale_plan(const std::string& profile) {
    if (profile == "paper")
        return {55000, 54000, 55000, 26000, 27000, 20000};
    if (profile == "desk") return {550, 540, 550, 260, 270, 198};
    throw std::invalid_argument("unknown scale profile: " + profile);
}

}  // namespace sous
