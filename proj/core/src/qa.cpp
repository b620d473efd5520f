#include "sous/qa.hpp"

#include <algorithm>
#include <cmath>

#include "sous/path.hpp"

namespace sous {

const std::vector<QaQuestion>& image_questions() {
    static const std::vector<QaQuestion> bank = {
        {"iq01", "What is the closest dispenser to the player?", false},
        {"iq02", "Is there a chopped onion on the cutting board?", false},
        {"iq03", "What is the position of the player on the grid?", false},
        {"iq04",
         "In how many steps can the player reach the delivery location? "
         "(Assume that the player cannot walk through hazards if they are "
         "holding something)",
         false},
        {"iq05", "Is there soup cooking in any pot?", false},
        {"iq06", "What is/are the position(s) of the [arg] dispenser on the "
                 "grid?",
         true},
        {"iq07", "Are there any items on the counter?", false},
        {"iq08", "Is steak cooking on the grill?", false},
        {"iq09", "Is there cooked steak on the grill?", false},
        {"iq10", "Is there cooked soup in any pot?", false},
        {"iq11", "What is the player holding?", false},
        {"iq12", "How many tomatoes are in the pot(s)?", false},
        {"iq13", "What is the position of the [arg] trip hazard?", true},
    };
    return bank;
}

const std::vector<QaQuestion>& trajectory_questions() {
    static const std::vector<QaQuestion> bank = {
        {"tq01", "What item(s) did the player pickup?", false},
        {"tq02", "Did the player clean a dish?", false},
        {"tq03", "Did the player cut an onion?", false},
        {"tq04", "Did the player trip on a hazard?", false},
        {"tq05", "Did the player place an ingredient in a cooking range?",
         false},
        {"tq06", "Is the player in a different position from their initial "
                 "position?",
         false},
        {"tq07", "Did the player move in a straight line?", false},
        {"tq08", "Did the player successfully deliver food?", false},
        {"tq09", "Is the player closer to the delivery location?", false},
        {"tq10", "Did any food finish cooking?", false},
    };
    return bank;
}

namespace {

std::string yes_no(bool b) { return b ? "Yes" : "No"; }

const QaQuestion& find_question(const std::vector<QaQuestion>& bank,
                                const std::string& qid) {
    for (const auto& q : bank) {
        if (q.id == qid) return q;
    }
    throw std::invalid_argument("unknown question id: " + qid);
}

std::string instantiate(const QaQuestion& q, const std::string& arg) {
    std::string text = q.text;
    auto pos = text.find("[arg]");
    if (pos != std::string::npos) text.replace(pos, 5, arg);
    return text;
}

const StationState* station_at(const WorldState& s, Coord c) {
    auto it = s.stations.find(c);
    return it == s.stations.end() ? nullptr : &it->second;
}

bool any_range_status(const WorldState& s, TileKind kind, CookStatus status) {
    for (Coord c : s.map.find_all(kind)) {
        const StationState* st = station_at(s, c);
        if (st && st->status == status) return true;
    }
    return false;
}

std::string join_positions(const std::vector<Coord>& coords) {
    std::string out;
    for (const Coord& c : coords) {
        if (!out.empty()) out += ", ";
        out += to_string(c);
    }
    return out.empty() ? "none" : out;
}

TileKind dispenser_for_arg(const std::string& arg) {
    if (arg == "tomato") return TileKind::TomatoDispenser;
    if (arg == "onion") return TileKind::OnionDispenser;
    if (arg == "steak") return TileKind::SteakDispenser;
    if (arg == "dish") return TileKind::DishDispenser;
    throw std::invalid_argument("unknown dispenser arg: " + arg);
}

}  // namespace

int distance_to_station(const WorldState& state, TileKind goal_kind,
                        bool respect_holding) {
    std::vector<Coord> goals = state.map.find_all(goal_kind);
    if (goals.empty()) return -1;
    PathQuery q;
    q.from = state.player.pos;
    q.facing = state.player.facing;
    q.holding = respect_holding && state.player.held.has_value();
    auto adjacent_to_goal = [&](Coord c) {
        for (const Coord& g : goals) {
            if (manhattan(c, g) == 1) return true;
        }
        return false;
    };
    auto moves = shortest_moves(state.map, q, adjacent_to_goal);
    return moves ? *moves : -1;
}

QaPair answer_image_question(const WorldState& state, const std::string& qid,
                             const std::string& arg) {
    const QaQuestion& q = find_question(image_questions(), qid);
    QaPair pair{q.id, instantiate(q, arg), "", arg};
    const GridMap& map = state.map;

    if (qid == "iq01") {
        // Walking distance per dispenser tile; ties resolved row-major.
        PathQuery pq;
        pq.from = state.player.pos;
        pq.facing = state.player.facing;
        pq.holding = false;
        int best = -1;
        TileKind best_kind = TileKind::TomatoDispenser;
        for (int r = 0; r < map.height; ++r) {
            for (int c = 0; c < map.width; ++c) {
                Coord here{r, c};
                if (!is_dispenser(map.at(here))) continue;
                auto plan = plan_path(map, pq, here);
                if (!plan) continue;
                if (best < 0 || plan->moves < best) {
                    best = plan->moves;
                    best_kind = map.at(here);
                }
            }
        }
        if (best < 0) throw UnanswerableOnState("no reachable dispenser");
        pair.answer_text = std::string(to_string(best_kind));
    } else if (qid == "iq02") {
        bool found = false;
        for (Coord c : map.find_all(TileKind::CuttingBoard)) {
            const StationState* st = station_at(state, c);
            if (st && st->item && st->item->kind == ItemKind::ChoppedOnion)
                found = true;
        }
        pair.answer_text = yes_no(found);
    } else if (qid == "iq03") {
        pair.answer_text = to_string(state.player.pos);
    } else if (qid == "iq04") {
        int d = distance_to_station(state, TileKind::Delivery, true);
        pair.answer_text = d < 0 ? "unreachable" : std::to_string(d);
    } else if (qid == "iq05") {
        pair.answer_text =
            yes_no(any_range_status(state, TileKind::CookingPot,
                                    CookStatus::Cooking));
    } else if (qid == "iq06") {
        pair.answer_text = join_positions(map.find_all(dispenser_for_arg(arg)));
    } else if (qid == "iq07") {
        bool found = false;
        for (Coord c : map.find_all(TileKind::Counter)) {
            const StationState* st = station_at(state, c);
            if (st && st->item) found = true;
        }
        pair.answer_text = yes_no(found);
    } else if (qid == "iq08") {
        pair.answer_text = yes_no(
            any_range_status(state, TileKind::Grill, CookStatus::Cooking));
    } else if (qid == "iq09") {
        pair.answer_text = yes_no(
            any_range_status(state, TileKind::Grill, CookStatus::Cooked));
    } else if (qid == "iq10") {
        pair.answer_text = yes_no(
            any_range_status(state, TileKind::CookingPot, CookStatus::Cooked));
    } else if (qid == "iq11") {
        pair.answer_text =
            state.player.held ? item_label(*state.player.held) : "nothing";
    } else if (qid == "iq12") {
        int n = 0;
        for (Coord c : map.find_all(TileKind::CookingPot)) {
            const StationState* st = station_at(state, c);
            if (!st) continue;
            n += static_cast<int>(std::count(st->contents.begin(),
                                             st->contents.end(),
                                             ItemKind::Tomato));
        }
        pair.answer_text = std::to_string(n);
    } else if (qid == "iq13") {
        TileKind kind = arg == "visible" ? TileKind::VisibleHazard
                                         : TileKind::InvisibleHazard;
        if (arg != "visible" && arg != "invisible") {
            throw std::invalid_argument("unknown hazard arg: " + arg);
        }
        auto all = map.find_all(kind);
        if (all.empty()) throw UnanswerableOnState("no such hazard");
        pair.answer_text = to_string(all.front());
    } else {
        throw std::invalid_argument("unhandled question id: " + qid);
    }
    return pair;
}

EventList SubTrajectory::events_in_window() const {
    EventList out;
    int64_t lo = start;
    int64_t hi = start + k - 1;  // exclusive: actions at ticks [lo, hi)
    for (const Event& e : traj->events) {
        if (e.tick >= lo && e.tick < hi) out.push_back(e);
    }
    return out;
}

QaPair answer_trajectory_question(const SubTrajectory& sub,
                                  const std::string& qid) {
    const QaQuestion& q = find_question(trajectory_questions(), qid);
    QaPair pair{q.id, q.text, "", ""};
    EventList events = sub.events_in_window();
    auto any_event = [&](EventKind kind) {
        return std::any_of(events.begin(), events.end(),
                           [&](const Event& e) { return e.kind == kind; });
    };

    if (qid == "tq01") {
        std::string items;
        for (const Event& e : events) {
            if (e.kind != EventKind::PickedUp) continue;
            if (!items.empty()) items += ", ";
            items += e.item;
        }
        pair.answer_text = items.empty() ? "nothing" : items;
    } else if (qid == "tq02") {
        pair.answer_text = yes_no(any_event(EventKind::Washed));
    } else if (qid == "tq03") {
        bool cut = std::any_of(events.begin(), events.end(), [](const Event& e) {
            return e.kind == EventKind::Chopped && e.item == "chopped onion";
        });
        pair.answer_text = yes_no(cut);
    } else if (qid == "tq04") {
        pair.answer_text = yes_no(any_event(EventKind::Tripped));
    } else if (qid == "tq05") {
        bool placed = std::any_of(events.begin(), events.end(),
                                  [](const Event& e) {
            return e.kind == EventKind::Placed &&
                   (e.station == TileKind::CookingPot ||
                    e.station == TileKind::Grill);
        });
        pair.answer_text = yes_no(placed);
    } else if (qid == "tq06") {
        pair.answer_text = yes_no(!(sub.frame(0).state.player.pos ==
                                    sub.frame(sub.k - 1).state.player.pos));
    } else if (qid == "tq07") {
        // Straight line: one shared axis and monotone along the other.
        bool same_row = true, same_col = true;
        bool inc_row = true, dec_row = true, inc_col = true, dec_col = true;
        for (int i = 1; i < sub.k; ++i) {
            Coord prev = sub.frame(i - 1).state.player.pos;
            Coord cur = sub.frame(i).state.player.pos;
            if (cur.row != prev.row) same_row = false;
            if (cur.col != prev.col) same_col = false;
            if (cur.row < prev.row) inc_row = false;
            if (cur.row > prev.row) dec_row = false;
            if (cur.col < prev.col) inc_col = false;
            if (cur.col > prev.col) dec_col = false;
        }
        bool straight = (same_row && (inc_col || dec_col)) ||
                        (same_col && (inc_row || dec_row));
        pair.answer_text = yes_no(straight);
    } else if (qid == "tq08") {
        pair.answer_text = yes_no(any_event(EventKind::Delivered));
    } else if (qid == "tq09") {
        int before = distance_to_station(sub.frame(0).state,
                                         TileKind::Delivery, false);
        int after = distance_to_station(sub.frame(sub.k - 1).state,
                                        TileKind::Delivery, false);
        pair.answer_text = yes_no(after >= 0 && before >= 0 && after < before);
    } else if (qid == "tq10") {
        pair.answer_text = yes_no(any_event(EventKind::CookingFinished));
    } else {
        throw std::invalid_argument("unhandled question id: " + qid);
    }
    return pair;
}

int sample_k(SplitMix64& rng) {
    int k = static_cast<int>(std::lround(15.0 + 2.0 * rng.normal()));
    return std::clamp(k, 5, 30);
}

namespace {

std::vector<int> pick_distinct(SplitMix64& rng, int bank_size, int n) {
    std::vector<int> idx(bank_size);
    for (int i = 0; i < bank_size; ++i) idx[i] = i;
    for (int i = 0; i < n; ++i) {
        int j = i + static_cast<int>(rng.below(bank_size - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(n);
    return idx;
}

std::string image_arg(SplitMix64& rng, const std::string& qid) {
    if (qid == "iq06") {
        static const char* kinds[] = {"tomato", "onion", "steak", "dish"};
        return kinds[rng.below(4)];
    }
    if (qid == "iq13") {
        return rng.below(2) == 0 ? "visible" : "invisible";
    }
    return {};
}

}  // namespace

std::vector<GroundingRecord> build_grounding_datasets(
    const std::vector<Trajectory>& corpus, const GroundingCounts& counts,
    uint64_t seed) {
    if (corpus.empty() &&
        (counts.image > 0 || counts.trajectory > 0 || counts.video > 0)) {
        throw CorpusTooSmall("grounding: empty corpus");
    }
    std::vector<GroundingRecord> out;
    out.reserve(static_cast<size_t>(counts.image) + counts.trajectory +
                counts.video);

    SplitMix64 rng(derive_seed(seed, "grounding"));
    for (int i = 0; i < counts.image; ++i) {
        GroundingRecord rec;
        rec.kind = "image_qa";
        rec.traj_index = static_cast<int>(rng.below(corpus.size()));
        const Trajectory& traj = corpus[rec.traj_index];
        rec.frame_index = static_cast<int>(rng.below(traj.frames.size()));
        for (int qi : pick_distinct(rng, 13, 6)) {
            const QaQuestion& q = image_questions()[qi];
            std::string arg = image_arg(rng, q.id);
            rec.qa.push_back(answer_image_question(
                traj.frames[rec.frame_index].state, q.id, arg));
        }
        out.push_back(std::move(rec));
    }

    auto build_slice = [&](const char* kind) {
        GroundingRecord rec;
        rec.kind = kind;
        rec.traj_index = static_cast<int>(rng.below(corpus.size()));
        const Trajectory& traj = corpus[rec.traj_index];
        int frames = static_cast<int>(traj.frames.size());
        if (frames < 5) throw CorpusTooSmall("grounding: trajectory too short");
        rec.k = std::min(sample_k(rng), frames);
        rec.start = static_cast<int>(rng.below(frames - rec.k + 1));
        SubTrajectory sub{&traj, rec.start, rec.k};
        for (int qi : pick_distinct(rng, 10, 6)) {
            rec.qa.push_back(
                answer_trajectory_question(sub, trajectory_questions()[qi].id));
        }
        return rec;
    };
    for (int i = 0; i < counts.trajectory; ++i)
        out.push_back(build_slice("trajectory_qa"));
    for (int i = 0; i < counts.video; ++i)
        out.push_back(build_slice("video_qa"));
    return out;
}

}  // namespace sous
