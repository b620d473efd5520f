#include "sous/event.hpp"

#include <nlohmann/json.hpp>

namespace sous {

std::string to_string(EventKind k) {
    switch (k) {
        case EventKind::PickedUp: return "picked_up";
        case EventKind::Placed: return "placed";
        case EventKind::CookingStarted: return "cooking_started";
        case EventKind::CookingFinished: return "cooking_finished";
        case EventKind::Chopped: return "chopped";
        case EventKind::Washed: return "washed";
        case EventKind::Delivered: return "delivered";
        case EventKind::Tripped: return "tripped";
        case EventKind::DroppedOnHazard: return "dropped_on_hazard";
        case EventKind::InteractFailed: return "interact_failed";
        case EventKind::Blocked: return "blocked";
    }
    return "?";
}

std::string to_jsonl(const Event& e) {
    nlohmann::ordered_json j;
    j["tick"] = e.tick;
    j["kind"] = to_string(e.kind);
    if (!e.item.empty()) j["item"] = e.item;
    if (e.station) j["station"] = to_string(*e.station);
    if (e.pos) j["pos"] = {e.pos->row, e.pos->col};
    if (!e.detail.empty()) j["detail"] = e.detail;
    return j.dump();
}

std::string describe(const Event& e) {
    std::string line = "tick " + std::to_string(e.tick) + ": ";
    switch (e.kind) {
        case EventKind::PickedUp:
            line += "picked up " + e.item;
            if (e.station) line += " from the " + to_string(*e.station);
            break;
        case EventKind::Placed:
            line += "placed " + e.item;
            if (e.station) line += " on the " + to_string(*e.station);
            break;
        case EventKind::CookingStarted:
            line += e.item + " started cooking";
            if (e.station) line += " on the " + to_string(*e.station);
            break;
        case EventKind::CookingFinished:
            line += e.item + " finished cooking";
            if (e.station) line += " on the " + to_string(*e.station);
            break;
        case EventKind::Chopped:
            line += "chopped " + e.item + " on the cutting board";
            break;
        case EventKind::Washed:
            line += "washed a dish at the sink";
            break;
        case EventKind::Delivered:
            line += "delivered " + e.item;
            break;
        case EventKind::Tripped:
            line += "tripped on a hazard";
            if (e.pos) line += " at " + to_string(*e.pos);
            break;
        case EventKind::DroppedOnHazard:
            line += "dropped " + e.item + " on a hazard tile";
            break;
        case EventKind::InteractFailed:
            line += "interaction failed";
            if (!e.detail.empty()) line += " (" + e.detail + ")";
            break;
        case EventKind::Blocked:
            line += "movement blocked";
            break;
    }
    return line;
}

}  // namespace sous
