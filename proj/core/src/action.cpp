#include "sous/action.hpp"

#include <algorithm>
#include <cctype>

namespace sous {

std::string_view to_string(Action a) {
    switch (a) {
        case Action::MoveForward: return "move forward";
        case Action::MoveBackward: return "move backward";
        case Action::MoveLeft: return "move left";
        case Action::MoveRight: return "move right";
        case Action::TurnLeft: return "turn left";
        case Action::TurnRight: return "turn right";
        case Action::Interact: return "interact";
        case Action::NoAction: return "no action";
    }
    return "no action";
}

std::optional<Action> parse_action(std::string_view text) {
    std::string norm;
    norm.reserve(text.size());
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!norm.empty() && norm.back() != ' ') norm.push_back(' ');
        } else {
            norm.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    while (!norm.empty() && norm.back() == ' ') norm.pop_back();
    for (Action a : kAllActions) {
        if (norm == to_string(a)) return a;
    }
    return std::nullopt;
}

}  // namespace sous
