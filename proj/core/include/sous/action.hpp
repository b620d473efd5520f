#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace sous {

// The full action vocabulary. Serialized strings are the lowercase phrases
// the assistive prompts use; they must never change.
enum class Action : uint8_t {
    MoveForward,
    MoveBackward,
    MoveLeft,
    MoveRight,
    TurnLeft,
    TurnRight,
    Interact,
    NoAction,
};

inline constexpr int kActionCount = 8;

inline constexpr std::array<Action, kActionCount> kAllActions = {
    Action::MoveForward, Action::MoveBackward, Action::MoveLeft,
    Action::MoveRight,   Action::TurnLeft,     Action::TurnRight,
    Action::Interact,    Action::NoAction,
};

std::string_view to_string(Action a);

// Case/whitespace-insensitive parse; nullopt for anything outside the 8.
std::optional<Action> parse_action(std::string_view text);

}  // namespace sous
