#pragma once

#include <map>
#include <string>
#include <vector>

#include "sous/png.hpp"
#include "sous/world.hpp"

namespace sous {

inline constexpr int kTilePixels = 32;

// Flat-color theme loaded from the checked-in palette file. Every tile kind
// maps to a distinct color, except the invisible hazard which deliberately
// reuses the floor color.
struct Palette {
    std::map<std::string, Rgb> colors;

    Rgb at(const std::string& key) const;
    static Palette load(const std::string& path);
};

// The default checked-in theme (data/palette.json), loaded once.
const Palette& default_palette();

Image render_frame(const WorldState& state, const Palette& theme);

// Frame indices at 0, stride, 2*stride, ... with the final frame always
// included.
std::vector<int> stride_indices(int frame_count, int stride);

// Smallest stride whose sampled-frame count fits the image budget.
int stride_for_budget(int frame_count, int budget = 15);

}  // namespace sous
