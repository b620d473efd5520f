#include "sous/render.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sous/prompts.hpp"

namespace sous {

Rgb Palette::at(const std::string& key) const {
    auto it = colors.find(key);
    if (it == colors.end()) {
        throw std::runtime_error("palette: missing color '" + key + "'");
    }
    return it->second;
}

Palette Palette::load(const std::string& path) {
    auto parsed = nlohmann::json::parse(read_text_file(path));
    Palette p;
    for (auto& [key, value] : parsed.items()) {
        p.colors[key] = Rgb{value.at(0).get<uint8_t>(),
                            value.at(1).get<uint8_t>(),
                            value.at(2).get<uint8_t>()};
    }
    return p;
}

const Palette& default_palette() {
    static const Palette p = Palette::load(data_dir() + "/palette.json");
    return p;
}

namespace {

constexpr int T = kTilePixels;

// 5x7 station glyphs, scaled 3x when drawn.
const char* glyph_rows(char letter) {
    switch (letter) {
        case 'T': return "11111 00100 00100 00100 00100 00100 00100";
        case 'O': return "01110 10001 10001 10001 10001 10001 01110";
        case 'N': return "10001 11001 11001 10101 10011 10011 10001";
        case 'D': return "11110 10001 10001 10001 10001 10001 11110";
        case 'C': return "01110 10001 10000 10000 10000 10001 01110";
        case 'G': return "01110 10001 10000 10111 10001 10001 01111";
        case 'B': return "11110 10001 11110 10001 10001 10001 11110";
        case 'S': return "01111 10000 10000 01110 00001 00001 11110";
        case 'E': return "11111 10000 11110 10000 10000 10000 11111";
        case 'H': return "10001 10001 11111 10001 10001 10001 10001";
    }
    return nullptr;
}

struct TileStyle {
    const char* color_key;
    char glyph;  // 0 = none
};

TileStyle style_for(TileKind k) {
    switch (k) {
        case TileKind::Floor: return {"floor", 0};
        case TileKind::Counter: return {"counter", 0};
        case TileKind::OnionDispenser: return {"onion_dispenser", 'O'};
        case TileKind::TomatoDispenser: return {"tomato_dispenser", 'T'};
        case TileKind::SteakDispenser: return {"steak_dispenser", 'N'};
        case TileKind::DishDispenser: return {"dish_dispenser", 'D'};
        case TileKind::CookingPot: return {"cooking_pot", 'C'};
        case TileKind::Grill: return {"grill", 'G'};
        case TileKind::CuttingBoard: return {"cutting_board", 'B'};
        case TileKind::Sink: return {"sink", 'S'};
        case TileKind::Delivery: return {"delivery", 'E'};
        case TileKind::VisibleHazard: return {"visible_hazard", 'H'};
        // Indistinguishable from plain floor by design.
        case TileKind::InvisibleHazard: return {"floor", 0};
    }
    return {"floor", 0};
}

const char* item_color_key(ItemKind k) {
    switch (k) {
        case ItemKind::Tomato: return "item_tomato";
        case ItemKind::Onion: return "item_onion";
        case ItemKind::Steak: return "item_steak";
        case ItemKind::DirtyDish: return "item_dirty_dish";
        case ItemKind::CleanDish: return "item_clean_dish";
        case ItemKind::ChoppedOnion: return "item_chopped_onion";
        case ItemKind::ChoppedSteak: return "item_chopped_steak";
        case ItemKind::GrilledSteak: return "item_grilled_steak";
        case ItemKind::Soup: return "item_soup";
        case ItemKind::ComboDish: return "item_combo_dish";
    }
    return "item_tomato";
}

void fill_tile(Image& img, Coord tile, Rgb c) {
    int x0 = tile.col * T;
    int y0 = tile.row * T;
    for (int y = 0; y < T; ++y) {
        for (int x = 0; x < T; ++x) img.set(x0 + x, y0 + y, c);
    }
}

void draw_glyph(Image& img, Coord tile, char letter, Rgb c) {
    const char* rows = glyph_rows(letter);
    if (!rows) return;
    int x0 = tile.col * T + 8;
    int y0 = tile.row * T + 5;
    for (int r = 0; r < 7; ++r) {
        for (int col = 0; col < 5; ++col) {
            if (rows[r * 6 + col] != '1') continue;
            for (int dy = 0; dy < 3; ++dy) {
                for (int dx = 0; dx < 3; ++dx) {
                    img.set(x0 + col * 3 + dx, y0 + r * 3 + dy, c);
                }
            }
        }
    }
}

void draw_disc(Image& img, int cx, int cy, int radius, Rgb c) {
    for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
            if (dx * dx + dy * dy > radius * radius) continue;
            int x = cx + dx;
            int y = cy + dy;
            if (x < 0 || y < 0 || x >= img.width || y >= img.height) continue;
            img.set(x, y, c);
        }
    }
}

// Clockwise pie from 12 o'clock covering `fraction` of the disc.
void draw_pie(Image& img, int cx, int cy, int radius, double fraction, Rgb c) {
    if (fraction <= 0.0) return;
    for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
            if (dx * dx + dy * dy > radius * radius) continue;
            double angle = std::atan2(static_cast<double>(dx),
                                      static_cast<double>(-dy));
            if (angle < 0) angle += 2.0 * 3.14159265358979323846;
            if (angle / (2.0 * 3.14159265358979323846) <= fraction) {
                img.set(cx + dx, cy + dy, c);
            }
        }
    }
}

void draw_item_marker(Image& img, const Palette& theme, int cx, int cy,
                      const Item& item, int radius) {
    if (item.plated) {
        draw_disc(img, cx, cy, radius + 3, theme.at("plate"));
    }
    draw_disc(img, cx, cy, radius, theme.at(item_color_key(item.kind)));
}

void draw_agent(Image& img, const Palette& theme, const PlayerState& agent,
                const char* body_key) {
    int cx = agent.pos.col * T + T / 2;
    int cy = agent.pos.row * T + T / 2;
    draw_disc(img, cx, cy, 13, theme.at(body_key));

    // Facing wedge: a 3x9 bar from the center to the faced edge.
    Rgb wedge = theme.at("facing");
    int dx = 0, dy = 0;
    switch (agent.facing) {
        case Direction::North: dy = -1; break;
        case Direction::South: dy = 1; break;
        case Direction::West: dx = -1; break;
        case Direction::East: dx = 1; break;
    }
    for (int step = 4; step <= 14; ++step) {
        int px = cx + dx * step;
        int py = cy + dy * step;
        for (int a = -1; a <= 1; ++a) {
            int x = px + (dy != 0 ? a : 0);
            int y = py + (dx != 0 ? a : 0);
            if (x < 0 || y < 0 || x >= img.width || y >= img.height) continue;
            img.set(x, y, wedge);
        }
    }
    if (agent.held) {
        draw_item_marker(img, theme, cx + dx * 7, cy + dy * 7, *agent.held, 4);
    }
}

int cook_total_ticks(TileKind k) {
    return k == TileKind::Grill ? kSteakCookTicks : kSoupCookTicks;
}

}  // namespace

Image render_frame(const WorldState& state, const Palette& theme) {
    const GridMap& map = state.map;
    Image img(map.width * T, map.height * T);

    for (int r = 0; r < map.height; ++r) {
        for (int c = 0; c < map.width; ++c) {
            Coord here{r, c};
            TileStyle style = style_for(map.at(here));
            fill_tile(img, here, theme.at(style.color_key));
            if (style.glyph) draw_glyph(img, here, style.glyph, theme.at("glyph"));
        }
    }

    for (const auto& [pos, st] : state.stations) {
        int x0 = pos.col * T;
        int y0 = pos.row * T;
        if (st.item) {
            draw_item_marker(img, theme, x0 + 9, y0 + 9, *st.item, 5);
        }
        // Pot ingredient tally along the tile's top edge.
        for (size_t i = 0; i < st.contents.size(); ++i) {
            Rgb c = theme.at(item_color_key(st.contents[i]));
            int bx = x0 + 2 + static_cast<int>(i) * 6;
            for (int dy = 0; dy < 4; ++dy) {
                for (int dx = 0; dx < 4; ++dx) img.set(bx + dx, y0 + 2 + dy, c);
            }
        }
        TileKind k = map.at(pos);
        if (k == TileKind::CookingPot || k == TileKind::Grill) {
            int cx = x0 + T - 9;
            int cy = y0 + T - 9;
            if (st.status == CookStatus::Cooking) {
                double total = cook_total_ticks(k);
                double frac = (total - st.timer) / total;
                draw_disc(img, cx, cy, 7, theme.at("progress_back"));
                draw_pie(img, cx, cy, 7, frac, theme.at("progress"));
            } else if (st.status == CookStatus::Cooked) {
                draw_disc(img, cx, cy, 7, theme.at("progress_done"));
            }
        }
    }

    if (state.teammate) draw_agent(img, theme, *state.teammate, "teammate");
    draw_agent(img, theme, state.player, "player");
    return img;
}

std::vector<int> stride_indices(int frame_count, int stride) {
    std::vector<int> out;
    if (frame_count <= 0) return out;
    if (stride < 1) stride = 1;
    for (int i = 0; i < frame_count; i += stride) out.push_back(i);
    if (out.back() != frame_count - 1) out.push_back(frame_count - 1);
    return out;
}

int stride_for_budget(int frame_count, int budget) {
    if (budget < 2) budget = 2;
    int stride = 1;
    while (static_cast<int>(stride_indices(frame_count, stride).size()) > budget) {
        ++stride;
    }
    return stride;
}

}  // namespace sous
