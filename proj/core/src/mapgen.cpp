#include "sous/mapgen.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "sous/gateway.hpp"
#include "sous/prompts.hpp"
#include "sous/rng.hpp"

namespace sous {

std::string to_string(ValidationError::Code c) {
    using Code = ValidationError::Code;
    switch (c) {
        case Code::NotRectangular: return "not rectangular";
        case Code::TooLarge: return "too large";
        case Code::MissingStation: return "missing station";
        case Code::UnreachableStation: return "unreachable station";
        case Code::UnknownSymbol: return "unknown symbol";
        case Code::MissingSpawn: return "missing spawn";
        case Code::HazardCount: return "hazard count";
        case Code::GenerationExhausted: return "generation exhausted";
    }
    return "?";
}

std::string map_symbol_key_json() {
    return R"({"#": "counter", " ": "floor", "O": "onion dispenser", "T": "tomato dispenser", "N": "steak dispenser", "D": "dish dispenser", "C": "cooking pot", "G": "grill", "B": "cutting board", "S": "sink", "E": "delivery", "H": "visible trip hazard", "I": "invisible trip hazard", "X": "player 0 spawn", "Y": "player 1 spawn"})";
}

namespace {

std::optional<TileKind> tile_for_symbol(char c) {
    switch (c) {
        case ' ': return TileKind::Floor;
        case '#': return TileKind::Counter;
        case 'O': return TileKind::OnionDispenser;
        case 'T': return TileKind::TomatoDispenser;
        case 'N': return TileKind::SteakDispenser;
        case 'D': return TileKind::DishDispenser;
        case 'C': return TileKind::CookingPot;
        case 'G': return TileKind::Grill;
        case 'B': return TileKind::CuttingBoard;
        case 'S': return TileKind::Sink;
        case 'E': return TileKind::Delivery;
        case 'H': return TileKind::VisibleHazard;
        case 'I': return TileKind::InvisibleHazard;
        default: return std::nullopt;
    }
}

constexpr TileKind kRequiredStations[] = {
    TileKind::OnionDispenser, TileKind::TomatoDispenser,
    TileKind::SteakDispenser, TileKind::DishDispenser,
    TileKind::CookingPot,     TileKind::Grill,
    TileKind::CuttingBoard,   TileKind::Sink,
    TileKind::Delivery,
};

ValidationError err(ValidationError::Code code, std::string detail = {}) {
    return ValidationError{code, std::move(detail)};
}

}  // namespace

std::vector<std::vector<bool>> reachable_from(const GridMap& map, Coord from) {
    std::vector<std::vector<bool>> seen(map.height,
                                        std::vector<bool>(map.width, false));
    if (!map.walkable(from)) return seen;
    std::deque<Coord> queue{from};
    seen[from.row][from.col] = true;
    while (!queue.empty()) {
        Coord cur = queue.front();
        queue.pop_front();
        for (Direction d : kDirections) {
            Coord nb = neighbor(cur, d);
            if (map.walkable(nb) && !seen[nb.row][nb.col]) {
                seen[nb.row][nb.col] = true;
                queue.push_back(nb);
            }
        }
    }
    return seen;
}

MapText map_text_from_string(const std::string& contents,
                             MapProvenance provenance,
                             const std::string& map_id) {
    MapText text;
    text.provenance = provenance;
    text.map_id = map_id;
    std::istringstream in(contents);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.rfind("# meta:", 0) == 0) {
            auto pos = line.find("map_id=");
            if (pos != std::string::npos && text.map_id.empty()) {
                std::string id = line.substr(pos + 7);
                auto comma = id.find(',');
                if (comma != std::string::npos) id = id.substr(0, comma);
                text.map_id = id;
            }
            continue;
        }
        text.rows.push_back(line);
    }
    while (!text.rows.empty() && text.rows.back().empty()) text.rows.pop_back();
    return text;
}

ParseResult parse_map(const MapText& text) {
    const auto& rows = text.rows;
    if (rows.empty()) return err(ValidationError::Code::MissingSpawn, "empty map");
    size_t width = rows.front().size();
    for (const auto& row : rows) {
        if (row.size() != width)
            return err(ValidationError::Code::NotRectangular,
                       "row widths differ");
    }
    if (rows.size() > kMaxMapSide || width > kMaxMapSide)
        return err(ValidationError::Code::TooLarge,
                   std::to_string(rows.size()) + "x" + std::to_string(width));
    if (width == 0)
        return err(ValidationError::Code::NotRectangular, "zero width");

    GridMap map;
    map.height = static_cast<int>(rows.size());
    map.width = static_cast<int>(width);
    map.map_id = text.map_id;
    map.cells.assign(map.height, std::vector<Tile>(map.width));
    std::optional<Coord> player_spawn, teammate_spawn;

    for (int r = 0; r < map.height; ++r) {
        for (int c = 0; c < map.width; ++c) {
            char sym = rows[r][static_cast<size_t>(c)];
            if (sym == 'X') {
                if (player_spawn)
                    return err(ValidationError::Code::MissingSpawn,
                               "duplicate player spawn");
                player_spawn = Coord{r, c};
                map.cells[r][c].kind = TileKind::Floor;
                continue;
            }
            if (sym == 'Y') {
                if (teammate_spawn)
                    return err(ValidationError::Code::MissingSpawn,
                               "duplicate teammate spawn");
                teammate_spawn = Coord{r, c};
                map.cells[r][c].kind = TileKind::Floor;
                continue;
            }
            auto kind = tile_for_symbol(sym);
            if (!kind)
                return err(ValidationError::Code::UnknownSymbol,
                           std::string(1, sym));
            map.cells[r][c].kind = *kind;
            if (*kind == TileKind::InvisibleHazard)
                map.invisible_hazards.push_back({r, c});
        }
    }
    if (!player_spawn || !teammate_spawn)
        return err(ValidationError::Code::MissingSpawn,
                   !player_spawn ? "no X" : "no Y");
    map.player_spawn = *player_spawn;
    map.teammate_spawn = *teammate_spawn;

    if (map.find_all(TileKind::VisibleHazard).size() != 1 ||
        map.invisible_hazards.size() != 1)
        return err(ValidationError::Code::HazardCount,
                   "need exactly one visible and one invisible hazard");

    for (TileKind k : kRequiredStations) {
        if (map.find_all(k).empty())
            return err(ValidationError::Code::MissingStation, to_string(k));
    }

    auto seen = reachable_from(map, map.player_spawn);
    if (!seen[map.player_spawn.row][map.player_spawn.col])
        return err(ValidationError::Code::MissingSpawn, "spawn not walkable");
    for (TileKind k : kRequiredStations) {
        bool reachable = false;
        for (Coord pos : map.find_all(k)) {
            for (Direction d : kDirections) {
                Coord nb = neighbor(pos, d);
                if (map.in_bounds(nb) && seen[nb.row][nb.col]) reachable = true;
            }
        }
        if (!reachable)
            return err(ValidationError::Code::UnreachableStation, to_string(k));
    }
    return map;
}

std::vector<GridMap> generate_maps(uint64_t seed, int count,
                                   const GenerationConfig& config) {
    std::vector<GridMap> maps;
    maps.reserve(static_cast<size_t>(count));
    for (int index = 0; index < count; ++index) {
        SplitMix64 rng(derive_seed(seed, "mapgen", std::to_string(index)));
        bool placed = false;
        for (int attempt = 0; attempt < config.max_attempts_per_map; ++attempt) {
            int h = config.min_side +
                    static_cast<int>(rng.below(
                        static_cast<uint64_t>(config.max_side - config.min_side + 1)));
            int w = config.min_side +
                    static_cast<int>(rng.below(
                        static_cast<uint64_t>(config.max_side - config.min_side + 1)));

            std::vector<std::string> rows(static_cast<size_t>(h),
                                          std::string(static_cast<size_t>(w), ' '));
            for (int c = 0; c < w; ++c) {
                rows[0][static_cast<size_t>(c)] = '#';
                rows[static_cast<size_t>(h - 1)][static_cast<size_t>(c)] = '#';
            }
            for (int r = 0; r < h; ++r) {
                rows[static_cast<size_t>(r)][0] = '#';
                rows[static_cast<size_t>(r)][static_cast<size_t>(w - 1)] = '#';
            }

            // Station slots on the ring, corners excluded so each one faces
            // an interior tile.
            std::vector<Coord> ring;
            for (int c = 1; c < w - 1; ++c) {
                ring.push_back({0, c});
                ring.push_back({h - 1, c});
            }
            for (int r = 1; r < h - 1; ++r) {
                ring.push_back({r, 0});
                ring.push_back({r, w - 1});
            }
            const char stations[] = {'O', 'T', 'N', 'D', 'C', 'G', 'B', 'S', 'E'};
            if (ring.size() < std::size(stations)) continue;
            for (size_t i = ring.size(); i > 1; --i) {
                std::swap(ring[i - 1], ring[rng.below(i)]);
            }
            for (size_t i = 0; i < std::size(stations); ++i) {
                rows[static_cast<size_t>(ring[i].row)]
                    [static_cast<size_t>(ring[i].col)] = stations[i];
            }

            std::vector<Coord> interior;
            for (int r = 1; r < h - 1; ++r)
                for (int c = 1; c < w - 1; ++c) interior.push_back({r, c});
            for (size_t i = interior.size(); i > 1; --i) {
                std::swap(interior[i - 1], interior[rng.below(i)]);
            }
            // A few interior counters for layout variety.
            size_t n_obstacles = std::min<size_t>(interior.size() / 6,
                                                  rng.below(4));
            size_t needed = n_obstacles + 4;  // + H, I, X, Y
            if (interior.size() < needed) continue;
            size_t cursor = 0;
            for (size_t i = 0; i < n_obstacles; ++i, ++cursor) {
                rows[static_cast<size_t>(interior[cursor].row)]
                    [static_cast<size_t>(interior[cursor].col)] = '#';
            }
            const char specials[] = {'H', 'I', 'X', 'Y'};
            for (char sym : specials) {
                rows[static_cast<size_t>(interior[cursor].row)]
                    [static_cast<size_t>(interior[cursor].col)] = sym;
                ++cursor;
            }

            MapText text;
            text.rows = std::move(rows);
            text.provenance = MapProvenance::Procedural;
            text.map_id = "gen-" + hex64(derive_seed(seed, "mapid",
                                                     std::to_string(index)));
            auto result = parse_map(text);
            if (auto* map = std::get_if<GridMap>(&result)) {
                maps.push_back(std::move(*map));
                placed = true;
                break;
            }
        }
        if (!placed) {
            throw std::runtime_error("map generation exhausted at index " +
                                     std::to_string(index));
        }
    }
    return maps;
}

LlmMapResult llm_generate_map(LlmGateway& gateway,
                              const std::vector<MapText>& exemplars,
                              int max_retries) {
    LlmMapResult result;
    std::string user = "Here are a few examples of a few possible overcooked "
                       "map-layouts:\n\n";
    int n = 0;
    for (const auto& ex : exemplars) {
        user += "Map " + std::to_string(++n) + ": \n";
        for (const auto& row : ex.rows) user += row + "\n";
        user += "\n";
    }
    std::string system = render_template(
        load_prompt("map_generation_system.txt"),
        {{"map_key", map_symbol_key_json()}});

    for (int attempt = 0; attempt < max_retries; ++attempt) {
        result.attempts = attempt + 1;
        auto reply = gateway.complete({{"system", system}, {"user", user}});
        if (!reply.ok) {
            result.error = ValidationError{
                ValidationError::Code::GenerationExhausted, reply.error};
            continue;
        }
        MapText text = map_text_from_string(reply.text,
                                            MapProvenance::LlmGenerated);
        text.map_id = "llm-" + hex64(fnv1a(reply.text));
        auto parsed = parse_map(text);
        if (auto* map = std::get_if<GridMap>(&parsed)) {
            result.map = std::move(*map);
            result.error.reset();
            return result;
        }
        result.error = std::get<ValidationError>(parsed);
    }
    return result;
}

}  // namespace sous
