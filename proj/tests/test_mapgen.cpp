#include <doctest.h>

#include <queue>
#include <set>

#include "sous/gateway.hpp"
#include "sous/mapgen.hpp"

using namespace sous;

namespace {

// Independent flood fill used as the reachability oracle.
std::set<Coord> oracle_reachable(const GridMap& map, Coord from) {
    std::set<Coord> seen{from};
    std::queue<Coord> q;
    q.push(from);
    while (!q.empty()) {
        Coord c = q.front();
        q.pop();
        for (Direction d : kDirections) {
            Coord n = neighbor(c, d);
            if (map.walkable(n) && !seen.count(n)) {
                seen.insert(n);
                q.push(n);
            }
        }
    }
    return seen;
}

bool station_reachable(const GridMap& map, const std::set<Coord>& reach,
                       TileKind kind) {
    for (Coord c : map.find_all(kind)) {
        for (Direction d : kDirections) {
            if (reach.count(neighbor(c, d))) return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("450 generated maps all validate") {
    auto maps = generate_maps(2024, 450);
    REQUIRE(maps.size() == 450);
    const TileKind required[] = {
        TileKind::OnionDispenser,  TileKind::TomatoDispenser,
        TileKind::SteakDispenser,  TileKind::DishDispenser,
        TileKind::CookingPot,      TileKind::Grill,
        TileKind::CuttingBoard,    TileKind::Sink,
        TileKind::Delivery,        TileKind::VisibleHazard,
        TileKind::InvisibleHazard,
    };
    for (const auto& map : maps) {
        CHECK(map.height <= kMaxMapSide);
        CHECK(map.width <= kMaxMapSide);
        auto reach = oracle_reachable(map, map.player_spawn);
        CHECK(reach.count(map.teammate_spawn));
        for (TileKind kind : required) {
            CHECK(!map.find_all(kind).empty());
            CHECK(station_reachable(map, reach, kind));
        }
        // The library flood fill agrees with the oracle.
        auto mask = reachable_from(map, map.player_spawn);
        for (int r = 0; r < map.height; ++r) {
            for (int c = 0; c < map.width; ++c) {
                CHECK(mask[r][c] == (reach.count({r, c}) > 0));
            }
        }
    }
}

TEST_CASE("map generation is deterministic in the seed") {
    auto a = generate_maps(7, 10);
    auto b = generate_maps(7, 10);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(serialize(a[i]) == serialize(b[i]));
    }
    auto c = generate_maps(8, 10);
    bool any_diff = false;
    for (size_t i = 0; i < c.size(); ++i)
        if (serialize(c[i]) != serialize(a[i])) any_diff = true;
    CHECK(any_diff);
}

TEST_CASE("serialize round-trips through parse_map") {
    auto maps = generate_maps(31, 5);
    for (const auto& map : maps) {
        MapText text = map_text_from_string(serialize(map));
        ParseResult result = parse_map(text);
        REQUIRE(std::holds_alternative<GridMap>(result));
        const GridMap& again = std::get<GridMap>(result);
        CHECK(again.height == map.height);
        CHECK(again.width == map.width);
        CHECK(again.player_spawn == map.player_spawn);
        CHECK(again.invisible_hazards == map.invisible_hazards);
        CHECK(serialize(again) == serialize(map));
    }
}

TEST_CASE("parse_map reports typed validation errors") {
    auto expect_error = [](const std::vector<std::string>& rows,
                           ValidationError::Code code) {
        MapText text{rows, MapProvenance::Handwritten, "bad"};
        ParseResult result = parse_map(text);
        REQUIRE(std::holds_alternative<ValidationError>(result));
        CHECK(std::get<ValidationError>(result).code == code);
    };

    expect_error({"###", "#X##", "###"}, ValidationError::Code::NotRectangular);
    expect_error({"##############", "#X           #", "##############"},
                 ValidationError::Code::TooLarge);
    // All stations but no sink.
    expect_error({"#T#O#N#", "B     C", "# X   #", "E  I  #", "#   H #",
                  "D  Y  G", "#######"},
                 ValidationError::Code::MissingStation);
    // Sink walled off from the player; hazards and stations otherwise intact.
    expect_error({"#T#O#N#", "B     C", "# X   #", "E  I ##", "#GH #S#",
                  "D  Y ##", "#######"},
                 ValidationError::Code::UnreachableStation);
    expect_error({"#T#O#N#", "B  ?  C", "# X   #", "E  I  S", "#   H #",
                  "D  Y  G", "#######"},
                 ValidationError::Code::UnknownSymbol);
    expect_error({"#T#O#N#", "B     C", "#     #", "E  I  S", "#   H #",
                  "D  Y  G", "#######"},
                 ValidationError::Code::MissingSpawn);
}

TEST_CASE("LLM map path validates and retries via the gateway") {
    MockGateway gateway(3);
    auto exemplar = map_text_from_string(serialize(generate_maps(9, 1)[0]));
    LlmMapResult result = llm_generate_map(gateway, {exemplar});
    REQUIRE(result.map.has_value());
    CHECK(result.map->height <= kMaxMapSide);
    CHECK(result.attempts >= 1);
}
