#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sous/map.hpp"

namespace sous {

// Map symbol key:
//   '#' counter, ' ' floor, O/T/N/D onion/tomato/steak/dish dispensers,
//   C cooking pot, G grill, B cutting board, S sink, E delivery,
//   H visible hazard, I invisible hazard, X player spawn, Y teammate spawn.
std::string map_symbol_key_json();

enum class MapProvenance : uint8_t { Procedural, LlmGenerated, Handwritten };

struct MapText {
    std::vector<std::string> rows;
    MapProvenance provenance = MapProvenance::Handwritten;
    std::string map_id;
};

struct ValidationError {
    enum class Code : uint8_t {
        NotRectangular,
        TooLarge,
        MissingStation,
        UnreachableStation,
        UnknownSymbol,
        MissingSpawn,
        HazardCount,
        GenerationExhausted,
    };
    Code code;
    std::string detail;
};

std::string to_string(ValidationError::Code c);

using ParseResult = std::variant<GridMap, ValidationError>;

// Total: any input yields a GridMap or a typed error.
ParseResult parse_map(const MapText& text);

// Convenience for file contents; tolerates a trailing "# meta:" block and
// splits on newlines.
MapText map_text_from_string(const std::string& contents,
                             MapProvenance provenance = MapProvenance::Handwritten,
                             const std::string& map_id = {});

struct GenerationConfig {
    int min_side = 7;
    int max_side = 12;
    int max_attempts_per_map = 10000;
};

// Counter-ring skeleton, rejection-sampled station placement, then the same
// validation as parse_map. Deterministic in (seed, index).
std::vector<GridMap> generate_maps(uint64_t seed, int count,
                                   const GenerationConfig& config = {});

// Flood fill from `from` over walkable tiles; returns reachable mask indexed
// [row][col]. Exposed for validation and the QA distance oracles.
std::vector<std::vector<bool>> reachable_from(const GridMap& map, Coord from);

class LlmGateway;

struct LlmMapResult {
    std::optional<GridMap> map;
    std::optional<ValidationError> error;
    int attempts = 0;
};

LlmMapResult llm_generate_map(LlmGateway& gateway,
                              const std::vector<MapText>& exemplars,
                              int max_retries = 3);

}  // namespace sous
