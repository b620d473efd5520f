#include "sous/path.hpp"

#include <deque>
#include <map>

namespace sous {

Action move_action_toward(Direction d) {
    switch (d) {
        case Direction::North: return Action::MoveForward;
        case Direction::South: return Action::MoveBackward;
        case Direction::West: return Action::MoveLeft;
        case Direction::East: return Action::MoveRight;
    }
    return Action::NoAction;
}

bool tile_blocked(const GridMap& map, const PathQuery& query, Coord c) {
    if (!map.walkable(c)) return true;
    if (query.blocked_agent && *query.blocked_agent == c) return true;
    if (!query.holding) return false;
    TileKind kind = map.at(c);
    auto near_hazard = [&]() {
        for (Direction d : kDirections) {
            Coord nb = neighbor(c, d);
            if (!map.in_bounds(nb)) continue;
            TileKind nk = map.at(nb);
            if (nk == TileKind::VisibleHazard || nk == TileKind::InvisibleHazard)
                return true;
        }
        return false;
    };
    switch (query.policy) {
        case HazardPolicy::Avoid:
            return kind == TileKind::VisibleHazard ||
                   kind == TileKind::InvisibleHazard;
        case HazardPolicy::IgnoreVisible:
            return kind == TileKind::InvisibleHazard;
        case HazardPolicy::IgnoreInvisible:
            return kind == TileKind::VisibleHazard;
        case HazardPolicy::OverAvoid:
            return kind == TileKind::VisibleHazard ||
                   kind == TileKind::InvisibleHazard || near_hazard();
    }
    return false;
}

namespace {

struct Search {
    std::vector<std::vector<int>> dist;
    std::vector<std::vector<Coord>> prev;
};

Search bfs(const GridMap& map, const PathQuery& query) {
    Search s;
    s.dist.assign(map.height, std::vector<int>(map.width, -1));
    s.prev.assign(map.height, std::vector<Coord>(map.width, Coord{-1, -1}));
    if (!map.walkable(query.from)) return s;
    std::deque<Coord> queue{query.from};
    s.dist[query.from.row][query.from.col] = 0;
    while (!queue.empty()) {
        Coord cur = queue.front();
        queue.pop_front();
        for (Direction d : kDirections) {
            Coord nb = neighbor(cur, d);
            if (!map.in_bounds(nb)) continue;
            if (s.dist[nb.row][nb.col] != -1) continue;
            if (tile_blocked(map, query, nb)) continue;
            s.dist[nb.row][nb.col] = s.dist[cur.row][cur.col] + 1;
            s.prev[nb.row][nb.col] = cur;
            queue.push_back(nb);
        }
    }
    return s;
}

void append_turns(std::vector<Action>& actions, Direction from, Direction to) {
    int diff = (static_cast<int>(to) - static_cast<int>(from) + 4) % 4;
    if (diff == 1) {
        actions.push_back(Action::TurnRight);
    } else if (diff == 2) {
        actions.push_back(Action::TurnRight);
        actions.push_back(Action::TurnRight);
    } else if (diff == 3) {
        actions.push_back(Action::TurnLeft);
    }
}

}  // namespace

std::optional<PathPlan> plan_path(const GridMap& map, const PathQuery& query,
                                  Coord station) {
    // Candidate standing tiles adjacent to the station, in (N,E,S,W) order.
    Search search = bfs(map, query);
    Coord best{-1, -1};
    int best_dist = -1;
    for (Direction d : kDirections) {
        Coord stand = neighbor(station, d);
        if (!map.in_bounds(stand)) continue;
        int dist = search.dist[stand.row][stand.col];
        if (dist < 0) continue;
        if (best_dist < 0 || dist < best_dist) {
            best_dist = dist;
            best = stand;
        }
    }
    if (best_dist < 0) return std::nullopt;

    std::vector<Coord> tiles;
    for (Coord c = best; !(c == query.from); c = search.prev[c.row][c.col]) {
        tiles.push_back(c);
    }

    PathPlan plan;
    plan.moves = static_cast<int>(tiles.size());
    Coord cur = query.from;
    for (auto it = tiles.rbegin(); it != tiles.rend(); ++it) {
        plan.actions.push_back(move_action_toward(direction_between(cur, *it)));
        cur = *it;
    }
    append_turns(plan.actions, query.facing, direction_between(best, station));
    return plan;
}

std::optional<int> shortest_moves(const GridMap& map, const PathQuery& query,
                                  const std::function<bool(Coord)>& goal) {
    if (goal(query.from)) return 0;
    Search search = bfs(map, query);
    std::optional<int> best;
    for (int r = 0; r < map.height; ++r) {
        for (int c = 0; c < map.width; ++c) {
            Coord here{r, c};
            int dist = search.dist[r][c];
            if (dist < 0 || !goal(here)) continue;
            if (!best || dist < *best) best = dist;
        }
    }
    return best;
}

}  // namespace sous
