#include "pursuit/game.hpp"

#include "pursuit/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace pursuit {

GameSpec::GameSpec(Graph graph, int pursuer_count, PursuerRule pursuer_rule,
                   EvaderRule evader_rule)
    : graph_(std::move(graph)),
      oracle_(graph_),
      pursuer_count_(pursuer_count),
      pursuer_rule_(pursuer_rule),
      evader_rule_(evader_rule) {
    if (graph_.vertex_count() < 2)
        throw std::invalid_argument("game: trivial graph rejected");
    if (!graph_.is_connected())
        throw std::invalid_argument("game: graph must be connected");
    if (pursuer_count_ < 1)
        throw std::invalid_argument("game: needs at least one pursuer");
}

GameState initial_state() {
    return GameState{};
}

GameState make_state(std::vector<Vertex> pursuers, Vertex evader, Phase phase) {
    std::sort(pursuers.begin(), pursuers.end());
    return GameState{std::move(pursuers), evader, phase};
}

bool state_is_captured(const std::vector<Vertex>& sorted_pursuers, Vertex evader) {
    return evader != kNotPlaced &&
           std::binary_search(sorted_pursuers.begin(), sorted_pursuers.end(), evader);
}

namespace {

std::vector<Vertex> closed_neighborhood(const Graph& g, Vertex v) {
    std::vector<Vertex> out = g.neighbors(v);
    out.insert(std::lower_bound(out.begin(), out.end(), v), v);
    return out;
}

void require_phase(const GameState& state, Phase expected, const char* op) {
    if (state.phase != expected)
        throw std::invalid_argument(std::string(op) + ": wrong phase");
}

GameState canonical_after_pursuer_move(std::vector<Vertex> tuple, Vertex evader) {
    std::sort(tuple.begin(), tuple.end());
    Phase phase =
        state_is_captured(tuple, evader) ? Phase::Captured : Phase::EvaderToMove;
    return GameState{std::move(tuple), evader, phase};
}

void sort_unique(std::vector<GameState>& states) {
    auto less = [](const GameState& a, const GameState& b) {
        if (a.pursuers != b.pursuers)
            return a.pursuers < b.pursuers;
        if (a.evader != b.evader)
            return a.evader < b.evader;
        return a.phase < b.phase;
    };
    std::sort(states.begin(), states.end(), less);
    states.erase(std::unique(states.begin(), states.end()), states.end());
}

} // namespace

std::vector<Vertex> pursuer_move_options(const GameSpec& spec, Vertex pursuer, Vertex evader) {
    switch (spec.pursuer_rule()) {
    case PursuerRule::FlexibleAll:
    case PursuerRule::ActiveSubset:
        return closed_neighborhood(spec.graph(), pursuer);
    case PursuerRule::ActiveAll:
        return spec.graph().neighbors(pursuer);
    case PursuerRule::Zombie:
        if (evader == kNotPlaced)
            throw std::invalid_argument("zombie options: evader not placed");
        if (pursuer == evader)
            throw InvariantError("zombie options: asked for a move from a captured state");
        return geodesic_moves(spec.graph(), spec.oracle(), pursuer, evader);
    }
    throw InvariantError("pursuer options: unknown rule");
}

std::vector<Vertex> evader_move_options(const GameSpec& spec, Vertex evader) {
    if (evader == kNotPlaced)
        throw std::invalid_argument("evader options: evader not placed");
    switch (spec.evader_rule()) {
    case EvaderRule::Flexible:
        return closed_neighborhood(spec.graph(), evader);
    case EvaderRule::Active:
        return spec.graph().neighbors(evader);
    }
    throw InvariantError("evader options: unknown rule");
}

JointMoveEnumerator::JointMoveEnumerator(const std::vector<const std::vector<Vertex>*>& options)
    : options_(options), cursor_(options.size(), 0) {
    for (const auto* list : options_)
        if (list == nullptr || list->empty())
            done_ = true; // no legal joint move at all
}

bool JointMoveEnumerator::next(std::vector<Vertex>& tuple) {
    if (done_)
        return false;
    if (!first_) {
        // Advance the odometer, last position fastest.
        std::size_t i = options_.size();
        while (i > 0) {
            --i;
            if (++cursor_[i] < options_[i]->size())
                break;
            cursor_[i] = 0;
            if (i == 0) {
                done_ = true;
                return false;
            }
        }
    }
    first_ = false;
    tuple.resize(options_.size());
    for (std::size_t i = 0; i < options_.size(); ++i)
        tuple[i] = (*options_[i])[cursor_[i]];
    return true;
}

std::vector<GameState> pursuer_successors(const GameSpec& spec, const GameState& state) {
    require_phase(state, Phase::PursuersToMove, "pursuer successors");
    if (static_cast<int>(state.pursuers.size()) != spec.pursuer_count())
        throw std::invalid_argument("pursuer successors: pursuer count mismatch");

    std::vector<std::vector<Vertex>> option_storage;
    option_storage.reserve(state.pursuers.size());
    for (Vertex p : state.pursuers)
        option_storage.push_back(pursuer_move_options(spec, p, state.evader));
    std::vector<const std::vector<Vertex>*> options;
    options.reserve(option_storage.size());
    for (const auto& list : option_storage)
        options.push_back(&list);

    const bool skip_stay_put = spec.pursuer_rule() == PursuerRule::ActiveSubset;
    std::vector<GameState> out;
    JointMoveEnumerator joint(options);
    std::vector<Vertex> tuple;
    while (joint.next(tuple)) {
        if (skip_stay_put && tuple == state.pursuers)
            continue;
        out.push_back(canonical_after_pursuer_move(tuple, state.evader));
    }
    sort_unique(out);
    return out;
}

std::vector<GameState> evader_successors(const GameSpec& spec, const GameState& state) {
    require_phase(state, Phase::EvaderToMove, "evader successors");
    std::vector<GameState> out;
    for (Vertex target : evader_move_options(spec, state.evader)) {
        Phase phase = state_is_captured(state.pursuers, target) ? Phase::Captured
                                                                : Phase::PursuersToMove;
        out.push_back(GameState{state.pursuers, target, phase});
    }
    sort_unique(out);
    return out;
}

std::vector<GameState> placement_successors(const GameSpec& spec, const GameState& state) {
    std::vector<GameState> out;
    if (state.phase == Phase::PursuersToPlace) {
        // All non-decreasing tuples of length k (sorted multisets).
        const int n = spec.graph().vertex_count();
        const int k = spec.pursuer_count();
        std::vector<Vertex> tuple(static_cast<std::size_t>(k), 0);
        while (true) {
            out.push_back(GameState{tuple, kNotPlaced, Phase::EvaderToPlace});
            int i = k - 1;
            while (i >= 0 && tuple[static_cast<std::size_t>(i)] == n - 1)
                --i;
            if (i < 0)
                break;
            Vertex next = tuple[static_cast<std::size_t>(i)] + 1;
            for (int j = i; j < k; ++j)
                tuple[static_cast<std::size_t>(j)] = next;
        }
        return out; // already sorted ascending, no duplicates
    }
    if (state.phase == Phase::EvaderToPlace) {
        for (Vertex v = 0; v < spec.graph().vertex_count(); ++v) {
            Phase phase = state_is_captured(state.pursuers, v) ? Phase::Captured
                                                               : Phase::PursuersToMove;
            out.push_back(GameState{state.pursuers, v, phase});
        }
        return out;
    }
    throw std::invalid_argument("placement successors: wrong phase");
}

} // namespace pursuit
