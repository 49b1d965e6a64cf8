#pragma once

#include "pursuit/graph.hpp"
#include "pursuit/product.hpp"

#include <cstddef>
#include <vector>

namespace pursuit {

enum class PursuerRule {
    FlexibleAll,  // each pursuer steps to a neighbor or stays
    ActiveSubset, // at least one pursuer steps; the rest may stay
    ActiveAll,    // every pursuer steps
    Zombie,       // every pursuer steps strictly closer to the evader
};

enum class EvaderRule {
    Flexible, // neighbor or stay
    Active,   // neighbor only
};

enum class Phase {
    PursuersToPlace,
    EvaderToPlace,
    PursuersToMove,
    EvaderToMove,
    Captured,
};

// A variant (rule pair + pursuer count) on a fixed connected graph.
class GameSpec {
  public:
    GameSpec(Graph graph, int pursuer_count, PursuerRule pursuer_rule, EvaderRule evader_rule);

    const Graph& graph() const { return graph_; }
    const DistanceOracle& oracle() const { return oracle_; }
    int pursuer_count() const { return pursuer_count_; }
    PursuerRule pursuer_rule() const { return pursuer_rule_; }
    EvaderRule evader_rule() const { return evader_rule_; }

  private:
    Graph graph_;
    DistanceOracle oracle_;
    int pursuer_count_;
    PursuerRule pursuer_rule_;
    EvaderRule evader_rule_;
};

inline constexpr Vertex kNotPlaced = -1;

struct GameState {
    std::vector<Vertex> pursuers; // sorted multiset; empty before placement
    Vertex evader = kNotPlaced;
    Phase phase = Phase::PursuersToPlace;

    bool operator==(const GameState&) const = default;
};

GameState initial_state();
GameState make_state(std::vector<Vertex> pursuers, Vertex evader, Phase phase);
bool state_is_captured(const std::vector<Vertex>& sorted_pursuers, Vertex evader);

// Per-pursuer option list under the spec's rule. For FlexibleAll and
// ActiveSubset this is the closed neighborhood (the subset condition is a
// tuple-level constraint, applied by the joint enumerators below); for
// ActiveAll the open neighborhood; for Zombie the strictly-closer steps.
std::vector<Vertex> pursuer_move_options(const GameSpec& spec, Vertex pursuer, Vertex evader);
std::vector<Vertex> evader_move_options(const GameSpec& spec, Vertex evader);

// Odometer over per-pursuer option lists; emits every aligned joint tuple
// exactly once, options cycling fastest at the back.
class JointMoveEnumerator {
  public:
    explicit JointMoveEnumerator(const std::vector<const std::vector<Vertex>*>& options);

    // Fills `tuple` with the next joint move; false when exhausted.
    bool next(std::vector<Vertex>& tuple);

  private:
    std::vector<const std::vector<Vertex>*> options_;
    std::vector<std::size_t> cursor_;
    bool done_ = false;
    bool first_ = true;
};

// Canonicalized successor sets (sorted, deduplicated).
std::vector<GameState> pursuer_successors(const GameSpec& spec, const GameState& state);
std::vector<GameState> evader_successors(const GameSpec& spec, const GameState& state);
std::vector<GameState> placement_successors(const GameSpec& spec, const GameState& state);

} // namespace pursuit
