#pragma once

#include "pursuit/game.hpp"
#include "pursuit/graph.hpp"
#include "pursuit/retraction.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pursuit {

inline constexpr long long kDefaultStateBudget = 50'000'000;

enum class Winner { PursuerWin, EvaderWin };

// Dense indexing of mid-game states: (sorted pursuer multiset, evader,
// whose move). Multisets are ranked in lexicographic order, rank 0 being
// (0, 0, ..., 0).
class StateSpace {
  public:
    StateSpace(int vertex_count, int pursuer_count, long long budget);

    int vertex_count() const { return n_; }
    int pursuer_count() const { return k_; }
    long long multiset_count() const { return multiset_count_; }
    long long state_count() const { return multiset_count_ * n_ * 2; }

    long long rank_multiset(const std::vector<Vertex>& sorted_tuple) const;
    std::vector<Vertex> unrank_multiset(long long rank) const;

    long long state_id(long long multiset_rank, Vertex evader, bool evader_to_move) const {
        return (multiset_rank * n_ + evader) * 2 + (evader_to_move ? 1 : 0);
    }

  private:
    int n_;
    int k_;
    long long multiset_count_;
    // prefix_[j][x] = sum over t in [0, x) of C(N - 1 - t, j), N = n + k - 1.
    std::vector<std::vector<long long>> prefix_;
};

// Full winner labelling of the mid-game state space for a fixed GameSpec.
class SolveResult {
  public:
    Winner winner(const GameState& state) const;
    // Half-steps to capture from a PursuerWin state (0 for Captured states).
    long long steps_to_capture(const GameState& state) const;
    // Optimal successor for a PursuerWin state with pursuers to move.
    std::optional<GameState> policy(const GameState& state) const;

    // True iff this pursuer placement beats every evader placement.
    bool placement_wins(const std::vector<Vertex>& pursuer_multiset) const;
    // Lexicographically least winning placement, if any.
    std::optional<std::vector<Vertex>> winning_placement() const;

    long long state_count() const { return space_.state_count(); }
    long long pursuer_win_count() const { return pursuer_win_count_; }
    int sweep_count() const { return sweep_count_; }

    const GameSpec& spec() const { return *spec_; }
    const StateSpace& space() const { return space_; }

  private:
    friend SolveResult solve(const GameSpec& spec, long long budget);
    SolveResult(std::shared_ptr<const GameSpec> spec, StateSpace space);

    long long require_id(const GameState& state) const;

    std::shared_ptr<const GameSpec> spec_;
    StateSpace space_;
    std::vector<std::uint8_t> win_;
    std::vector<std::uint32_t> steps_;   // valid where win_
    std::vector<std::int64_t> policy_;   // per (multiset, evader); -1 = none
    long long pursuer_win_count_ = 0;
    int sweep_count_ = 0;
};

SolveResult solve(const GameSpec& spec, long long budget = kDefaultStateBudget);

// Least pursuer count (with cops-then-robber placement) winning the variant.
struct GameValue {
    PursuerRule pursuer_rule{};
    EvaderRule evader_rule{};
    std::uint64_t graph_hash = 0;
    int k_max = 0;
    std::optional<int> value;                 // nullopt: exceeds k_max
    struct PerK {
        int k = 0;
        bool pursuer_wins = false;
        long long states = 0;
        std::vector<Vertex> placement;        // winning placement when pursuer_wins
    };
    std::vector<PerK> per_k;

    bool exceeds() const { return !value.has_value(); }
};

GameValue game_number(const Graph& graph, PursuerRule pursuer_rule, EvaderRule evader_rule,
                      int k_max, long long budget = kDefaultStateBudget);

// Outcome of comparing two possibly-unresolved values.
enum class CheckOutcome { Holds, Violated, Indeterminate };

// Does lhs <= rhs, treating "exceeds k_max" as "> k_max"?
CheckOutcome value_le(const GameValue& lhs, const GameValue& rhs);

// The six variant values on one graph plus every pairwise inequality the
// variants are known to satisfy.
struct ChainReport {
    GameValue c_ff;      // flexible cops, flexible robber (classical c)
    GameValue c_fa;      // flexible cops, active robber
    GameValue c_prime;   // at-least-one-cop-moves, active robber
    GameValue c_aa;      // all cops move, active robber
    GameValue c_af;      // all cops move, flexible robber
    GameValue zombie;    // zombies, flexible survivor

    struct Check {
        std::string name;
        CheckOutcome outcome = CheckOutcome::Indeterminate;
    };
    std::vector<Check> checks;
    bool any_violation = false;
};

ChainReport chain_check(const Graph& graph, int k_max, long long budget = kDefaultStateBudget);

// Verifies value(image subgraph) <= value(host graph) for one variant.
struct MonotonicityReport {
    GameValue image_value;
    GameValue host_value;
    CheckOutcome outcome = CheckOutcome::Indeterminate;
};

MonotonicityReport retract_monotonicity_check(const Graph& g, const Retraction& r,
                                              PursuerRule pursuer_rule, EvaderRule evader_rule,
                                              int k_max,
                                              long long budget = kDefaultStateBudget);

const char* variant_short_name(PursuerRule pursuer_rule, EvaderRule evader_rule);

// One TSV row per solved k: variant, graph hash, k, winner, states explored.
std::string game_value_tsv(const GameValue& value);

} // namespace pursuit
