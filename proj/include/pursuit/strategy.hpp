#pragma once

#include "pursuit/product.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pursuit {

// ---------------------------------------------------------------------------
// Coordinate-level primitives shared by the scripted zombie strategies.
// Positions are flat product vertices; coordinates index product factors.
// ---------------------------------------------------------------------------

struct DistanceVector {
    std::vector<int> entries; // per-coordinate factor distance
    int total = 0;            // equals the product distance
};

DistanceVector distance_vector(const ProductGraph& product, int zombie, int survivor);

enum class TieBreak { Leftmost, Rightmost };

struct CoordinateMove {
    int coordinate = -1;   // factor index moved in
    int from = -1;         // factor vertex before
    int to = -1;           // factor vertex after
    int new_position = -1; // flat product vertex after
};

// Step one tree edge toward the survivor in the coordinate where the
// distance is greatest (ties per TieBreak over the product's coordinates).
CoordinateMove three_tree_move(const ProductGraph& product, int zombie, int survivor,
                               TieBreak tiebreak);

// Step in the first coordinate, scanning cyclically rightward from `home`,
// where zombie and survivor disagree.
CoordinateMove home_move(const ProductGraph& product, int zombie, int survivor, int home);

struct ReachInfo {
    int reach = 0;
    std::vector<int> within; // coordinate indices within reach, scan order
};

// Consecutive agreement run starting at `home` and scanning rightward
// cyclically.
ReachInfo reach(const ProductGraph& product, int zombie, int survivor, int home);

// Initial zombie deployment on two adjacent product vertices x, y (the first
// edge of factor 0, all other coordinates 0), with home coordinates laid out
// by the residue of the factor count mod 3.
struct PlacementPlan {
    int zombie_count = 0;
    int case_tag = 0;            // factor count mod 3
    int pair_count = 0;          // number of (Z_i, Z_{pair_count+i}) pairs
    std::vector<int> positions;  // flat product vertices, ordered by zombie id
    std::vector<int> homes;      // home coordinate per zombie (0-based factor)
};

// zombie_count 0 means the canonical ceil(2n/3) for n factors.
PlacementPlan initial_placement(const ProductGraph& product, int zombie_count = 0);

// For each pair (Z_i, Z_{l+i}) with l = zombie_count / 2: is the summed
// product distance to the survivor odd?
std::vector<bool> parity_signature(const ProductGraph& product,
                                   const std::vector<int>& zombie_positions, int survivor);

// ---------------------------------------------------------------------------
// Scripted strategies and the exhaustive adversarial verifier.
// ---------------------------------------------------------------------------

enum class StrategyPhase { HomeSweep, PairEndgame, MimicSubproduct };

struct SurvivorAction {
    bool moved = false;  // false: pass (or initial placement)
    int coordinate = -1; // factor index of the move
    int from = -1;       // factor vertex before
    int to = -1;         // factor vertex after
};

enum class MoveKind { Home, TrioEndgame, Mimic };

struct ZombieStep {
    int zombie = -1;     // index into the strategy's zombie ordering
    int coordinate = -1; // factor index moved in
    int from = -1;       // factor vertex before
    int to = -1;         // factor vertex after
    MoveKind kind = MoveKind::Home;
    int level_depth = 0;    // which chain level produced the move
    int home_position = -1; // home (scan-order position) when kind == Home
};

struct VerifyStats {
    long long midpoints = 0;
    long long legality_checks = 0;
    long long parity_checks = 0;
    long long reach_checks = 0;
    long long agreement_checks = 0;
    long long shape_checks = 0;
    long long memo_nodes = 0;
};

// A deterministic zombie script: fixed placement, a joint move as a function
// of (config, positions, survivor, survivor's last action), and config
// transitions evaluated at round midpoints. Configs are interned ints.
class ScriptedStrategy {
  public:
    virtual ~ScriptedStrategy() = default;

    // The product the script runs on. Two-factor inputs are padded with a
    // single-vertex third factor so the trio machinery applies unchanged;
    // the padded product's flat graph coincides with the original's.
    virtual const ProductGraph& product() const = 0;

    virtual int zombie_count() const = 0;
    virtual const std::vector<int>& zombie_placement() const = 0;
    virtual int initial_config() const = 0;

    // Joint zombie move at a midpoint. `survivor` is the survivor's
    // post-move vertex; `action` its most recent half-step.
    virtual void joint_move(int config, const std::vector<int>& zombies, int survivor,
                            const SurvivorAction& action, std::vector<ZombieStep>& out) = 0;

    // Midpoint config transition, cascading until stable.
    virtual int advance_config(int config, const std::vector<int>& zombies, int survivor) = 0;

    // Structural invariants checked between consecutive midpoints: pair
    // parity, reach monotonicity under home play, watched-block agreement,
    // and the endgame-trio distance-vector shape closure. Throws
    // InvariantError on violation.
    virtual void check_midpoint(int prev_config, const std::vector<int>& prev_zombies,
                                int prev_survivor, const std::vector<ZombieStep>& steps,
                                int config, const std::vector<int>& zombies, int survivor,
                                VerifyStats& stats) const = 0;

    virtual std::string phase_label(int config) const = 0;
};

// Two zombies playing the max-distance-coordinate rule from round 1 on a
// product of at most three trees.
std::unique_ptr<ScriptedStrategy> make_three_tree_strategy(const ProductGraph& product);

// The general layered strategy: home sweep, pair endgame on a trio of
// coordinates, recursive mimic-subproduct levels; odd counts add a rover
// zombie that splits off before the recursion. zombie_count 0 = canonical.
std::unique_ptr<ScriptedStrategy> make_composite_strategy(const ProductGraph& product,
                                                          int zombie_count = 0);

// One scripted step: joint move from the given midpoint, then (if nobody was
// caught) the config transition for the next midpoint.
struct StepOutcome {
    std::vector<ZombieStep> steps;
    std::vector<int> zombies_after;
    bool captured = false;
    int config_after = -1; // unchanged when captured
};

StepOutcome composite_strategy_step(ScriptedStrategy& strategy, int config,
                                    const std::vector<int>& zombies, int survivor,
                                    const SurvivorAction& action);

// ---------------------------------------------------------------------------
// Exhaustive verification: every survivor placement and every reply
// (neighbors + pass), memoized on (zombie positions, survivor, config).
// ---------------------------------------------------------------------------

struct VerifyOptions {
    long long memo_budget = 2'000'000;
    int max_rounds = 10'000;
    bool build_witness = true;
};

struct TraceLine {
    int round = 0;
    std::string mover;
    std::string before;
    std::string action;
    std::string after;
    std::string phase;

    std::string tsv() const;
};

struct VerifyResult {
    enum class Kind {
        Captured,         // every branch ends in capture
        EscapedCycle,     // a midpoint state repeats: survivor loops forever
        EscapedStepLimit, // max_rounds exceeded (diagnostic, not a proof)
    };

    Kind kind = Kind::Captured;
    int worst_case_rounds = 0;      // Captured only
    std::string detail;             // human-readable escape/limit context
    std::vector<TraceLine> witness; // worst capture trace or escape path
    VerifyStats stats;
};

VerifyResult verify_scripted_strategy(ScriptedStrategy& strategy,
                                      const VerifyOptions& options = {});

} // namespace pursuit
