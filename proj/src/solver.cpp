#include "pursuit/solver.hpp"

#include "pursuit/errors.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pursuit {

namespace {

constexpr long long kSaturated = std::numeric_limits<long long>::max() / 4;

long long saturating_mul(long long a, long long b) {
    if (a == 0 || b == 0)
        return 0;
    if (a > kSaturated / b)
        return kSaturated;
    return a * b;
}

long long saturating_add(long long a, long long b) {
    if (a > kSaturated - b)
        return kSaturated;
    return a + b;
}

} // namespace

StateSpace::StateSpace(int vertex_count, int pursuer_count, long long budget)
    : n_(vertex_count), k_(pursuer_count) {
    if (n_ < 1 || k_ < 1)
        throw std::invalid_argument("state space: needs vertices and pursuers");
    const int N = n_ + k_ - 1; // combination universe size

    // Binomials C(a, j) for a in [0, N], j in [0, k]; saturated.
    std::vector<std::vector<long long>> choose(static_cast<std::size_t>(N + 1),
                                               std::vector<long long>(static_cast<std::size_t>(k_ + 1), 0));
    for (int a = 0; a <= N; ++a) {
        choose[static_cast<std::size_t>(a)][0] = 1;
        for (int j = 1; j <= k_ && j <= a; ++j) {
            long long without = choose[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(j)];
            long long with = choose[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(j - 1)];
            choose[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)] = saturating_add(without, with);
        }
    }
    multiset_count_ = choose[static_cast<std::size_t>(N)][static_cast<std::size_t>(k_)];

    long long required = saturating_mul(saturating_mul(multiset_count_, n_), 2);
    if (required > budget) {
        std::ostringstream out;
        out << "solver: state space needs " << required << " states, budget is " << budget;
        throw BudgetExceeded(out.str());
    }

    // prefix_[j][x] = sum over t < x of C(N - 1 - t, j).
    prefix_.assign(static_cast<std::size_t>(k_), std::vector<long long>(static_cast<std::size_t>(N + 1), 0));
    for (int j = 0; j < k_; ++j)
        for (int x = 1; x <= N; ++x) {
            int a = N - 1 - (x - 1);
            long long term = (j <= a) ? choose[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)] : 0;
            prefix_[static_cast<std::size_t>(j)][static_cast<std::size_t>(x)] =
                prefix_[static_cast<std::size_t>(j)][static_cast<std::size_t>(x - 1)] + term;
        }
}

long long StateSpace::rank_multiset(const std::vector<Vertex>& sorted_tuple) const {
    if (static_cast<int>(sorted_tuple.size()) != k_)
        throw std::invalid_argument("state space: tuple size mismatch");
    long long rank = 0;
    int prev = -1;
    for (int i = 0; i < k_; ++i) {
        int v = sorted_tuple[static_cast<std::size_t>(i)];
        if (v < 0 || v >= n_ || (i > 0 && v < sorted_tuple[static_cast<std::size_t>(i - 1)]))
            throw std::invalid_argument("state space: tuple not a sorted multiset");
        int c = v + i; // strictly increasing combination element
        int j = k_ - 1 - i;
        rank += prefix_[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)] -
                prefix_[static_cast<std::size_t>(j)][static_cast<std::size_t>(prev + 1)];
        prev = c;
    }
    return rank;
}

std::vector<Vertex> StateSpace::unrank_multiset(long long rank) const {
    if (rank < 0 || rank >= multiset_count_)
        throw std::invalid_argument("state space: rank out of range");
    std::vector<Vertex> tuple(static_cast<std::size_t>(k_));
    long long remaining = rank;
    int prev = -1;
    for (int i = 0; i < k_; ++i) {
        int j = k_ - 1 - i;
        int c = prev + 1;
        for (;;) {
            long long here = prefix_[static_cast<std::size_t>(j)][static_cast<std::size_t>(c + 1)] -
                             prefix_[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
            if (remaining < here)
                break;
            remaining -= here;
            ++c;
        }
        tuple[static_cast<std::size_t>(i)] = c - i;
        prev = c;
    }
    return tuple;
}

SolveResult::SolveResult(std::shared_ptr<const GameSpec> spec, StateSpace space)
    : spec_(std::move(spec)), space_(std::move(space)) {}

long long SolveResult::require_id(const GameState& state) const {
    if (state.evader == kNotPlaced)
        throw std::invalid_argument("solve result: evader not placed");
    if (static_cast<int>(state.pursuers.size()) != space_.pursuer_count())
        throw std::invalid_argument("solve result: pursuer count mismatch");
    long long m = space_.rank_multiset(state.pursuers);
    bool evader_to_move = state.phase == Phase::EvaderToMove;
    if (state.phase != Phase::PursuersToMove && state.phase != Phase::EvaderToMove &&
        state.phase != Phase::Captured)
        throw std::invalid_argument("solve result: placement phases have no stored label");
    return space_.state_id(m, state.evader, evader_to_move);
}

Winner SolveResult::winner(const GameState& state) const {
    return win_[static_cast<std::size_t>(require_id(state))] ? Winner::PursuerWin
                                                             : Winner::EvaderWin;
}

long long SolveResult::steps_to_capture(const GameState& state) const {
    long long id = require_id(state);
    if (!win_[static_cast<std::size_t>(id)])
        throw std::invalid_argument("solve result: steps undefined for evader-win state");
    return steps_[static_cast<std::size_t>(id)];
}

std::optional<GameState> SolveResult::policy(const GameState& state) const {
    if (state.phase != Phase::PursuersToMove)
        return std::nullopt;
    long long id = require_id(state);
    if (!win_[static_cast<std::size_t>(id)])
        return std::nullopt;
    long long slot = space_.rank_multiset(state.pursuers) * space_.vertex_count() + state.evader;
    long long succ = policy_[static_cast<std::size_t>(slot)];
    if (succ < 0)
        return std::nullopt;
    long long m = succ / 2 / space_.vertex_count();
    Vertex evader = static_cast<Vertex>((succ / 2) % space_.vertex_count());
    std::vector<Vertex> pursuers = space_.unrank_multiset(m);
    Phase phase = state_is_captured(pursuers, evader) ? Phase::Captured : Phase::EvaderToMove;
    return GameState{std::move(pursuers), evader, phase};
}

bool SolveResult::placement_wins(const std::vector<Vertex>& pursuer_multiset) const {
    std::vector<Vertex> sorted = pursuer_multiset;
    std::sort(sorted.begin(), sorted.end());
    long long m = space_.rank_multiset(sorted);
    for (Vertex e = 0; e < space_.vertex_count(); ++e) {
        if (state_is_captured(sorted, e))
            continue;
        if (!win_[static_cast<std::size_t>(space_.state_id(m, e, false))])
            return false;
    }
    return true;
}

std::optional<std::vector<Vertex>> SolveResult::winning_placement() const {
    for (long long m = 0; m < space_.multiset_count(); ++m) {
        std::vector<Vertex> tuple = space_.unrank_multiset(m);
        if (placement_wins(tuple))
            return tuple;
    }
    return std::nullopt;
}

SolveResult solve(const GameSpec& spec_in, long long budget) {
    auto spec = std::make_shared<const GameSpec>(spec_in);
    const Graph& g = spec->graph();
    const int n = g.vertex_count();
    const int k = spec->pursuer_count();
    StateSpace space(n, k, budget);
    const long long M = space.multiset_count();

    SolveResult result(spec, space);
    result.win_.assign(static_cast<std::size_t>(space.state_count()), 0);
    result.steps_.assign(static_cast<std::size_t>(space.state_count()), 0);
    result.policy_.assign(static_cast<std::size_t>(M) * static_cast<std::size_t>(n), -1);

    const bool zombie = spec->pursuer_rule() == PursuerRule::Zombie;
    const bool skip_stay_put = spec->pursuer_rule() == PursuerRule::ActiveSubset;

    // Option lists: per vertex for rule-independent pursuers, per
    // (vertex, evader) for zombies, per vertex for the evader.
    std::vector<std::vector<Vertex>> pursuer_opts;
    std::vector<std::vector<Vertex>> zombie_opts;
    if (zombie) {
        zombie_opts.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
        for (Vertex v = 0; v < n; ++v)
            for (Vertex e = 0; e < n; ++e)
                if (v != e)
                    zombie_opts[static_cast<std::size_t>(v) * n + static_cast<std::size_t>(e)] =
                        geodesic_moves(g, spec->oracle(), v, e);
    } else {
        pursuer_opts.reserve(static_cast<std::size_t>(n));
        for (Vertex v = 0; v < n; ++v)
            pursuer_opts.push_back(pursuer_move_options(*spec, v, 0));
    }
    std::vector<std::vector<Vertex>> evader_opts;
    evader_opts.reserve(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v)
        evader_opts.push_back(evader_move_options(*spec, v));

    // Non-decreasing-tuple odometer, in step with multiset rank.
    auto advance_positions = [n, k](std::vector<Vertex>& t) {
        int i = k - 1;
        while (i >= 0 && t[static_cast<std::size_t>(i)] == n - 1)
            --i;
        if (i < 0)
            return false;
        Vertex next = t[static_cast<std::size_t>(i)] + 1;
        for (int j = i; j < k; ++j)
            t[static_cast<std::size_t>(j)] = next;
        return true;
    };

    // Terminal states: evader on a pursuer vertex. Decided up front, steps 0.
    {
        std::vector<Vertex> positions(static_cast<std::size_t>(k), 0);
        for (long long m = 0; m < M; ++m) {
            for (int i = 0; i < k; ++i) {
                Vertex e = positions[static_cast<std::size_t>(i)];
                if (i > 0 && e == positions[static_cast<std::size_t>(i - 1)])
                    continue;
                for (int phase = 0; phase < 2; ++phase) {
                    long long id = space.state_id(m, e, phase == 1);
                    if (!result.win_[static_cast<std::size_t>(id)]) {
                        result.win_[static_cast<std::size_t>(id)] = 1;
                        ++result.pursuer_win_count_;
                    }
                }
            }
            advance_positions(positions);
        }
    }

    std::vector<long long> newly_won;
    std::vector<std::pair<long long, long long>> new_policies; // (policy slot, successor id)
    std::vector<const std::vector<Vertex>*> options(static_cast<std::size_t>(k));
    std::vector<std::size_t> cursor(static_cast<std::size_t>(k));
    std::vector<Vertex> tuple(static_cast<std::size_t>(k));
    std::vector<Vertex> sorted_tuple(static_cast<std::size_t>(k));

    int layer = 0;
    for (;;) {
        ++layer;
        newly_won.clear();
        new_policies.clear();
        std::vector<Vertex> positions(static_cast<std::size_t>(k), 0);
        for (long long m = 0; m < M; ++m, advance_positions(positions)) {
            for (Vertex e = 0; e < n; ++e) {
                if (state_is_captured(positions, e))
                    continue;

                // Pursuers to move: win iff some successor already won.
                long long pid = space.state_id(m, e, false);
                if (!result.win_[static_cast<std::size_t>(pid)]) {
                    for (int i = 0; i < k; ++i) {
                        Vertex p = positions[static_cast<std::size_t>(i)];
                        options[static_cast<std::size_t>(i)] =
                            zombie ? &zombie_opts[static_cast<std::size_t>(p) * n + static_cast<std::size_t>(e)]
                                   : &pursuer_opts[static_cast<std::size_t>(p)];
                    }
                    std::fill(cursor.begin(), cursor.end(), 0);
                    bool exhausted = false;
                    for (int i = 0; i < k; ++i)
                        if (options[static_cast<std::size_t>(i)]->empty())
                            exhausted = true;
                    while (!exhausted) {
                        for (int i = 0; i < k; ++i)
                            tuple[static_cast<std::size_t>(i)] =
                                (*options[static_cast<std::size_t>(i)])[cursor[static_cast<std::size_t>(i)]];
                        if (!(skip_stay_put && tuple == positions)) {
                            sorted_tuple = tuple;
                            std::sort(sorted_tuple.begin(), sorted_tuple.end());
                            long long m2 = space.rank_multiset(sorted_tuple);
                            long long sid = space.state_id(m2, e, true);
                            if (result.win_[static_cast<std::size_t>(sid)]) {
                                newly_won.push_back(pid);
                                new_policies.emplace_back(m * n + e, sid);
                                break;
                            }
                        }
                        // advance odometer, last pursuer fastest
                        int i = k - 1;
                        for (;;) {
                            if (++cursor[static_cast<std::size_t>(i)] <
                                options[static_cast<std::size_t>(i)]->size())
                                break;
                            cursor[static_cast<std::size_t>(i)] = 0;
                            if (--i < 0) {
                                exhausted = true;
                                break;
                            }
                        }
                    }
                }

                // Evader to move: win iff every successor already won.
                long long eid = space.state_id(m, e, true);
                if (!result.win_[static_cast<std::size_t>(eid)]) {
                    bool all_won = true;
                    for (Vertex target : evader_opts[static_cast<std::size_t>(e)]) {
                        if (state_is_captured(positions, target))
                            continue; // suicide: captured successor
                        if (!result.win_[static_cast<std::size_t>(space.state_id(m, target, false))]) {
                            all_won = false;
                            break;
                        }
                    }
                    if (all_won)
                        newly_won.push_back(eid);
                }
            }
        }
        if (newly_won.empty())
            break;
        for (long long id : newly_won) {
            result.win_[static_cast<std::size_t>(id)] = 1;
            result.steps_[static_cast<std::size_t>(id)] = static_cast<std::uint32_t>(layer);
        }
        for (const auto& [slot, sid] : new_policies)
            result.policy_[static_cast<std::size_t>(slot)] = sid;
        result.pursuer_win_count_ += static_cast<long long>(newly_won.size());
        result.sweep_count_ = layer;
    }
    return result;
}

GameValue game_number(const Graph& graph, PursuerRule pursuer_rule, EvaderRule evader_rule,
                      int k_max, long long budget) {
    if (k_max < 1)
        throw std::invalid_argument("game number: k_max must be at least 1");
    GameValue out;
    out.pursuer_rule = pursuer_rule;
    out.evader_rule = evader_rule;
    out.graph_hash = graph.identity_hash();
    out.k_max = k_max;
    for (int k = 1; k <= k_max; ++k) {
        GameSpec spec(graph, k, pursuer_rule, evader_rule);
        GameValue::PerK row;
        row.k = k;
        try {
            SolveResult result = solve(spec, budget);
            row.states = result.state_count();
            std::optional<std::vector<Vertex>> placement = result.winning_placement();
            row.pursuer_wins = placement.has_value();
            if (placement)
                row.placement = *placement;
        } catch (const BudgetExceeded& e) {
            throw BudgetExceeded(std::string(e.what()) + " (at pursuer count " +
                                 std::to_string(k) + ")");
        }
        out.per_k.push_back(row);
        if (row.pursuer_wins) {
            out.value = k;
            break;
        }
    }
    return out;
}

CheckOutcome value_le(const GameValue& lhs, const GameValue& rhs) {
    if (lhs.value && rhs.value)
        return *lhs.value <= *rhs.value ? CheckOutcome::Holds : CheckOutcome::Violated;
    if (lhs.value && !rhs.value)
        return CheckOutcome::Holds; // rhs exceeds its bound, so rhs > k_max >= lhs
    if (!lhs.value && rhs.value)
        return CheckOutcome::Violated; // lhs > k_max >= rhs
    return CheckOutcome::Indeterminate;
}

ChainReport chain_check(const Graph& graph, int k_max, long long budget) {
    ChainReport report;
    report.c_ff = game_number(graph, PursuerRule::FlexibleAll, EvaderRule::Flexible, k_max, budget);
    report.c_fa = game_number(graph, PursuerRule::FlexibleAll, EvaderRule::Active, k_max, budget);
    report.c_prime =
        game_number(graph, PursuerRule::ActiveSubset, EvaderRule::Active, k_max, budget);
    report.c_aa = game_number(graph, PursuerRule::ActiveAll, EvaderRule::Active, k_max, budget);
    report.c_af = game_number(graph, PursuerRule::ActiveAll, EvaderRule::Flexible, k_max, budget);
    report.zombie = game_number(graph, PursuerRule::Zombie, EvaderRule::Flexible, k_max, budget);

    auto add = [&report](const char* name, const GameValue& lhs, const GameValue& rhs) {
        CheckOutcome outcome = value_le(lhs, rhs);
        report.checks.push_back({name, outcome});
        if (outcome == CheckOutcome::Violated)
            report.any_violation = true;
    };
    add("c_fa<=c_prime", report.c_fa, report.c_prime);
    add("c_prime<=c_aa", report.c_prime, report.c_aa);
    add("c_aa<=c_af", report.c_aa, report.c_af);
    add("c_fa<=c_ff", report.c_fa, report.c_ff);
    add("c_ff<=c_af", report.c_ff, report.c_af);
    add("c_af<=zombie", report.c_af, report.zombie);
    return report;
}

MonotonicityReport retract_monotonicity_check(const Graph& g, const Retraction& r,
                                              PursuerRule pursuer_rule, EvaderRule evader_rule,
                                              int k_max, long long budget) {
    if (!verify_retraction(g, r))
        throw std::invalid_argument("monotonicity check: not a valid retraction");
    Graph image = induced_subgraph(g, r.image);
    MonotonicityReport report;
    report.image_value = game_number(image, pursuer_rule, evader_rule, k_max, budget);
    report.host_value = game_number(g, pursuer_rule, evader_rule, k_max, budget);
    report.outcome = value_le(report.image_value, report.host_value);
    return report;
}

const char* variant_short_name(PursuerRule pursuer_rule, EvaderRule evader_rule) {
    switch (pursuer_rule) {
    case PursuerRule::FlexibleAll:
        return evader_rule == EvaderRule::Flexible ? "c" : "c_fa";
    case PursuerRule::ActiveSubset:
        return evader_rule == EvaderRule::Active ? "c_prime" : "c_subset_flex";
    case PursuerRule::ActiveAll:
        return evader_rule == EvaderRule::Active ? "c_aa" : "c_af";
    case PursuerRule::Zombie:
        return evader_rule == EvaderRule::Flexible ? "zombie" : "zombie_active";
    }
    return "unknown";
}

std::string game_value_tsv(const GameValue& value) {
    std::ostringstream out;
    for (const auto& row : value.per_k) {
        out << variant_short_name(value.pursuer_rule, value.evader_rule) << '\t' << std::hex
            << value.graph_hash << std::dec << '\t' << row.k << '\t'
            << (row.pursuer_wins ? "pursuer" : "evader") << '\t' << row.states << '\n';
    }
    return out.str();
}

} // namespace pursuit
