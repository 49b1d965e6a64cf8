#include "pursuit/strategy.hpp"

#include "pursuit/errors.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

namespace pursuit {

namespace {

// The unique neighbor of `from` one step closer to `toward` in a tree factor.
int tree_step(const ProductGraph& product, int factor, int from, int toward) {
    const DistanceOracle& oracle = product.factor_oracle(factor);
    int here = oracle.distance(from, toward);
    if (here <= 0)
        throw InvariantError("tree step: nothing left to close in this coordinate");
    for (Vertex w : product.factor(factor).neighbors(from))
        if (oracle.distance(w, toward) == here - 1)
            return w;
    throw InvariantError("tree step: no closer neighbor in a connected factor");
}

bool contains(const std::vector<int>& xs, int x) {
    return std::find(xs.begin(), xs.end(), x) != xs.end();
}

} // namespace

DistanceVector distance_vector(const ProductGraph& product, int zombie, int survivor) {
    DistanceVector out;
    out.entries.reserve(static_cast<std::size_t>(product.factor_count()));
    for (int i = 0; i < product.factor_count(); ++i) {
        int d = product.factor_distance(i, product.coordinate(zombie, i),
                                        product.coordinate(survivor, i));
        out.entries.push_back(d);
        out.total += d;
    }
    return out;
}

CoordinateMove three_tree_move(const ProductGraph& product, int zombie, int survivor,
                               TieBreak tiebreak) {
    DistanceVector vec = distance_vector(product, zombie, survivor);
    if (vec.total == 0)
        throw InvariantError("max-coordinate move: zombie already co-located");
    int best = 0;
    for (int i = 1; i < static_cast<int>(vec.entries.size()); ++i) {
        bool better = tiebreak == TieBreak::Leftmost
                          ? vec.entries[static_cast<std::size_t>(i)] > vec.entries[static_cast<std::size_t>(best)]
                          : vec.entries[static_cast<std::size_t>(i)] >= vec.entries[static_cast<std::size_t>(best)];
        if (better)
            best = i;
    }
    CoordinateMove mv;
    mv.coordinate = best;
    mv.from = product.coordinate(zombie, best);
    mv.to = tree_step(product, best, mv.from, product.coordinate(survivor, best));
    mv.new_position = product.with_coordinate(zombie, best, mv.to);
    return mv;
}

CoordinateMove home_move(const ProductGraph& product, int zombie, int survivor, int home) {
    int n = product.factor_count();
    if (home < 0 || home >= n)
        throw std::invalid_argument("home move: home coordinate out of range");
    for (int t = 0; t < n; ++t) {
        int c = (home + t) % n;
        int zc = product.coordinate(zombie, c);
        int sc = product.coordinate(survivor, c);
        if (zc == sc)
            continue;
        CoordinateMove mv;
        mv.coordinate = c;
        mv.from = zc;
        mv.to = tree_step(product, c, zc, sc);
        mv.new_position = product.with_coordinate(zombie, c, mv.to);
        return mv;
    }
    throw InvariantError("home move requested while co-located with the survivor");
}

ReachInfo reach(const ProductGraph& product, int zombie, int survivor, int home) {
    int n = product.factor_count();
    if (home < 0 || home >= n)
        throw std::invalid_argument("reach: home coordinate out of range");
    ReachInfo info;
    for (int t = 0; t < n; ++t) {
        int c = (home + t) % n;
        if (product.coordinate(zombie, c) != product.coordinate(survivor, c))
            break;
        ++info.reach;
        info.within.push_back(c);
    }
    return info;
}

PlacementPlan initial_placement(const ProductGraph& product, int zombie_count) {
    int n = product.factor_count();
    if (n < 2)
        throw std::invalid_argument("zombie placement: need at least two factors");
    if (!product.factors_are_trees())
        throw std::invalid_argument("zombie placement: factors must be trees");
    if (product.factor(0).vertex_count() < 2)
        throw std::invalid_argument("zombie placement: the first factor needs an edge");

    int k = zombie_count;
    if (k == 0)
        k = (2 * n + 2) / 3; // ceil(2n/3)
    if (k < 1)
        throw std::invalid_argument("zombie placement: zombie count must be positive");

    PlacementPlan plan;
    plan.zombie_count = k;
    plan.case_tag = n % 3;

    // Two adjacent anchors: the endpoints of the first factor's first edge.
    const auto anchor_edge = product.factor(0).edges().front();
    std::vector<int> coords(static_cast<std::size_t>(n), 0);
    coords[0] = anchor_edge.first;
    const int x = product.flatten(coords);
    coords[0] = anchor_edge.second;
    const int y = product.flatten(coords);

    if (k == 1) {
        plan.pair_count = 0;
        plan.positions = {x};
        plan.homes = {0};
        return plan;
    }

    if (k % 2 == 0) {
        int pairs = k / 2;
        if (3 * (pairs - 1) > n - 1)
            throw std::invalid_argument("zombie placement: too many pairs for the factor count");
        plan.pair_count = pairs;
        plan.positions.assign(static_cast<std::size_t>(k), x);
        plan.homes.assign(static_cast<std::size_t>(k), 0);
        for (int i = 0; i < pairs; ++i) {
            plan.positions[static_cast<std::size_t>(pairs + i)] = y;
            plan.homes[static_cast<std::size_t>(i)] = 3 * i;
            plan.homes[static_cast<std::size_t>(pairs + i)] = 3 * i;
        }
        return plan;
    }

    int pairs = k / 2; // odd k >= 3: `pairs` couples plus one rover
    if (3 * pairs - 2 > n - 1)
        throw std::invalid_argument("zombie placement: too many zombies for the factor count");
    plan.pair_count = pairs;
    plan.positions.assign(static_cast<std::size_t>(k), x);
    plan.homes.assign(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < pairs; ++i) {
        plan.positions[static_cast<std::size_t>(pairs + i)] = y;
        plan.homes[static_cast<std::size_t>(i)] = 3 * i;
        plan.homes[static_cast<std::size_t>(pairs + i)] = 3 * i + 1;
    }
    plan.homes[static_cast<std::size_t>(k - 1)] = n - 1; // rover sweeps from the last coordinate
    return plan;
}

std::vector<bool> parity_signature(const ProductGraph& product,
                                   const std::vector<int>& zombie_positions, int survivor) {
    int pairs = static_cast<int>(zombie_positions.size()) / 2;
    std::vector<bool> out;
    out.reserve(static_cast<std::size_t>(pairs));
    for (int i = 0; i < pairs; ++i) {
        int sum = product_distance(product, zombie_positions[static_cast<std::size_t>(i)], survivor) +
                  product_distance(product, zombie_positions[static_cast<std::size_t>(pairs + i)], survivor);
        out.push_back(sum % 2 != 0);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Level-chain machinery shared by both scripted strategies.
//
// A level owns a cyclic list of coordinates and a block of zombies, arranged
// as `pair_count` couples (x-block then y-block) plus, in rover layout, one
// extra zombie. Stages: 0 = home sweep, 1 = pair endgame on the trailing
// coordinate trio (rover layout: catch-up on the trailing coordinate),
// 2 = mimic the trailing block and delegate the rest to a sub-level.
// ---------------------------------------------------------------------------

namespace {

struct Level {
    bool rover = false;
    std::vector<int> coords;  // factor ids, cyclic scan order
    std::vector<int> members; // zombie ids: x-block, y-block, then rover if any
    std::vector<int> homes;   // per member: position index into coords
    int pair_count = 0;
    int stage = 0;
    int fired = -1;  // pair index (layouts with couples) or rover member index
    int star_a = -1; // member index of the leftmost endgame zombie
    int star_b = -1; // member index of the rightmost endgame zombie
};

using LevelChain = std::vector<Level>;

// Stage-0 levels fire once a couple agrees with the survivor on this many
// consecutive coordinates from its home. Two-coordinate levels behave like a
// coordinate pair padded with a silent third coordinate, hence the floor.
int endgame_threshold(int coord_count) {
    return std::max(1, coord_count - 2);
}

class ConfigStore {
  public:
    int intern(LevelChain chain) {
        std::vector<int> key;
        key.reserve(chain.size() * 2);
        for (const Level& level : chain) {
            key.push_back(level.stage);
            key.push_back(level.fired);
        }
        auto [it, fresh] = ids_.try_emplace(std::move(key), static_cast<int>(chains_.size()));
        if (fresh)
            chains_.push_back(std::move(chain));
        return it->second;
    }

    const LevelChain& chain(int id) const { return chains_.at(static_cast<std::size_t>(id)); }

  private:
    std::vector<LevelChain> chains_;
    std::map<std::vector<int>, int> ids_;
};

class ScriptImpl final : public ScriptedStrategy {
  public:
    ScriptImpl(const ProductGraph& user_product, int zombie_count, bool endgame_only)
        : product_(pad(user_product)) {
        if (!product_.factors_are_trees())
            throw std::invalid_argument("scripted strategies: factors must be trees");
        if (endgame_only) {
            if (user_product.factor_count() > 3)
                throw std::invalid_argument("three-tree strategy: at most three factors");
            if (zombie_count != 0 && zombie_count != 2)
                throw std::invalid_argument("three-tree strategy: exactly two zombies");
            zombie_count = 2;
        }
        plan_ = initial_placement(product_, zombie_count);

        const int n = product_.factor_count();
        const int k = plan_.zombie_count;
        Level top;
        top.coords.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            top.coords[static_cast<std::size_t>(i)] = i;
        top.members.resize(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            top.members[static_cast<std::size_t>(i)] = i;
        top.homes = plan_.homes; // coordinates == positions before any rotation
        top.pair_count = plan_.pair_count;
        if (endgame_only) {
            top.stage = 1;
            top.fired = 0;
            top.star_a = 0;
            top.star_b = 1;
        } else if (k >= 3 && k % 2 != 0) {
            top.rover = true;
        }
        initial_config_ = configs_.intern({std::move(top)});
    }

    const ProductGraph& product() const override { return product_; }
    int zombie_count() const override { return plan_.zombie_count; }
    const std::vector<int>& zombie_placement() const override { return plan_.positions; }
    int initial_config() const override { return initial_config_; }

    void joint_move(int config, const std::vector<int>& zombies, int survivor,
                    const SurvivorAction& action, std::vector<ZombieStep>& out) override {
        const LevelChain& chain = configs_.chain(config);
        out.assign(zombies.size(), ZombieStep{});
        collect_moves(chain, 0, zombies, survivor, action, out);
        for (int i = 0; i < static_cast<int>(out.size()); ++i)
            if (out[static_cast<std::size_t>(i)].zombie != i)
                throw InvariantError("joint move left a zombie without a move");
    }

    int advance_config(int config, const std::vector<int>& zombies, int survivor) override {
        LevelChain chain = configs_.chain(config);
        bool changed = true;
        while (changed) {
            changed = false;
            Level& level = chain.back();
            const int n = static_cast<int>(level.coords.size());
            if (level.stage == 0 && !level.rover) {
                for (int i = 0; i < level.pair_count && !changed; ++i) {
                    int a = level.members[static_cast<std::size_t>(i)];
                    int b = level.members[static_cast<std::size_t>(level.pair_count + i)];
                    int home = level.homes[static_cast<std::size_t>(i)];
                    if (level_reach(level, zombies[static_cast<std::size_t>(a)], survivor, home) >=
                            endgame_threshold(n) &&
                        level_reach(level, zombies[static_cast<std::size_t>(b)], survivor, home) >=
                            endgame_threshold(n)) {
                        rotate_level(level, home);
                        level.stage = 1;
                        level.fired = i;
                        level.star_a = i;
                        level.star_b = level.pair_count + i;
                        for (int m = 0; m < static_cast<int>(level.members.size()); ++m)
                            if (m != level.star_a && m != level.star_b)
                                level.homes[static_cast<std::size_t>(m)] = n - 3;
                        changed = true;
                    }
                }
            } else if (level.stage == 0 && level.rover) {
                // Only zombies that started on the x anchor may become the rover star.
                std::vector<int> order;
                for (int i = 0; i < level.pair_count; ++i)
                    order.push_back(i);
                order.push_back(2 * level.pair_count);
                for (int idx : order) {
                    int z = level.members[static_cast<std::size_t>(idx)];
                    int home = level.homes[static_cast<std::size_t>(idx)];
                    if (level_reach(level, zombies[static_cast<std::size_t>(z)], survivor, home) >= n - 1) {
                        rotate_level(level, home);
                        level.stage = 1;
                        level.fired = idx;
                        for (int m = 0; m < static_cast<int>(level.members.size()); ++m)
                            if (m != idx)
                                level.homes[static_cast<std::size_t>(m)] = n - 1;
                        changed = true;
                        break;
                    }
                }
            } else if (level.stage == 1 && !level.rover) {
                bool any_rest = false;
                bool all_caught = true;
                for (int m = 0; m < static_cast<int>(level.members.size()); ++m) {
                    if (m == level.star_a || m == level.star_b)
                        continue;
                    any_rest = true;
                    int z = level.members[static_cast<std::size_t>(m)];
                    if (level_reach(level, zombies[static_cast<std::size_t>(z)], survivor, n - 3) < 3)
                        all_caught = false;
                }
                if (any_rest && all_caught) {
                    level.stage = 2;
                    Level sub = make_pair_sub(level);
                    chain.push_back(std::move(sub));
                    changed = true;
                }
            } else if (level.stage == 1 && level.rover) {
                const int last = level.coords[static_cast<std::size_t>(n - 1)];
                bool all_caught = true;
                for (int m = 0; m < static_cast<int>(level.members.size()); ++m) {
                    if (m == level.fired)
                        continue;
                    int z = level.members[static_cast<std::size_t>(m)];
                    if (product_.coordinate(zombies[static_cast<std::size_t>(z)], last) !=
                        product_.coordinate(survivor, last))
                        all_caught = false;
                }
                if (all_caught) {
                    level.stage = 2;
                    Level sub = make_rover_sub(level);
                    chain.push_back(std::move(sub));
                    changed = true;
                }
            }
        }
        return configs_.intern(std::move(chain));
    }

    void check_midpoint(int prev_config, const std::vector<int>& prev_zombies, int prev_survivor,
                        const std::vector<ZombieStep>& steps, int config,
                        const std::vector<int>& zombies, int survivor,
                        VerifyStats& stats) const override {
        const LevelChain& before = configs_.chain(prev_config);
        const LevelChain& after = configs_.chain(config);

        for (const Level& level : after) {
            check_pair_parity(level, zombies, survivor, stats);
            check_agreement(level, zombies, survivor, stats);
        }
        check_reach_monotone(before, after, steps, prev_zombies, prev_survivor, zombies, survivor,
                             stats);
        check_trio_shape(before, after, prev_zombies, prev_survivor, zombies, survivor, stats);
    }

    std::string phase_label(int config) const override {
        const LevelChain& chain = configs_.chain(config);
        std::string out;
        for (const Level& level : chain) {
            if (!out.empty())
                out += '>';
            switch (level.stage) {
            case 0: out += "HomeSweep"; break;
            case 1: out += "PairEndgame"; break;
            default: out += "MimicSubproduct"; break;
            }
        }
        return out;
    }

  private:
    static ProductGraph pad(const ProductGraph& user_product) {
        if (user_product.factor_count() != 2)
            return user_product;
        // A silent single-vertex third factor; flat vertex ids are unchanged.
        std::vector<Graph> factors{user_product.factor(0), user_product.factor(1),
                                   single_vertex_graph()};
        return ProductGraph(std::move(factors));
    }

    int coord_of(int flat, int factor) const { return product_.coordinate(flat, factor); }

    int level_distance(const Level& level, int zombie, int survivor) const {
        int total = 0;
        for (int c : level.coords)
            total += product_.factor_distance(c, coord_of(zombie, c), coord_of(survivor, c));
        return total;
    }

    int level_reach(const Level& level, int zombie, int survivor, int start) const {
        const int n = static_cast<int>(level.coords.size());
        int run = 0;
        for (int t = 0; t < n; ++t) {
            int c = level.coords[static_cast<std::size_t>((start + t) % n)];
            if (coord_of(zombie, c) != coord_of(survivor, c))
                break;
            ++run;
        }
        return run;
    }

    static void rotate_level(Level& level, int pivot) {
        const int n = static_cast<int>(level.coords.size());
        std::vector<int> rotated(static_cast<std::size_t>(n));
        for (int p = 0; p < n; ++p)
            rotated[static_cast<std::size_t>(p)] = level.coords[static_cast<std::size_t>((pivot + p) % n)];
        level.coords = std::move(rotated);
        for (int& home : level.homes)
            if (home >= 0)
                home = (home - pivot + n) % n;
    }

    Level make_pair_sub(const Level& parent) const {
        const int n = static_cast<int>(parent.coords.size());
        Level sub;
        sub.coords.assign(parent.coords.begin(), parent.coords.begin() + (n - 3));
        if (sub.coords.empty())
            throw InvariantError("subproduct level lost every coordinate");
        for (int i = 0; i < parent.pair_count; ++i)
            if (i != parent.star_a)
                sub.members.push_back(parent.members[static_cast<std::size_t>(i)]);
        for (int i = parent.pair_count; i < 2 * parent.pair_count; ++i)
            if (i != parent.star_b)
                sub.members.push_back(parent.members[static_cast<std::size_t>(i)]);
        sub.pair_count = parent.pair_count - 1;
        sub.homes.assign(sub.members.size(), 0);
        for (int j = 0; j < sub.pair_count; ++j) {
            if (3 * j >= static_cast<int>(sub.coords.size()))
                throw InvariantError("subproduct level: home layout does not fit");
            sub.homes[static_cast<std::size_t>(j)] = 3 * j;
            sub.homes[static_cast<std::size_t>(sub.pair_count + j)] = 3 * j;
        }
        return sub;
    }

    Level make_rover_sub(const Level& parent) const {
        const int n = static_cast<int>(parent.coords.size());
        Level sub;
        sub.coords.assign(parent.coords.begin(), parent.coords.begin() + (n - 1));
        // x-block survivors keep their order, then the y-block; couples re-form
        // as (j, pair_count + j).
        for (int i = 0; i < parent.pair_count; ++i)
            if (i != parent.fired)
                sub.members.push_back(parent.members[static_cast<std::size_t>(i)]);
        if (2 * parent.pair_count != parent.fired)
            sub.members.push_back(parent.members[static_cast<std::size_t>(2 * parent.pair_count)]);
        for (int i = parent.pair_count; i < 2 * parent.pair_count; ++i)
            sub.members.push_back(parent.members[static_cast<std::size_t>(i)]);
        sub.pair_count = parent.pair_count;
        sub.homes.assign(sub.members.size(), 0);
        for (int j = 0; j < sub.pair_count; ++j) {
            if (3 * j >= static_cast<int>(sub.coords.size()))
                throw InvariantError("subproduct level: home layout does not fit");
            sub.homes[static_cast<std::size_t>(j)] = 3 * j;
            sub.homes[static_cast<std::size_t>(sub.pair_count + j)] = 3 * j;
        }
        return sub;
    }

    int position_of(const Level& level, int factor) const {
        for (int p = 0; p < static_cast<int>(level.coords.size()); ++p)
            if (level.coords[static_cast<std::size_t>(p)] == factor)
                return p;
        return -1;
    }

    ZombieStep make_home_step(const Level& level, int depth, int member, int zombie_flat,
                              int survivor) const {
        const int n = static_cast<int>(level.coords.size());
        const int home = level.homes[static_cast<std::size_t>(member)];
        for (int t = 0; t < n; ++t) {
            int p = (home + t) % n;
            int c = level.coords[static_cast<std::size_t>(p)];
            int zc = coord_of(zombie_flat, c);
            int sc = coord_of(survivor, c);
            if (zc == sc)
                continue;
            ZombieStep step;
            step.zombie = level.members[static_cast<std::size_t>(member)];
            step.coordinate = c;
            step.from = zc;
            step.to = tree_step(product_, c, zc, sc);
            step.kind = MoveKind::Home;
            step.level_depth = depth;
            step.home_position = home;
            return step;
        }
        throw InvariantError("home move requested while co-located on the level's coordinates");
    }

    ZombieStep make_trio_step(const Level& level, int depth, int member, int zombie_flat,
                              int survivor, TieBreak tiebreak) const {
        const int n = static_cast<int>(level.coords.size());
        const int base = std::max(0, n - 3);
        int best_pos = -1;
        int best_dist = -1;
        for (int p = base; p < n; ++p) {
            int c = level.coords[static_cast<std::size_t>(p)];
            int d = product_.factor_distance(c, coord_of(zombie_flat, c), coord_of(survivor, c));
            bool better = tiebreak == TieBreak::Leftmost ? d > best_dist : d >= best_dist;
            if (better) {
                best_dist = d;
                best_pos = p;
            }
        }
        if (best_dist <= 0)
            throw InvariantError("endgame trio move with no distance left to close");
        int c = level.coords[static_cast<std::size_t>(best_pos)];
        ZombieStep step;
        step.zombie = level.members[static_cast<std::size_t>(member)];
        step.coordinate = c;
        step.from = coord_of(zombie_flat, c);
        step.to = tree_step(product_, c, step.from, coord_of(survivor, c));
        step.kind = MoveKind::TrioEndgame;
        step.level_depth = depth;
        return step;
    }

    ZombieStep make_mimic_step(const Level& level, int depth, int member, int zombie_flat,
                               const SurvivorAction& action) const {
        int zc = coord_of(zombie_flat, action.coordinate);
        if (zc != action.from)
            throw InvariantError("mimic requested without coordinate agreement");
        ZombieStep step;
        step.zombie = level.members[static_cast<std::size_t>(member)];
        step.coordinate = action.coordinate;
        step.from = zc;
        step.to = action.to;
        step.kind = MoveKind::Mimic;
        step.level_depth = depth;
        return step;
    }

    void collect_moves(const LevelChain& chain, int depth, const std::vector<int>& zombies,
                       int survivor, const SurvivorAction& action,
                       std::vector<ZombieStep>& slots) const {
        const Level& level = chain[static_cast<std::size_t>(depth)];
        const int n = static_cast<int>(level.coords.size());
        auto zpos = [&](int member) {
            return zombies[static_cast<std::size_t>(level.members[static_cast<std::size_t>(member)])];
        };
        auto put = [&](ZombieStep step) { slots[static_cast<std::size_t>(step.zombie)] = step; };

        if (level.stage == 0) {
            for (int m = 0; m < static_cast<int>(level.members.size()); ++m)
                put(make_home_step(level, depth, m, zpos(m), survivor));
            return;
        }

        const int pos = action.moved ? position_of(level, action.coordinate) : -1;
        if (!level.rover) {
            if (action.moved && pos >= 0 && pos <= n - 4) {
                put(make_mimic_step(level, depth, level.star_a, zpos(level.star_a), action));
                put(make_mimic_step(level, depth, level.star_b, zpos(level.star_b), action));
            } else {
                put(make_trio_step(level, depth, level.star_a, zpos(level.star_a), survivor,
                                   TieBreak::Leftmost));
                put(make_trio_step(level, depth, level.star_b, zpos(level.star_b), survivor,
                                   TieBreak::Rightmost));
            }
            if (level.stage == 1) {
                for (int m = 0; m < static_cast<int>(level.members.size()); ++m)
                    if (m != level.star_a && m != level.star_b)
                        put(make_home_step(level, depth, m, zpos(m), survivor));
            } else if (action.moved && pos >= n - 3) {
                for (int m = 0; m < static_cast<int>(level.members.size()); ++m)
                    if (m != level.star_a && m != level.star_b)
                        put(make_mimic_step(level, depth, m, zpos(m), action));
            } else {
                collect_moves(chain, depth + 1, zombies, survivor, action, slots);
            }
            return;
        }

        // Rover layout: the star sweeps over all coordinates from position 0.
        put(make_home_step(level, depth, level.fired, zpos(level.fired), survivor));
        if (level.stage == 1) {
            for (int m = 0; m < static_cast<int>(level.members.size()); ++m)
                if (m != level.fired)
                    put(make_home_step(level, depth, m, zpos(m), survivor));
        } else if (action.moved && pos == n - 1) {
            for (int m = 0; m < static_cast<int>(level.members.size()); ++m)
                if (m != level.fired)
                    put(make_mimic_step(level, depth, m, zpos(m), action));
        } else {
            collect_moves(chain, depth + 1, zombies, survivor, action, slots);
        }
    }

    void check_pair_parity(const Level& level, const std::vector<int>& zombies, int survivor,
                           VerifyStats& stats) const {
        for (int j = 0; j < level.pair_count; ++j) {
            int a = level.members[static_cast<std::size_t>(j)];
            int b = level.members[static_cast<std::size_t>(level.pair_count + j)];
            int sum = level_distance(level, zombies[static_cast<std::size_t>(a)], survivor) +
                      level_distance(level, zombies[static_cast<std::size_t>(b)], survivor);
            ++stats.parity_checks;
            if (sum % 2 == 0)
                throw InvariantError("couple lost its odd summed distance to the survivor");
        }
    }

    void check_agreement(const Level& level, const std::vector<int>& zombies, int survivor,
                         VerifyStats& stats) const {
        const int n = static_cast<int>(level.coords.size());
        if (!level.rover && level.stage >= 1) {
            for (int p = 0; p + 3 < n; ++p) {
                int c = level.coords[static_cast<std::size_t>(p)];
                for (int m : {level.star_a, level.star_b}) {
                    int z = level.members[static_cast<std::size_t>(m)];
                    ++stats.agreement_checks;
                    if (coord_of(zombies[static_cast<std::size_t>(z)], c) != coord_of(survivor, c))
                        throw InvariantError("endgame couple drifted off the watched block");
                }
            }
        }
        if (!level.rover && level.stage == 2) {
            for (int m = 0; m < static_cast<int>(level.members.size()); ++m) {
                if (m == level.star_a || m == level.star_b)
                    continue;
                int z = level.members[static_cast<std::size_t>(m)];
                for (int p = std::max(0, n - 3); p < n; ++p) {
                    int c = level.coords[static_cast<std::size_t>(p)];
                    ++stats.agreement_checks;
                    if (coord_of(zombies[static_cast<std::size_t>(z)], c) != coord_of(survivor, c))
                        throw InvariantError("delegated zombie lost the trailing trio agreement");
                }
            }
        }
        if (level.rover && level.stage == 2) {
            int c = level.coords[static_cast<std::size_t>(n - 1)];
            for (int m = 0; m < static_cast<int>(level.members.size()); ++m) {
                if (m == level.fired)
                    continue;
                int z = level.members[static_cast<std::size_t>(m)];
                ++stats.agreement_checks;
                if (coord_of(zombies[static_cast<std::size_t>(z)], c) != coord_of(survivor, c))
                    throw InvariantError("delegated zombie lost the trailing coordinate agreement");
            }
        }
    }

    void check_reach_monotone(const LevelChain& before, const LevelChain& after,
                              const std::vector<ZombieStep>& steps,
                              const std::vector<int>& prev_zombies, int prev_survivor,
                              const std::vector<int>& zombies, int survivor,
                              VerifyStats& stats) const {
        for (const ZombieStep& step : steps) {
            if (step.kind != MoveKind::Home)
                continue;
            const std::size_t depth = static_cast<std::size_t>(step.level_depth);
            if (depth >= before.size() || depth >= after.size())
                continue;
            const Level& level0 = before[depth];
            const Level& level1 = after[depth];
            if (level0.coords != level1.coords)
                continue; // rotated between the midpoints: fresh window
            int member = -1;
            for (int m = 0; m < static_cast<int>(level1.members.size()); ++m)
                if (level1.members[static_cast<std::size_t>(m)] == step.zombie)
                    member = m;
            if (member < 0 || level0.members != level1.members)
                continue;
            if (level0.homes[static_cast<std::size_t>(member)] != step.home_position ||
                level1.homes[static_cast<std::size_t>(member)] != step.home_position)
                continue;
            ++stats.reach_checks;
            int r0 = level_reach(level0, prev_zombies[static_cast<std::size_t>(step.zombie)],
                                 prev_survivor, step.home_position);
            int r1 = level_reach(level1, zombies[static_cast<std::size_t>(step.zombie)], survivor,
                                 step.home_position);
            if (r1 < r0)
                throw InvariantError("home-play reach decreased between midpoints");
        }
    }

    void check_trio_shape(const LevelChain& before, const LevelChain& after,
                          const std::vector<int>& prev_zombies, int prev_survivor,
                          const std::vector<int>& zombies, int survivor,
                          VerifyStats& stats) const {
        const std::size_t depths = std::min(before.size(), after.size());
        for (std::size_t d = 0; d < depths; ++d) {
            const Level& level0 = before[d];
            const Level& level1 = after[d];
            if (level1.coords.size() != 3 || level1.rover || level1.star_a < 0)
                continue;
            if (level0.stage < 1 || level0.star_a != level1.star_a || level0.coords != level1.coords)
                continue;
            auto vec3 = [&](const Level& level, int zombie, int s) {
                std::array<int, 3> v{};
                for (int i = 0; i < 3; ++i) {
                    int c = level.coords[static_cast<std::size_t>(i)];
                    v[static_cast<std::size_t>(i)] =
                        product_.factor_distance(c, coord_of(zombie, c), coord_of(s, c));
                }
                return v;
            };
            auto left_shape = [](const std::array<int, 3>& v) {
                return v == std::array<int, 3>{0, 1, 1} || v == std::array<int, 3>{0, 0, 1};
            };
            auto right_shape = [](const std::array<int, 3>& v) {
                return v == std::array<int, 3>{1, 1, 0} || v == std::array<int, 3>{1, 0, 0};
            };
            const std::array<int, 3> zero{0, 0, 0};
            int za = level1.members[static_cast<std::size_t>(level1.star_a)];
            int zb = level1.members[static_cast<std::size_t>(level1.star_b)];
            auto va0 = vec3(level0, prev_zombies[static_cast<std::size_t>(za)], prev_survivor);
            auto vb0 = vec3(level0, prev_zombies[static_cast<std::size_t>(zb)], prev_survivor);
            if (!left_shape(va0) || !right_shape(vb0))
                continue;
            ++stats.shape_checks;
            auto va1 = vec3(level1, zombies[static_cast<std::size_t>(za)], survivor);
            auto vb1 = vec3(level1, zombies[static_cast<std::size_t>(zb)], survivor);
            if (!((left_shape(va1) || va1 == zero) && (right_shape(vb1) || vb1 == zero)))
                throw InvariantError("endgame trio left the closing shape family");
        }
    }

    ProductGraph product_;
    PlacementPlan plan_;
    ConfigStore configs_;
    int initial_config_ = 0;
};

} // namespace

std::unique_ptr<ScriptedStrategy> make_three_tree_strategy(const ProductGraph& product) {
    return std::make_unique<ScriptImpl>(product, 2, true);
}

std::unique_ptr<ScriptedStrategy> make_composite_strategy(const ProductGraph& product,
                                                          int zombie_count) {
    return std::make_unique<ScriptImpl>(product, zombie_count, false);
}

StepOutcome composite_strategy_step(ScriptedStrategy& strategy, int config,
                                    const std::vector<int>& zombies, int survivor,
                                    const SurvivorAction& action) {
    StepOutcome out;
    strategy.joint_move(config, zombies, survivor, action, out.steps);
    const ProductGraph& product = strategy.product();
    out.zombies_after = zombies;
    for (const ZombieStep& step : out.steps)
        out.zombies_after[static_cast<std::size_t>(step.zombie)] =
            product.with_coordinate(zombies[static_cast<std::size_t>(step.zombie)], step.coordinate,
                                    step.to);
    out.captured = contains(out.zombies_after, survivor);
    out.config_after =
        out.captured ? config : strategy.advance_config(config, out.zombies_after, survivor);
    return out;
}

// ---------------------------------------------------------------------------
// Exhaustive verifier.
// ---------------------------------------------------------------------------

std::string TraceLine::tsv() const {
    return std::to_string(round) + '\t' + mover + '\t' + before + '\t' + action + '\t' + after +
           '\t' + phase;
}

namespace {

struct NodeKey {
    std::array<std::int32_t, 8> v{};
    bool operator==(const NodeKey& other) const { return v == other.v; }
};

struct NodeKeyHash {
    std::size_t operator()(const NodeKey& key) const {
        return static_cast<std::size_t>(fnv1a(key.v.data(), key.v.size() * sizeof(std::int32_t)));
    }
};

class Verifier {
  public:
    Verifier(ScriptedStrategy& strategy, const VerifyOptions& options)
        : strategy_(strategy), product_(strategy.product()), options_(options) {
        if (strategy_.zombie_count() > 6)
            throw std::invalid_argument("verifier: at most six zombies supported");
    }

    VerifyResult run() {
        VerifyResult result;
        try {
            int worst = -1;
            int worst_vertex = -1;
            for (int v = 0; v < product_.vertex_count(); ++v) {
                placement_vertex_ = v;
                path_.clear();
                int total = play_from_placement(v);
                if (total > worst) {
                    worst = total;
                    worst_vertex = v;
                }
            }
            result.kind = VerifyResult::Kind::Captured;
            result.worst_case_rounds = worst;
            if (options_.build_witness)
                result.witness = replay(worst_vertex, nullptr);
        } catch (const CycleSignal& signal) {
            result.kind = VerifyResult::Kind::EscapedCycle;
            result.detail = "survivor forces a repeated midpoint state (first reached in round " +
                            std::to_string(signal.first_round) + ", revisited in round " +
                            std::to_string(signal.round) + ")";
            if (options_.build_witness)
                result.witness = replay(escape_placement_, &escape_actions_);
        } catch (const LimitSignal& signal) {
            result.kind = VerifyResult::Kind::EscapedStepLimit;
            result.detail = "no capture within " + std::to_string(signal.round - 1) +
                            " rounds (diagnostic round limit " +
                            std::to_string(options_.max_rounds) + ")";
        }
        stats_.memo_nodes = static_cast<long long>(memo_.size());
        result.stats = stats_;
        return result;
    }

  private:
    struct CycleSignal {
        int first_round;
        int round;
    };
    struct LimitSignal {
        int round;
    };

    NodeKey make_key(const std::vector<int>& zombies, int survivor, int config) const {
        NodeKey key;
        key.v.fill(-1);
        for (std::size_t i = 0; i < zombies.size(); ++i)
            key.v[i] = zombies[i];
        key.v[6] = survivor;
        key.v[7] = config;
        return key;
    }

    std::vector<int> survivor_options(int survivor) const {
        std::vector<int> options{-1}; // pass first, then neighbors ascending
        for (Vertex w : product_.flat().neighbors(survivor))
            options.push_back(w);
        return options;
    }

    SurvivorAction decode_action(int from, int to) const {
        for (int i = 0; i < product_.factor_count(); ++i) {
            int a = product_.coordinate(from, i);
            int b = product_.coordinate(to, i);
            if (a != b)
                return SurvivorAction{true, i, a, b};
        }
        throw InvariantError("survivor move does not change any coordinate");
    }

    std::vector<int> apply_joint(const std::vector<int>& zombies, int survivor_after,
                                 const std::vector<ZombieStep>& steps) {
        if (steps.size() != zombies.size())
            throw InvariantError("joint move must move every zombie exactly once");
        std::vector<int> out(zombies);
        for (int i = 0; i < static_cast<int>(steps.size()); ++i) {
            const ZombieStep& step = steps[static_cast<std::size_t>(i)];
            if (step.zombie != i)
                throw InvariantError("joint move emitted steps out of zombie order");
            int z = zombies[static_cast<std::size_t>(i)];
            if (product_.coordinate(z, step.coordinate) != step.from)
                throw InvariantError("zombie step starts from a stale coordinate");
            if (!product_.factor(step.coordinate).has_edge(step.from, step.to))
                throw InvariantError("zombie step is not along a factor edge");
            int moved = product_.with_coordinate(z, step.coordinate, step.to);
            ++stats_.legality_checks;
            if (product_distance(product_, moved, survivor_after) !=
                product_distance(product_, z, survivor_after) - 1)
                throw InvariantError("zombie step fails to close in on the survivor");
            out[static_cast<std::size_t>(i)] = moved;
        }
        return out;
    }

    int play_from_placement(int v) {
        const std::vector<int>& placement = strategy_.zombie_placement();
        if (contains(placement, v))
            return 0;
        std::vector<ZombieStep> steps;
        strategy_.joint_move(strategy_.initial_config(), placement, v, SurvivorAction{}, steps);
        std::vector<int> moved = apply_joint(placement, v, steps);
        if (contains(moved, v))
            return 1;
        int config = strategy_.advance_config(strategy_.initial_config(), moved, v);
        ++stats_.midpoints;
        strategy_.check_midpoint(strategy_.initial_config(), placement, v, steps, config, moved, v,
                                 stats_);
        return 1 + dfs(moved, v, config, 1);
    }

    int dfs(const std::vector<int>& zombies, int survivor, int config, int round) {
        NodeKey key = make_key(zombies, survivor, config);
        auto it = memo_.find(key);
        if (it != memo_.end()) {
            if (it->second <= -2) {
                escape_actions_ = path_;
                escape_placement_ = placement_vertex_;
                throw CycleSignal{-(it->second) - 2, round};
            }
            return it->second;
        }
        if (static_cast<long long>(memo_.size()) >= options_.memo_budget)
            throw BudgetExceeded("strategy verification: midpoint memo budget exhausted");
        if (round > options_.max_rounds)
            throw LimitSignal{round};
        memo_[key] = -(round + 2); // on the stack, remembering its round
        int best = 0;
        std::vector<ZombieStep> steps;
        for (int option : survivor_options(survivor)) {
            int s2 = option < 0 ? survivor : option;
            path_.push_back(option);
            int candidate;
            if (contains(zombies, s2)) {
                candidate = 0; // suicide: capture completes this round
            } else {
                SurvivorAction action =
                    option < 0 ? SurvivorAction{} : decode_action(survivor, s2);
                steps.clear();
                strategy_.joint_move(config, zombies, s2, action, steps);
                std::vector<int> moved = apply_joint(zombies, s2, steps);
                if (contains(moved, s2)) {
                    candidate = 1;
                } else {
                    int next = strategy_.advance_config(config, moved, s2);
                    ++stats_.midpoints;
                    strategy_.check_midpoint(config, zombies, survivor, steps, next, moved, s2,
                                             stats_);
                    candidate = 1 + dfs(moved, s2, next, round + 1);
                }
            }
            path_.pop_back();
            best = std::max(best, candidate);
        }
        memo_[key] = best;
        return best;
    }

    // Worst survivor reply from a midpoint, valid once the whole space is
    // memoized.
    int best_action(const std::vector<int>& zombies, int survivor, int config) {
        int best = -1;
        int best_option = -1;
        std::vector<ZombieStep> steps;
        for (int option : survivor_options(survivor)) {
            int s2 = option < 0 ? survivor : option;
            int candidate;
            if (contains(zombies, s2)) {
                candidate = 0;
            } else {
                SurvivorAction action =
                    option < 0 ? SurvivorAction{} : decode_action(survivor, s2);
                steps.clear();
                strategy_.joint_move(config, zombies, s2, action, steps);
                std::vector<int> moved = apply_joint(zombies, s2, steps);
                if (contains(moved, s2)) {
                    candidate = 1;
                } else {
                    int next = strategy_.advance_config(config, moved, s2);
                    auto it = memo_.find(make_key(moved, s2, next));
                    if (it == memo_.end() || it->second < 0)
                        throw InvariantError("capture replay left the memoized state space");
                    candidate = 1 + it->second;
                }
            }
            if (candidate > best) {
                best = candidate;
                best_option = option;
            }
        }
        return best_option;
    }

    std::string coord_tuple(int flat) const {
        std::ostringstream os;
        os << '(';
        for (int i = 0; i < product_.factor_count(); ++i) {
            if (i)
                os << ',';
            os << product_.coordinate(flat, i);
        }
        os << ')';
        return os.str();
    }

    std::string positions_string(const std::vector<int>& zombies, int survivor) const {
        std::ostringstream os;
        for (std::size_t i = 0; i < zombies.size(); ++i) {
            if (i)
                os << ' ';
            os << 'Z' << (i + 1) << '=' << coord_tuple(zombies[i]);
        }
        if (survivor >= 0)
            os << " S=" << coord_tuple(survivor);
        return os.str();
    }

    std::string steps_string(const std::vector<ZombieStep>& steps) const {
        std::ostringstream os;
        for (std::size_t i = 0; i < steps.size(); ++i) {
            if (i)
                os << ' ';
            os << 'Z' << (steps[i].zombie + 1) << ":c" << steps[i].coordinate << ' '
               << steps[i].from << "->" << steps[i].to;
        }
        return os.str();
    }

    std::vector<TraceLine> replay(int placement_vertex, const std::vector<int>* scripted) {
        std::vector<TraceLine> lines;
        std::vector<int> zombies = strategy_.zombie_placement();
        int config = strategy_.initial_config();
        int survivor = placement_vertex;

        lines.push_back({0, "zombies", "-", "place", positions_string(zombies, -1),
                         strategy_.phase_label(config)});
        lines.push_back({0, "survivor", positions_string(zombies, -1), "place",
                         positions_string(zombies, survivor), strategy_.phase_label(config)});
        if (contains(zombies, survivor)) {
            lines.push_back({0, "result", positions_string(zombies, survivor),
                             "captured at placement", positions_string(zombies, survivor),
                             strategy_.phase_label(config)});
            return lines;
        }

        SurvivorAction last{};
        std::size_t cursor = 0;
        std::vector<ZombieStep> steps;
        for (int round = 1;; ++round) {
            steps.clear();
            strategy_.joint_move(config, zombies, survivor, last, steps);
            std::string before = positions_string(zombies, survivor);
            zombies = apply_joint(zombies, survivor, steps);
            lines.push_back({round, "zombies", before, steps_string(steps),
                             positions_string(zombies, survivor), strategy_.phase_label(config)});
            if (contains(zombies, survivor)) {
                lines.push_back({round, "result", positions_string(zombies, survivor), "captured",
                                 positions_string(zombies, survivor),
                                 strategy_.phase_label(config)});
                return lines;
            }
            config = strategy_.advance_config(config, zombies, survivor);

            int option;
            if (scripted) {
                if (cursor >= scripted->size()) {
                    lines.push_back({round, "result", positions_string(zombies, survivor),
                                     "cycle: this midpoint state repeats, the survivor evades forever",
                                     positions_string(zombies, survivor),
                                     strategy_.phase_label(config)});
                    return lines;
                }
                option = (*scripted)[cursor++];
            } else {
                option = best_action(zombies, survivor, config);
            }
            int s2 = option < 0 ? survivor : option;
            std::string sbefore = positions_string(zombies, survivor);
            std::string act;
            if (option < 0) {
                act = "pass";
                last = SurvivorAction{};
            } else {
                last = decode_action(survivor, s2);
                act = "c" + std::to_string(last.coordinate) + ' ' + std::to_string(last.from) +
                      "->" + std::to_string(last.to);
            }
            survivor = s2;
            lines.push_back({round, "survivor", sbefore, act, positions_string(zombies, survivor),
                             strategy_.phase_label(config)});
            if (contains(zombies, survivor)) {
                lines.push_back({round, "result", positions_string(zombies, survivor),
                                 "captured (survivor stepped onto a zombie)",
                                 positions_string(zombies, survivor),
                                 strategy_.phase_label(config)});
                return lines;
            }
        }
    }

    ScriptedStrategy& strategy_;
    const ProductGraph& product_;
    VerifyOptions options_;
    VerifyStats stats_;
    std::unordered_map<NodeKey, int, NodeKeyHash> memo_;
    std::vector<int> path_;
    int placement_vertex_ = -1;
    std::vector<int> escape_actions_;
    int escape_placement_ = -1;
};

} // namespace

VerifyResult verify_scripted_strategy(ScriptedStrategy& strategy, const VerifyOptions& options) {
    Verifier verifier(strategy, options);
    return verifier.run();
}

} // namespace pursuit
