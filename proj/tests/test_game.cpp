#include "pursuit/errors.hpp"
#include "pursuit/game.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

using namespace pursuit;

namespace {

std::set<std::vector<Vertex>> pursuer_targets(const std::vector<GameState>& states) {
    std::set<std::vector<Vertex>> out;
    for (const GameState& s : states)
        out.insert(s.pursuers);
    return out;
}

} // namespace

TEST_CASE("game specs reject degenerate setups") {
    CHECK_THROWS_AS(GameSpec(single_vertex_graph(), 1, PursuerRule::FlexibleAll,
                             EvaderRule::Flexible),
                    std::invalid_argument);
    Graph split(4);
    split.add_edge(0, 1);
    split.add_edge(2, 3);
    CHECK_THROWS_AS(GameSpec(split, 1, PursuerRule::FlexibleAll, EvaderRule::Flexible),
                    std::invalid_argument);
    CHECK_THROWS_AS(GameSpec(path_graph(3), 0, PursuerRule::FlexibleAll, EvaderRule::Flexible),
                    std::invalid_argument);
}

TEST_CASE("per-pursuer options follow the movement rule") {
    Graph p4 = path_graph(4);
    GameSpec flexible(p4, 1, PursuerRule::FlexibleAll, EvaderRule::Flexible);
    GameSpec all_move(p4, 1, PursuerRule::ActiveAll, EvaderRule::Flexible);
    GameSpec zombie(p4, 1, PursuerRule::Zombie, EvaderRule::Flexible);

    CHECK(pursuer_move_options(flexible, 1, 3) == std::vector<Vertex>{0, 1, 2});
    CHECK(pursuer_move_options(all_move, 1, 3) == std::vector<Vertex>{0, 2});
    CHECK(pursuer_move_options(zombie, 1, 3) == std::vector<Vertex>{2});
    // Asking a zombie to move when already co-located is a caller bug.
    CHECK_THROWS_AS(pursuer_move_options(zombie, 3, 3), InvariantError);

    // A zombie on a cycle can have two strictly-closer steps.
    GameSpec ring(cycle_graph(4), 1, PursuerRule::Zombie, EvaderRule::Flexible);
    CHECK(pursuer_move_options(ring, 0, 2) == std::vector<Vertex>{1, 3});

    GameSpec active_evader(p4, 1, PursuerRule::FlexibleAll, EvaderRule::Active);
    CHECK(evader_move_options(active_evader, 1) == std::vector<Vertex>{0, 2});
    CHECK(evader_move_options(flexible, 1) == std::vector<Vertex>{0, 1, 2});
    CHECK(evader_move_options(active_evader, 0) == std::vector<Vertex>{1});
}

TEST_CASE("joint enumerator emits every aligned tuple once, back fastest") {
    std::vector<Vertex> first{10, 20};
    std::vector<Vertex> second{1, 2, 3};
    JointMoveEnumerator e({&first, &second});
    std::vector<std::vector<Vertex>> seen;
    std::vector<Vertex> tuple;
    while (e.next(tuple))
        seen.push_back(tuple);
    std::vector<std::vector<Vertex>> expected{{10, 1}, {10, 2}, {10, 3},
                                              {20, 1}, {20, 2}, {20, 3}};
    CHECK(seen == expected);
}

TEST_CASE("flexible pursuers may all stand still") {
    GameSpec spec(path_graph(2), 1, PursuerRule::FlexibleAll, EvaderRule::Flexible);
    GameState s = make_state({0}, 1, Phase::PursuersToMove);
    std::vector<GameState> next = pursuer_successors(spec, s);
    REQUIRE(next.size() == 2);
    CHECK(next[0].pursuers == std::vector<Vertex>{0});
    CHECK(next[0].phase == Phase::EvaderToMove);
    CHECK(next[1].pursuers == std::vector<Vertex>{1});
    CHECK(next[1].phase == Phase::Captured); // landed on the evader
    CHECK(next[1].evader == 1);
}

TEST_CASE("the at-least-one rule only removes the all-stay tuple") {
    GameSpec spec(path_graph(2), 2, PursuerRule::ActiveSubset, EvaderRule::Active);
    GameState s = make_state({0, 0}, 1, Phase::PursuersToMove);
    std::vector<GameState> next = pursuer_successors(spec, s);
    // Tuples (0,1), (1,0), (1,1) survive; as multisets {0,1} and {1,1}.
    CHECK(pursuer_targets(next) ==
          std::set<std::vector<Vertex>>{{0, 1}, {1, 1}});
    for (const GameState& t : next)
        CHECK(t.phase == Phase::Captured);

    // One pursuer holding still is fine as long as the other steps.
    GameSpec wide(path_graph(4), 2, PursuerRule::ActiveSubset, EvaderRule::Active);
    GameState far = make_state({0, 3}, 2, Phase::PursuersToMove);
    std::set<std::vector<Vertex>> targets = pursuer_targets(pursuer_successors(wide, far));
    CHECK(targets.count({0, 2}) == 1);     // only the right pursuer moves
    CHECK(targets.count({1, 3}) == 1);     // only the left pursuer moves
    CHECK(targets.count({0, 3}) == 0);     // both staying is forbidden
}

TEST_CASE("all-active pursuers cannot hold position") {
    GameSpec spec(path_graph(3), 2, PursuerRule::ActiveAll, EvaderRule::Flexible);
    GameState s = make_state({0, 2}, 1, Phase::PursuersToMove);
    std::vector<GameState> next = pursuer_successors(spec, s);
    REQUIRE(next.size() == 1);
    CHECK(next[0].pursuers == std::vector<Vertex>{1, 1});
    CHECK(next[0].phase == Phase::Captured);
}

TEST_CASE("zombies must close distance every turn") {
    GameSpec spec(path_graph(4), 2, PursuerRule::Zombie, EvaderRule::Flexible);
    GameState s = make_state({0, 1}, 3, Phase::PursuersToMove);
    std::vector<GameState> next = pursuer_successors(spec, s);
    REQUIRE(next.size() == 1);
    CHECK(next[0].pursuers == std::vector<Vertex>{1, 2});
    CHECK(next[0].phase == Phase::EvaderToMove);
}

TEST_CASE("evader replies include capture-by-suicide and respect activity") {
    GameSpec flexible(path_graph(2), 1, PursuerRule::FlexibleAll, EvaderRule::Flexible);
    GameState s = make_state({0}, 1, Phase::EvaderToMove);
    std::vector<GameState> next = evader_successors(flexible, s);
    REQUIRE(next.size() == 2);
    CHECK(next[0].evader == 0);
    CHECK(next[0].phase == Phase::Captured);
    CHECK(next[1].evader == 1);
    CHECK(next[1].phase == Phase::PursuersToMove);

    GameSpec active(path_graph(2), 1, PursuerRule::FlexibleAll, EvaderRule::Active);
    std::vector<GameState> forced = evader_successors(active, s);
    REQUIRE(forced.size() == 1);
    CHECK(forced[0].phase == Phase::Captured); // the only move walks into the pursuer
}

TEST_CASE("pursuer tuples that differ only by order collapse to one state") {
    GameSpec spec(path_graph(3), 2, PursuerRule::FlexibleAll, EvaderRule::Flexible);
    // From {1,1} the per-pursuer options are {0,1,2} each: 9 aligned tuples,
    // but only 6 distinct multisets.
    std::vector<GameState> next =
        pursuer_successors(spec, make_state({1, 1}, 0, Phase::PursuersToMove));
    CHECK(next.size() == 6);
    CHECK(pursuer_targets(next).size() == 6);
    CHECK(make_state({2, 0}, 1, Phase::EvaderToMove) ==
          make_state({0, 2}, 1, Phase::EvaderToMove));
}

TEST_CASE("placement runs pursuers first, then the evader sees them") {
    GameSpec spec(path_graph(3), 2, PursuerRule::FlexibleAll, EvaderRule::Flexible);
    std::vector<GameState> opening = placement_successors(spec, initial_state());
    CHECK(opening.size() == 6); // multisets of size 2 over 3 vertices
    for (const GameState& s : opening) {
        CHECK(s.phase == Phase::EvaderToPlace);
        CHECK(s.evader == kNotPlaced);
        CHECK(std::is_sorted(s.pursuers.begin(), s.pursuers.end()));
    }

    std::vector<GameState> replies = placement_successors(spec, opening.front());
    CHECK(replies.size() == 3); // every vertex, captured ones marked
    int captured = 0;
    for (const GameState& s : replies) {
        if (s.phase == Phase::Captured)
            ++captured;
        else
            CHECK(s.phase == Phase::PursuersToMove);
    }
    CHECK(captured == 1); // opening.front() is {0,0}; only vertex 0 is covered
}

TEST_CASE("captured is detected on co-occupation only") {
    CHECK(state_is_captured({0, 2}, 2));
    CHECK(state_is_captured({1, 1}, 1));
    CHECK_FALSE(state_is_captured({0, 2}, 1));
    CHECK_FALSE(state_is_captured({0, 2}, kNotPlaced));
}
