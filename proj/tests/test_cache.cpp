#include "pursuit/cache.hpp"

#include "pursuit/errors.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

using namespace pursuit;

namespace {

namespace fs = std::filesystem;

struct TempCache {
    fs::path dir;
    TempCache() {
        static int counter = 0;
        dir = fs::temp_directory_path() /
              ("pursuit-cache-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    }
    ~TempCache() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
};

bool same_value(const GameValue& a, const GameValue& b) {
    if (a.value != b.value || a.k_max != b.k_max || a.graph_hash != b.graph_hash)
        return false;
    if (a.per_k.size() != b.per_k.size())
        return false;
    for (std::size_t i = 0; i < a.per_k.size(); ++i) {
        if (a.per_k[i].k != b.per_k[i].k || a.per_k[i].pursuer_wins != b.per_k[i].pursuer_wins ||
            a.per_k[i].states != b.per_k[i].states ||
            a.per_k[i].placement != b.per_k[i].placement)
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("records round-trip through their text form") {
    GameValue v = game_number(cycle_graph(4), PursuerRule::Zombie, EvaderRule::Flexible, 3);
    std::string text = cache_record_text(v);
    auto parsed = parse_cache_record(text);
    REQUIRE(parsed.has_value());
    CHECK(same_value(*parsed, v));
    CHECK(parsed->pursuer_rule == v.pursuer_rule);
    CHECK(parsed->evader_rule == v.evader_rule);

    CHECK_FALSE(parse_cache_record("").has_value());
    CHECK_FALSE(parse_cache_record("pursuit-result 2\n").has_value());
    CHECK_FALSE(parse_cache_record(text + "trailing junk\n").has_value());
    std::string truncated = text.substr(0, text.size() / 2);
    CHECK_FALSE(parse_cache_record(truncated).has_value());
}

TEST_CASE("cache keys depend on graph, variant, and bound") {
    Graph c4 = cycle_graph(4);
    Graph p4 = path_graph(4);
    std::string base = ResultCache::key(c4, PursuerRule::Zombie, EvaderRule::Flexible, 3);
    CHECK(base == ResultCache::key(c4, PursuerRule::Zombie, EvaderRule::Flexible, 3));
    CHECK(base != ResultCache::key(p4, PursuerRule::Zombie, EvaderRule::Flexible, 3));
    CHECK(base != ResultCache::key(c4, PursuerRule::FlexibleAll, EvaderRule::Flexible, 3));
    CHECK(base != ResultCache::key(c4, PursuerRule::Zombie, EvaderRule::Flexible, 2));
    CHECK(base.size() == 16); // fixed-width hex
}

TEST_CASE("stores land atomically and load back identically") {
    TempCache tmp;
    ResultCache cache(tmp.dir);
    CHECK(fs::exists(tmp.dir)); // the constructor creates the directory

    Graph g = cycle_graph(5);
    CHECK_FALSE(cache.load(g, PursuerRule::FlexibleAll, EvaderRule::Flexible, 3).has_value());

    GameValue v = game_number(g, PursuerRule::FlexibleAll, EvaderRule::Flexible, 3);
    cache.store(g, v);
    auto hit = cache.load(g, PursuerRule::FlexibleAll, EvaderRule::Flexible, 3);
    REQUIRE(hit.has_value());
    CHECK(same_value(*hit, v));

    int files = 0;
    for (const auto& entry : fs::directory_iterator(tmp.dir)) {
        ++files;
        CHECK(entry.path().extension() == ".txt"); // no leftover temp files
    }
    CHECK(files == 1);
}

TEST_CASE("corrupt or mismatched records read as misses") {
    TempCache tmp;
    ResultCache cache(tmp.dir);
    Graph g = path_graph(4);
    fs::path record = cache.record_path(g, PursuerRule::Zombie, EvaderRule::Flexible, 2);
    std::ofstream(record) << "not a record at all\n";
    CHECK_FALSE(cache.load(g, PursuerRule::Zombie, EvaderRule::Flexible, 2).has_value());

    // A well-formed record for a different graph stored under this key is
    // also rejected: load re-checks the embedded identity.
    GameValue other = game_number(cycle_graph(4), PursuerRule::Zombie, EvaderRule::Flexible, 2);
    std::ofstream(record, std::ios::trunc) << cache_record_text(other);
    CHECK_FALSE(cache.load(g, PursuerRule::Zombie, EvaderRule::Flexible, 2).has_value());
}

TEST_CASE("cached_game_number computes once and then serves hits") {
    TempCache tmp;
    ResultCache cache(tmp.dir);
    Graph g = hypercube_graph(3);

    GameValue first =
        cached_game_number(&cache, g, PursuerRule::Zombie, EvaderRule::Flexible, 2);
    REQUIRE(first.value == 2);
    REQUIRE(cache.load(g, PursuerRule::Zombie, EvaderRule::Flexible, 2).has_value());

    GameValue second =
        cached_game_number(&cache, g, PursuerRule::Zombie, EvaderRule::Flexible, 2);
    CHECK(same_value(first, second));

    GameValue uncached = cached_game_number(nullptr, g, PursuerRule::Zombie,
                                            EvaderRule::Flexible, 2);
    CHECK(same_value(first, uncached));
}

TEST_CASE("a deterministic slice of hits is re-verified against the solver") {
    TempCache tmp;
    ResultCache cache(tmp.dir);
    Graph g = cycle_graph(4);

    // Find one spot-checked key and one unchecked key over the k_max space.
    int checked_k = -1;
    int unchecked_k = -1;
    for (int k = 1; k <= 200 && (checked_k < 0 || unchecked_k < 0); ++k) {
        bool selected =
            cache_spot_check_selected(ResultCache::key(g, PursuerRule::Zombie,
                                                       EvaderRule::Flexible, k));
        if (selected && checked_k < 0)
            checked_k = k;
        if (!selected && unchecked_k < 0)
            unchecked_k = k;
    }
    REQUIRE(checked_k > 0);
    REQUIRE(unchecked_k > 0);

    // Tampered record under a spot-checked key: the hit recomputes, notices,
    // and refuses to serve the lie.
    GameValue real = game_number(g, PursuerRule::Zombie, EvaderRule::Flexible, checked_k);
    GameValue lie = real;
    REQUIRE_FALSE(lie.per_k.empty());
    lie.per_k.back().states += 1;
    std::ofstream(cache.record_path(g, PursuerRule::Zombie, EvaderRule::Flexible, checked_k))
        << cache_record_text(lie);
    CHECK_THROWS_AS(cached_game_number(&cache, g, PursuerRule::Zombie, EvaderRule::Flexible,
                                       checked_k),
                    InvariantError);

    // The same tampering under an unchecked key is served as-is (the spot
    // check is a sampled defense, not a full audit).
    GameValue real2 = game_number(g, PursuerRule::Zombie, EvaderRule::Flexible, unchecked_k);
    GameValue lie2 = real2;
    REQUIRE_FALSE(lie2.per_k.empty());
    lie2.per_k.back().states += 1;
    std::ofstream(cache.record_path(g, PursuerRule::Zombie, EvaderRule::Flexible, unchecked_k))
        << cache_record_text(lie2);
    GameValue served = cached_game_number(&cache, g, PursuerRule::Zombie, EvaderRule::Flexible,
                                          unchecked_k);
    CHECK(served.per_k.back().states == lie2.per_k.back().states);
}
