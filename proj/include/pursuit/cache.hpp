#pragma once

#include "pursuit/graph.hpp"
#include "pursuit/solver.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace pursuit {

// On-disk memo of game_number results. One text file per record, named by a
// content key derived from the canonical graph text, the variant, and the
// pursuer-count range. Writes go through a temp file plus rename, so
// concurrent writers never expose partial records.
class ResultCache {
  public:
    explicit ResultCache(std::filesystem::path directory);

    const std::filesystem::path& directory() const { return directory_; }

    static std::string key(const Graph& graph, PursuerRule pursuer_rule, EvaderRule evader_rule,
                           int k_max);

    std::optional<GameValue> load(const Graph& graph, PursuerRule pursuer_rule,
                                  EvaderRule evader_rule, int k_max) const;
    void store(const Graph& graph, const GameValue& value) const;

    std::filesystem::path record_path(const Graph& graph, PursuerRule pursuer_rule,
                                      EvaderRule evader_rule, int k_max) const;

  private:
    std::filesystem::path directory_;
};

// Stable line-oriented serialization used by the cache files.
std::string cache_record_text(const GameValue& value);
std::optional<GameValue> parse_cache_record(const std::string& text);

// game_number with an optional cache in front. A fixed, deterministic slice
// of cache hits (chosen by hashing the record key) is recomputed and compared
// against the stored record; a disagreement throws InvariantError.
GameValue cached_game_number(const ResultCache* cache, const Graph& graph,
                             PursuerRule pursuer_rule, EvaderRule evader_rule, int k_max,
                             long long budget = kDefaultStateBudget);

// True when the spot check will re-solve on a hit for this key.
bool cache_spot_check_selected(const std::string& key);

} // namespace pursuit
