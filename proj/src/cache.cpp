#include "pursuit/cache.hpp"

#include "pursuit/errors.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <utility>

#include <unistd.h>

namespace pursuit {

namespace {

std::optional<std::pair<PursuerRule, EvaderRule>> rules_from_short_name(const std::string& name) {
    if (name == "c")
        return std::pair{PursuerRule::FlexibleAll, EvaderRule::Flexible};
    if (name == "c_fa")
        return std::pair{PursuerRule::FlexibleAll, EvaderRule::Active};
    if (name == "c_prime")
        return std::pair{PursuerRule::ActiveSubset, EvaderRule::Active};
    if (name == "c_aa")
        return std::pair{PursuerRule::ActiveAll, EvaderRule::Active};
    if (name == "c_af")
        return std::pair{PursuerRule::ActiveAll, EvaderRule::Flexible};
    if (name == "zombie")
        return std::pair{PursuerRule::Zombie, EvaderRule::Flexible};
    return std::nullopt;
}

std::string hex64(std::uint64_t value) {
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << value;
    return os.str();
}

bool records_agree(const GameValue& a, const GameValue& b) {
    if (a.pursuer_rule != b.pursuer_rule || a.evader_rule != b.evader_rule)
        return false;
    if (a.graph_hash != b.graph_hash || a.k_max != b.k_max || a.value != b.value)
        return false;
    if (a.per_k.size() != b.per_k.size())
        return false;
    for (std::size_t i = 0; i < a.per_k.size(); ++i) {
        const auto& x = a.per_k[i];
        const auto& y = b.per_k[i];
        if (x.k != y.k || x.pursuer_wins != y.pursuer_wins || x.states != y.states ||
            x.placement != y.placement)
            return false;
    }
    return true;
}

} // namespace

ResultCache::ResultCache(std::filesystem::path directory) : directory_(std::move(directory)) {
    std::filesystem::create_directories(directory_);
}

std::string ResultCache::key(const Graph& graph, PursuerRule pursuer_rule, EvaderRule evader_rule,
                             int k_max) {
    std::string text = graph.canonical_text();
    text += "variant ";
    text += variant_short_name(pursuer_rule, evader_rule);
    text += "\nkmax ";
    text += std::to_string(k_max);
    text += '\n';
    return hex64(fnv1a(text));
}

std::filesystem::path ResultCache::record_path(const Graph& graph, PursuerRule pursuer_rule,
                                               EvaderRule evader_rule, int k_max) const {
    return directory_ / (key(graph, pursuer_rule, evader_rule, k_max) + ".txt");
}

std::string cache_record_text(const GameValue& value) {
    std::ostringstream os;
    os << "pursuit-result 1\n";
    os << "variant " << variant_short_name(value.pursuer_rule, value.evader_rule) << '\n';
    os << "graph " << hex64(value.graph_hash) << '\n';
    os << "kmax " << value.k_max << '\n';
    if (value.value)
        os << "value " << *value.value << '\n';
    else
        os << "value exceeds\n";
    for (const GameValue::PerK& per : value.per_k) {
        os << "perk " << per.k << ' ' << (per.pursuer_wins ? "pursuer" : "evader") << ' '
           << per.states;
        for (Vertex v : per.placement)
            os << ' ' << v;
        os << '\n';
    }
    return os.str();
}

std::optional<GameValue> parse_cache_record(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "pursuit-result 1")
        return std::nullopt;

    GameValue value;
    std::string word;

    if (!std::getline(in, line))
        return std::nullopt;
    {
        std::istringstream ls(line);
        std::string name;
        if (!(ls >> word >> name) || word != "variant")
            return std::nullopt;
        auto rules = rules_from_short_name(name);
        if (!rules)
            return std::nullopt;
        value.pursuer_rule = rules->first;
        value.evader_rule = rules->second;
    }

    if (!std::getline(in, line))
        return std::nullopt;
    {
        std::istringstream ls(line);
        std::string hash;
        if (!(ls >> word >> hash) || word != "graph" || hash.size() != 16)
            return std::nullopt;
        value.graph_hash = std::stoull(hash, nullptr, 16);
    }

    if (!std::getline(in, line))
        return std::nullopt;
    {
        std::istringstream ls(line);
        if (!(ls >> word >> value.k_max) || word != "kmax" || value.k_max < 1)
            return std::nullopt;
    }

    if (!std::getline(in, line))
        return std::nullopt;
    {
        std::istringstream ls(line);
        std::string v;
        if (!(ls >> word >> v) || word != "value")
            return std::nullopt;
        if (v != "exceeds") {
            try {
                value.value = std::stoi(v);
            } catch (const std::exception&) {
                return std::nullopt;
            }
        }
    }

    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        GameValue::PerK per;
        std::string winner;
        if (!(ls >> word >> per.k >> winner >> per.states) || word != "perk")
            return std::nullopt;
        if (winner == "pursuer")
            per.pursuer_wins = true;
        else if (winner != "evader")
            return std::nullopt;
        Vertex v = 0;
        while (ls >> v)
            per.placement.push_back(v);
        value.per_k.push_back(std::move(per));
    }
    return value;
}

std::optional<GameValue> ResultCache::load(const Graph& graph, PursuerRule pursuer_rule,
                                           EvaderRule evader_rule, int k_max) const {
    std::ifstream in(record_path(graph, pursuer_rule, evader_rule, k_max));
    if (!in)
        return std::nullopt;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::optional<GameValue> value = parse_cache_record(buffer.str());
    if (!value)
        return std::nullopt; // treat a corrupt record as a miss; it gets rewritten
    if (value->pursuer_rule != pursuer_rule || value->evader_rule != evader_rule ||
        value->k_max != k_max || value->graph_hash != graph.identity_hash())
        return std::nullopt;
    return value;
}

void ResultCache::store(const Graph& graph, const GameValue& value) const {
    std::filesystem::create_directories(directory_);
    const std::filesystem::path target =
        record_path(graph, value.pursuer_rule, value.evader_rule, value.k_max);

    static std::atomic<unsigned> counter{0};
    std::filesystem::path temp = target;
    temp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter.fetch_add(1));

    {
        std::ofstream out(temp, std::ios::trunc);
        if (!out)
            throw std::runtime_error("cache: cannot write " + temp.string());
        out << cache_record_text(value);
    }
    std::filesystem::rename(temp, target); // atomic within one directory
}

bool cache_spot_check_selected(const std::string& key) {
    return fnv1a(key) % 16 == 0;
}

GameValue cached_game_number(const ResultCache* cache, const Graph& graph,
                             PursuerRule pursuer_rule, EvaderRule evader_rule, int k_max,
                             long long budget) {
    if (!cache)
        return game_number(graph, pursuer_rule, evader_rule, k_max, budget);

    if (std::optional<GameValue> hit = cache->load(graph, pursuer_rule, evader_rule, k_max)) {
        const std::string key = ResultCache::key(graph, pursuer_rule, evader_rule, k_max);
        if (cache_spot_check_selected(key)) {
            GameValue fresh = game_number(graph, pursuer_rule, evader_rule, k_max, budget);
            if (!records_agree(*hit, fresh))
                throw InvariantError("cache record disagrees with recomputation (key " + key +
                                     ")");
            return fresh;
        }
        return *hit;
    }

    GameValue value = game_number(graph, pursuer_rule, evader_rule, k_max, budget);
    cache->store(graph, value);
    return value;
}

} // namespace pursuit
