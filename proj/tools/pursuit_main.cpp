#include "CLI11.hpp"

#include "pursuit/cache.hpp"
#include "pursuit/errors.hpp"
#include "pursuit/io.hpp"
#include "pursuit/retraction.hpp"
#include "pursuit/solver.hpp"
#include "pursuit/strategy.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace pursuit;

std::pair<PursuerRule, EvaderRule> parse_variant(const std::string& name) {
    if (name == "cop" || name == "ff")
        return {PursuerRule::FlexibleAll, EvaderRule::Flexible};
    if (name == "fa")
        return {PursuerRule::FlexibleAll, EvaderRule::Active};
    if (name == "active")
        return {PursuerRule::ActiveSubset, EvaderRule::Active};
    if (name == "aa")
        return {PursuerRule::ActiveAll, EvaderRule::Active};
    if (name == "af")
        return {PursuerRule::ActiveAll, EvaderRule::Flexible};
    if (name == "zombie")
        return {PursuerRule::Zombie, EvaderRule::Flexible};
    throw std::invalid_argument("unknown variant '" + name +
                                "' (expected cop|active|ff|fa|af|aa|zombie)");
}

std::optional<ResultCache> open_cache(const std::string& flag_dir, bool no_cache) {
    if (no_cache)
        return std::nullopt;
    std::string dir = flag_dir;
    if (dir.empty()) {
        const char* env = std::getenv("PURSUIT_CACHE");
        if (env != nullptr && *env != '\0')
            dir = env;
    }
    if (dir.empty())
        return std::nullopt;
    return ResultCache(std::filesystem::path(dir));
}

struct SolveOptions {
    std::string graph_file;
    std::string product_file;
    std::string variant = "cop";
    int k_max = 4;
    long long budget = 0;
    std::string cache_dir;
    bool no_cache = false;
};

int cmd_solve(const SolveOptions& opt) {
    if (opt.graph_file.empty() == opt.product_file.empty())
        throw std::invalid_argument("solve: give exactly one of --graph or --product");
    Graph graph = opt.graph_file.empty() ? load_product_file(opt.product_file).flat()
                                         : load_any_graph_file(opt.graph_file);
    auto [pursuer_rule, evader_rule] = parse_variant(opt.variant);
    const long long budget = opt.budget > 0 ? opt.budget : kDefaultStateBudget;
    std::optional<ResultCache> cache = open_cache(opt.cache_dir, opt.no_cache);
    GameValue value = cached_game_number(cache ? &*cache : nullptr, graph, pursuer_rule,
                                         evader_rule, opt.k_max, budget);
    if (value.value)
        std::cout << *value.value << '\n';
    else
        std::cout << "exceeds " << value.k_max << '\n';
    return 0;
}

struct TableOptions {
    int n_from = 2;
    int n_to = 4;
    std::string factor_file;
    int k_max = 0; // 0 = per-row maximum of the three predictions
    long long budget = 0;
    std::string cache_dir;
    bool no_cache = false;
};

std::string value_cell(const GameValue& value) {
    return value.value ? std::to_string(*value.value) : std::string("exceeds");
}

int cmd_table(const TableOptions& opt) {
    if (opt.n_from < 1 || opt.n_to < opt.n_from)
        throw std::invalid_argument("table: need 1 <= n-from <= n-to");
    Graph factor = opt.factor_file.empty() ? path_graph(2) : load_any_graph_file(opt.factor_file);
    const long long budget = opt.budget > 0 ? opt.budget : kDefaultStateBudget;
    std::optional<ResultCache> cache = open_cache(opt.cache_dir, opt.no_cache);
    const ResultCache* cache_ptr = cache ? &*cache : nullptr;

    std::cout << "n\tc\tc_prime\tc_aa\tc_af\tzombie\tpred_c\tpred_c_prime\tpred_zombie\tstatus\n";
    for (int n = opt.n_from; n <= opt.n_to; ++n) {
        const int pred_c = (n + 2) / 2;        // ceil((n+1)/2)
        const int pred_c_prime = (n + 1) / 2;  // ceil(n/2)
        const int pred_zombie = (2 * n + 2) / 3; // ceil(2n/3)
        int k_max = opt.k_max > 0 ? opt.k_max
                                  : std::max(pred_c, std::max(pred_c_prime, pred_zombie));
        try {
            std::vector<Graph> factors(static_cast<std::size_t>(n), factor);
            Graph flat = ProductGraph(std::move(factors)).flat();
            struct Column {
                PursuerRule pursuer_rule;
                EvaderRule evader_rule;
                int prediction;
            };
            const Column columns[] = {
                {PursuerRule::FlexibleAll, EvaderRule::Flexible, pred_c},
                {PursuerRule::ActiveSubset, EvaderRule::Active, pred_c_prime},
                {PursuerRule::ActiveAll, EvaderRule::Active, pred_zombie},
                {PursuerRule::ActiveAll, EvaderRule::Flexible, pred_zombie},
                {PursuerRule::Zombie, EvaderRule::Flexible, pred_zombie},
            };
            std::string cells;
            bool mismatch = false;
            bool partial = false;
            for (const Column& column : columns) {
                GameValue value = cached_game_number(cache_ptr, flat, column.pursuer_rule,
                                                     column.evader_rule, k_max, budget);
                cells += '\t';
                cells += value_cell(value);
                if (value.value) {
                    if (*value.value != column.prediction)
                        mismatch = true;
                } else if (k_max >= column.prediction) {
                    mismatch = true; // proven above the predicted value
                } else {
                    partial = true;
                }
            }
            const char* status = mismatch ? "mismatch" : (partial ? "partial" : "ok");
            std::cout << n << cells << '\t' << pred_c << '\t' << pred_c_prime << '\t'
                      << pred_zombie << '\t' << status << '\n';
        } catch (const BudgetExceeded&) {
            std::cout << n << "\t-\t-\t-\t-\t-\t" << pred_c << '\t' << pred_c_prime << '\t'
                      << pred_zombie << "\tbudget\n";
        }
    }
    return 0;
}

struct VerifyOptionsCli {
    std::string product_file;
    std::string strategy = "composite";
    int zombies = 0;
    long long budget = 0;
    std::string trace_file;
};

int cmd_verify_strategy(const VerifyOptionsCli& opt) {
    if (opt.product_file.empty())
        throw std::invalid_argument("verify-strategy: --product is required");
    ProductGraph product = load_product_file(opt.product_file);

    std::unique_ptr<ScriptedStrategy> strategy;
    if (opt.strategy == "three-tree") {
        if (opt.zombies != 0 && opt.zombies != 2)
            throw std::invalid_argument("verify-strategy: the three-tree strategy uses 2 zombies");
        strategy = make_three_tree_strategy(product);
    } else if (opt.strategy == "composite") {
        strategy = make_composite_strategy(product, opt.zombies);
    } else {
        throw std::invalid_argument("unknown strategy '" + opt.strategy +
                                    "' (expected three-tree|composite)");
    }

    VerifyOptions options;
    if (opt.budget > 0)
        options.memo_budget = opt.budget;
    VerifyResult result = verify_scripted_strategy(*strategy, options);

    const bool captured = result.kind == VerifyResult::Kind::Captured;
    std::cout << (captured ? "Captured" : "Escaped") << '\n';
    if (captured)
        std::cout << "rounds\t" << result.worst_case_rounds << '\n';
    else
        std::cout << "detail\t" << result.detail << '\n';
    std::cout << "zombies\t" << strategy->zombie_count() << '\n';
    std::cout << "checks\tlegality=" << result.stats.legality_checks
              << " parity=" << result.stats.parity_checks
              << " reach=" << result.stats.reach_checks
              << " agreement=" << result.stats.agreement_checks
              << " shape=" << result.stats.shape_checks
              << " midpoints=" << result.stats.midpoints
              << " memo=" << result.stats.memo_nodes << '\n';
    if (!captured) {
        for (const TraceLine& line : result.witness)
            std::cout << line.tsv() << '\n';
    }
    if (!opt.trace_file.empty()) {
        std::ofstream out(opt.trace_file, std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write trace file " + opt.trace_file);
        out << "round\tmover\tbefore\taction\tafter\tphase\n";
        for (const TraceLine& line : result.witness)
            out << line.tsv() << '\n';
    }
    return 0;
}

struct RetractOptions {
    std::string product_file;
    std::string edges;
};

int cmd_retract_check(const RetractOptions& opt) {
    if (opt.product_file.empty())
        throw std::invalid_argument("retract-check: --product is required");
    ProductGraph product = load_product_file(opt.product_file);
    std::vector<std::pair<Vertex, Vertex>> chosen = parse_edge_pairs(opt.edges);
    Retraction retraction = edge_retraction(product, chosen);

    bool all_pass = true;
    const bool map_ok = verify_retraction(product.flat(), retraction);
    all_pass = all_pass && map_ok;
    std::cout << "retraction-map\t" << (map_ok ? "pass" : "fail") << '\n';

    const long long expected_size = 1LL << product.factor_count();
    const bool size_ok = static_cast<long long>(retraction.image.size()) == expected_size;
    all_pass = all_pass && size_ok;
    std::cout << "image-size\t" << (size_ok ? "pass" : "fail") << '\t' << retraction.image.size()
              << '\n';

    Graph induced = induced_subgraph(product.flat(), retraction.image);
    const bool iso_ok = find_isomorphism(induced, hypercube_graph(product.factor_count())).has_value();
    all_pass = all_pass && iso_ok;
    std::cout << "image-hypercube\t" << (iso_ok ? "pass" : "fail") << '\n';

    return all_pass ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pursuit games on graph products: exact solving, tables, and scripted-strategy "
                 "verification"};
    app.require_subcommand(1);

    SolveOptions solve_opt;
    CLI::App* solve_cmd = app.add_subcommand("solve", "Solve one pursuit variant on one graph");
    solve_cmd->add_option("--graph", solve_opt.graph_file, "graph or tree file");
    solve_cmd->add_option("--product", solve_opt.product_file, "product file (list of factors)");
    solve_cmd->add_option("--variant", solve_opt.variant, "cop|active|ff|fa|af|aa|zombie");
    solve_cmd->add_option("--kmax", solve_opt.k_max, "largest pursuer count to try");
    solve_cmd->add_option("--budget", solve_opt.budget, "solver state budget");
    solve_cmd->add_option("--cache", solve_opt.cache_dir, "result cache directory");
    solve_cmd->add_flag("--no-cache", solve_opt.no_cache, "bypass the result cache");

    TableOptions table_opt;
    CLI::App* table_cmd =
        app.add_subcommand("table", "Values of tree-power products against the closed forms");
    table_cmd->add_option("--n-from", table_opt.n_from, "smallest factor count");
    table_cmd->add_option("--n-to", table_opt.n_to, "largest factor count");
    table_cmd->add_option("--factor", table_opt.factor_file, "factor tree file (default: 2-path)");
    table_cmd->add_option("--kmax", table_opt.k_max, "pursuer cap (default: predicted values)");
    table_cmd->add_option("--budget", table_opt.budget, "solver state budget");
    table_cmd->add_option("--cache", table_opt.cache_dir, "result cache directory");
    table_cmd->add_flag("--no-cache", table_opt.no_cache, "bypass the result cache");

    VerifyOptionsCli verify_opt;
    CLI::App* verify_cmd =
        app.add_subcommand("verify-strategy", "Exhaustively verify a scripted zombie strategy");
    verify_cmd->add_option("--product", verify_opt.product_file, "product file of tree factors");
    verify_cmd->add_option("--strategy", verify_opt.strategy, "three-tree|composite");
    verify_cmd->add_option("--zombies", verify_opt.zombies, "zombie count (0 = canonical)");
    verify_cmd->add_option("--budget", verify_opt.budget, "verification memo budget");
    verify_cmd->add_option("--trace", verify_opt.trace_file, "write the witness trace here");

    RetractOptions retract_opt;
    CLI::App* retract_cmd =
        app.add_subcommand("retract-check", "Fold a tree product onto chosen factor edges");
    retract_cmd->add_option("--product", retract_opt.product_file, "product file of tree factors");
    retract_cmd->add_option("--edges", retract_opt.edges, "chosen edges, e.g. 0-1,0-1,1-2");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (solve_cmd->parsed())
            return cmd_solve(solve_opt);
        if (table_cmd->parsed())
            return cmd_table(table_opt);
        if (verify_cmd->parsed())
            return cmd_verify_strategy(verify_opt);
        if (retract_cmd->parsed())
            return cmd_retract_check(retract_opt);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const InvariantError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
