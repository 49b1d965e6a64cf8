#include "pursuit/io.hpp"

#include "pursuit/errors.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <sstream>

namespace pursuit {

namespace {

[[noreturn]] void parse_fail(const std::filesystem::path& file, int line, const std::string& what) {
    std::ostringstream out;
    out << file.string() << ":" << line << ": " << what;
    throw ParseError(out.str());
}

bool skippable(const std::string& line) {
    for (char c : line) {
        if (c == '#')
            return true;
        if (!std::isspace(static_cast<unsigned char>(c)))
            return false;
    }
    return true;
}

std::ifstream open_or_fail(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw ParseError(file.string() + ": cannot open file");
    return in;
}

// Renumber an arbitrary labelled tree to BFS order from vertex 0.
TreeSpec normalize_tree(const Graph& g, const std::filesystem::path& file, int line) {
    if (!g.is_tree())
        parse_fail(file, line, "edges do not form a tree");
    const int n = g.vertex_count();
    std::vector<int> label(static_cast<std::size_t>(n), -1);
    TreeSpec spec;
    spec.vertex_count = n;
    spec.parents.reserve(static_cast<std::size_t>(n > 0 ? n - 1 : 0));
    label[0] = 0;
    int next = 1;
    std::deque<Vertex> queue{0};
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        for (Vertex w : g.neighbors(v)) {
            if (label[static_cast<std::size_t>(w)] < 0) {
                label[static_cast<std::size_t>(w)] = next++;
                spec.parents.push_back(label[static_cast<std::size_t>(v)]);
                queue.push_back(w);
            }
        }
    }
    return spec;
}

} // namespace

TreeSpec load_tree_file(const std::filesystem::path& file) {
    std::ifstream in = open_or_fail(file);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line))
            continue;
        std::istringstream fields(line);
        std::string keyword;
        fields >> keyword;
        if (keyword != "tree")
            parse_fail(file, line_no, "expected 'tree <vertex_count> <parents...>'");
        int n = 0;
        if (!(fields >> n) || n < 1)
            parse_fail(file, line_no, "bad vertex count");
        Graph g(n);
        for (int child = 1; child < n; ++child) {
            int parent = -1;
            if (!(fields >> parent))
                parse_fail(file, line_no, "expected " + std::to_string(n - 1) + " parent entries");
            if (parent < 0 || parent >= n || parent == child)
                parse_fail(file, line_no, "parent out of range for vertex " + std::to_string(child));
            if (g.has_edge(parent, child))
                parse_fail(file, line_no, "duplicate edge in parent list");
            g.add_edge(parent, child);
        }
        std::string extra;
        if (fields >> extra)
            parse_fail(file, line_no, "trailing tokens after parent list");
        return normalize_tree(g, file, line_no);
    }
    throw ParseError(file.string() + ": empty tree file");
}

Graph load_graph_file(const std::filesystem::path& file) {
    std::ifstream in = open_or_fail(file);
    std::string line;
    int line_no = 0;
    bool have_header = false;
    Graph g;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line))
            continue;
        std::istringstream fields(line);
        if (!have_header) {
            std::string keyword;
            int n = 0;
            fields >> keyword;
            if (keyword != "graph" || !(fields >> n) || n < 1)
                parse_fail(file, line_no, "expected 'graph <vertex_count>' header");
            std::string extra;
            if (fields >> extra)
                parse_fail(file, line_no, "trailing tokens after header");
            g = Graph(n);
            have_header = true;
            continue;
        }
        int u = -1, v = -1;
        if (!(fields >> u >> v))
            parse_fail(file, line_no, "expected edge 'u v'");
        std::string extra;
        if (fields >> extra)
            parse_fail(file, line_no, "trailing tokens after edge");
        if (u < 0 || u >= g.vertex_count() || v < 0 || v >= g.vertex_count())
            parse_fail(file, line_no, "edge endpoint out of range");
        if (u == v)
            parse_fail(file, line_no, "self-loop rejected");
        if (g.has_edge(u, v))
            parse_fail(file, line_no, "duplicate edge");
        g.add_edge(u, v);
    }
    if (!have_header)
        throw ParseError(file.string() + ": empty graph file");
    return g;
}

Graph load_any_graph_file(const std::filesystem::path& file) {
    std::ifstream in = open_or_fail(file);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line))
            continue;
        std::istringstream fields(line);
        std::string keyword;
        fields >> keyword;
        if (keyword == "tree")
            return load_tree_file(file).to_graph();
        if (keyword == "graph")
            return load_graph_file(file);
        parse_fail(file, line_no, "expected 'tree' or 'graph' header");
    }
    throw ParseError(file.string() + ": empty file");
}

std::vector<Graph> load_product_factors(const std::filesystem::path& file) {
    std::ifstream in = open_or_fail(file);
    std::vector<Graph> factors;
    std::string line;
    int line_no = 0;
    const std::filesystem::path base = file.parent_path();
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line))
            continue;
        // Trim surrounding whitespace from the reference.
        auto begin = line.find_first_not_of(" \t\r");
        auto end = line.find_last_not_of(" \t\r");
        std::filesystem::path ref(line.substr(begin, end - begin + 1));
        if (ref.is_relative())
            ref = base / ref;
        try {
            factors.push_back(load_any_graph_file(ref));
        } catch (const ParseError& e) {
            parse_fail(file, line_no, std::string("while loading factor: ") + e.what());
        }
    }
    if (factors.empty())
        throw ParseError(file.string() + ": product file lists no factors");
    return factors;
}

ProductGraph load_product_file(const std::filesystem::path& file, long long max_vertices) {
    return ProductGraph(load_product_factors(file), max_vertices);
}

std::vector<std::pair<Vertex, Vertex>> parse_edge_pairs(const std::string& spec) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto dash = item.find('-');
        if (dash == std::string::npos)
            throw ParseError("edge spec: expected 'u-v' in '" + item + "'");
        try {
            std::size_t used_u = 0, used_v = 0;
            int u = std::stoi(item.substr(0, dash), &used_u);
            int v = std::stoi(item.substr(dash + 1), &used_v);
            if (used_u != dash || used_v != item.size() - dash - 1)
                throw ParseError("edge spec: trailing characters in '" + item + "'");
            pairs.emplace_back(u, v);
        } catch (const std::invalid_argument&) {
            throw ParseError("edge spec: bad number in '" + item + "'");
        } catch (const std::out_of_range&) {
            throw ParseError("edge spec: number out of range in '" + item + "'");
        }
    }
    if (pairs.empty())
        throw ParseError("edge spec: empty");
    return pairs;
}

} // namespace pursuit
