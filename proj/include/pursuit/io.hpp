#pragma once

#include "pursuit/graph.hpp"
#include "pursuit/product.hpp"

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace pursuit {

// Tree file: one line `tree <vertex_count> <parent_1> ... <parent_{n-1}>`
// (0-indexed). Any labelling that forms a tree is accepted and normalized to
// BFS order from vertex 0, so the stored parent array satisfies
// parents[i] <= i. Parse errors name the file and line.
TreeSpec load_tree_file(const std::filesystem::path& file);

// Graph file: header `graph <vertex_count>`, then one `u v` edge per line.
// Blank lines and lines starting with '#' are skipped.
Graph load_graph_file(const std::filesystem::path& file);

// Product file: one tree/graph file reference per line, resolved relative to
// the product file's directory. Factor order is line order.
std::vector<Graph> load_product_factors(const std::filesystem::path& file);
ProductGraph load_product_file(const std::filesystem::path& file,
                               long long max_vertices = 1LL << 20);

// Loads either a graph file or a tree file based on its header keyword.
Graph load_any_graph_file(const std::filesystem::path& file);

// Edge list spec "x0-y0,x1-y1,..." (one pair per product factor).
std::vector<std::pair<Vertex, Vertex>> parse_edge_pairs(const std::string& spec);

} // namespace pursuit
