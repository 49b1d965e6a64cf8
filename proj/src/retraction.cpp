#include "pursuit/retraction.hpp"

#include <algorithm>
#include <stdexcept>

namespace pursuit {

Retraction edge_retraction(const ProductGraph& product,
                           const std::vector<std::pair<Vertex, Vertex>>& chosen_edges) {
    const int n = product.factor_count();
    if (static_cast<int>(chosen_edges.size()) != n)
        throw std::invalid_argument("edge retraction: one chosen edge per factor required");

    // Per-factor map: vertex -> endpoint of the chosen edge in its color class.
    std::vector<std::vector<Vertex>> factor_map(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Graph& tree = product.factor(i);
        if (!tree.is_tree())
            throw std::invalid_argument("edge retraction: factor is not a tree");
        auto [x, y] = chosen_edges[static_cast<std::size_t>(i)];
        if (!tree.has_edge(x, y))
            throw std::invalid_argument("edge retraction: chosen pair is not a factor edge");
        std::vector<int> color = proper_two_coloring(tree);
        auto& fmap = factor_map[static_cast<std::size_t>(i)];
        fmap.resize(static_cast<std::size_t>(tree.vertex_count()));
        for (Vertex v = 0; v < tree.vertex_count(); ++v)
            fmap[static_cast<std::size_t>(v)] =
                (color[static_cast<std::size_t>(v)] == color[static_cast<std::size_t>(x)]) ? x : y;
    }

    Retraction r;
    r.map.resize(static_cast<std::size_t>(product.vertex_count()));
    std::vector<int> coords;
    for (int v = 0; v < product.vertex_count(); ++v) {
        product.coordinates_into(v, coords);
        for (int i = 0; i < n; ++i)
            coords[static_cast<std::size_t>(i)] =
                factor_map[static_cast<std::size_t>(i)][static_cast<std::size_t>(coords[static_cast<std::size_t>(i)])];
        r.map[static_cast<std::size_t>(v)] = product.flatten(coords);
    }
    r.image = r.map;
    std::sort(r.image.begin(), r.image.end());
    r.image.erase(std::unique(r.image.begin(), r.image.end()), r.image.end());
    return r;
}

bool verify_retraction(const Graph& g, const Retraction& r) {
    const int n = g.vertex_count();
    if (static_cast<int>(r.map.size()) != n)
        return false;
    for (Vertex v = 0; v < n; ++v) {
        Vertex image = r.map[static_cast<std::size_t>(v)];
        if (image < 0 || image >= n)
            return false;
        if (r.map[static_cast<std::size_t>(image)] != image)
            return false; // not the identity on its image
    }
    std::vector<Vertex> image_sorted = r.map;
    std::sort(image_sorted.begin(), image_sorted.end());
    image_sorted.erase(std::unique(image_sorted.begin(), image_sorted.end()), image_sorted.end());
    if (image_sorted != r.image)
        return false;
    for (const auto& [u, v] : g.edges()) {
        Vertex ru = r.map[static_cast<std::size_t>(u)];
        Vertex rv = r.map[static_cast<std::size_t>(v)];
        if (ru == rv)
            return false; // edge collapsed
        if (!g.has_edge(ru, rv))
            return false;
    }
    return true;
}

Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& vertices) {
    std::vector<int> position(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        Vertex v = vertices[i];
        if (v < 0 || v >= g.vertex_count())
            throw std::invalid_argument("induced subgraph: vertex out of range");
        if (position[static_cast<std::size_t>(v)] >= 0)
            throw std::invalid_argument("induced subgraph: duplicate vertex");
        position[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    Graph sub(static_cast<int>(vertices.size()));
    for (const auto& [u, v] : g.edges()) {
        int pu = position[static_cast<std::size_t>(u)];
        int pv = position[static_cast<std::size_t>(v)];
        if (pu >= 0 && pv >= 0)
            sub.add_edge(pu, pv);
    }
    return sub;
}

namespace {

bool extend_isomorphism(const Graph& a, const Graph& b, const std::vector<Vertex>& order,
                        std::size_t depth, std::vector<Vertex>& a_to_b,
                        std::vector<bool>& b_used) {
    if (depth == order.size())
        return true;
    Vertex va = order[depth];
    for (Vertex vb = 0; vb < b.vertex_count(); ++vb) {
        if (b_used[static_cast<std::size_t>(vb)])
            continue;
        if (a.degree(va) != b.degree(vb))
            continue;
        bool consistent = true;
        for (std::size_t j = 0; j < depth && consistent; ++j) {
            Vertex ua = order[j];
            consistent = a.has_edge(va, ua) == b.has_edge(vb, a_to_b[static_cast<std::size_t>(ua)]);
        }
        if (!consistent)
            continue;
        a_to_b[static_cast<std::size_t>(va)] = vb;
        b_used[static_cast<std::size_t>(vb)] = true;
        if (extend_isomorphism(a, b, order, depth + 1, a_to_b, b_used))
            return true;
        b_used[static_cast<std::size_t>(vb)] = false;
    }
    a_to_b[static_cast<std::size_t>(va)] = -1;
    return false;
}

} // namespace

std::optional<std::vector<Vertex>> find_isomorphism(const Graph& a, const Graph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count())
        return std::nullopt;
    std::vector<int> deg_a, deg_b;
    for (Vertex v = 0; v < a.vertex_count(); ++v)
        deg_a.push_back(a.degree(v));
    for (Vertex v = 0; v < b.vertex_count(); ++v)
        deg_b.push_back(b.degree(v));
    std::sort(deg_a.begin(), deg_a.end());
    std::sort(deg_b.begin(), deg_b.end());
    if (deg_a != deg_b)
        return std::nullopt;

    // Map high-degree vertices first; prune on degree and partial adjacency.
    std::vector<Vertex> order(static_cast<std::size_t>(a.vertex_count()));
    for (Vertex v = 0; v < a.vertex_count(); ++v)
        order[static_cast<std::size_t>(v)] = v;
    std::stable_sort(order.begin(), order.end(),
                     [&a](Vertex u, Vertex v) { return a.degree(u) > a.degree(v); });

    std::vector<Vertex> a_to_b(static_cast<std::size_t>(a.vertex_count()), -1);
    std::vector<bool> b_used(static_cast<std::size_t>(b.vertex_count()), false);
    if (extend_isomorphism(a, b, order, 0, a_to_b, b_used))
        return a_to_b;
    return std::nullopt;
}

} // namespace pursuit
