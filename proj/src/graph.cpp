#include "pursuit/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace pursuit {

Graph::Graph(int vertex_count) {
    if (vertex_count < 0)
        throw std::invalid_argument("graph: negative vertex count");
    adjacency_.resize(static_cast<std::size_t>(vertex_count));
}

void Graph::check_vertex(Vertex v) const {
    if (v < 0 || v >= vertex_count())
        throw std::invalid_argument("graph: vertex out of range");
}

void Graph::add_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v)
        throw std::invalid_argument("graph: self-loop rejected");
    if (has_edge(u, v))
        throw std::invalid_argument("graph: duplicate edge rejected");
    auto insert_sorted = [](std::vector<Vertex>& list, Vertex w) {
        list.insert(std::lower_bound(list.begin(), list.end(), w), w);
    };
    insert_sorted(adjacency_[static_cast<std::size_t>(u)], v);
    insert_sorted(adjacency_[static_cast<std::size_t>(v)], u);
    ++edge_count_;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    const auto& list = adjacency_[static_cast<std::size_t>(u)];
    return std::binary_search(list.begin(), list.end(), v);
}

const std::vector<Vertex>& Graph::neighbors(Vertex v) const {
    check_vertex(v);
    return adjacency_[static_cast<std::size_t>(v)];
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (Vertex u = 0; u < vertex_count(); ++u)
        for (Vertex v : neighbors(u))
            if (u < v)
                out.emplace_back(u, v);
    return out; // already lexicographic because u ascends and lists are sorted
}

bool Graph::is_connected() const {
    if (vertex_count() == 0)
        return false;
    const std::vector<int> dist = bfs_distances(*this, 0);
    return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

bool Graph::is_tree() const {
    return is_connected() && edge_count_ == vertex_count() - 1;
}

std::string Graph::canonical_text() const {
    std::ostringstream out;
    out << "graph " << vertex_count() << '\n';
    for (const auto& [u, v] : edges())
        out << u << ' ' << v << '\n';
    return out.str();
}

std::uint64_t Graph::identity_hash() const {
    return fnv1a(canonical_text());
}

Graph TreeSpec::to_graph() const {
    if (vertex_count < 1)
        throw std::invalid_argument("tree: needs at least one vertex");
    if (static_cast<int>(parents.size()) != vertex_count - 1)
        throw std::invalid_argument("tree: parent array size mismatch");
    Graph g(vertex_count);
    for (int child = 1; child < vertex_count; ++child) {
        Vertex parent = parents[static_cast<std::size_t>(child - 1)];
        if (parent < 0 || parent >= child)
            throw std::invalid_argument("tree: parent must precede child");
        g.add_edge(parent, child);
    }
    return g;
}

std::vector<int> bfs_distances(const Graph& g, Vertex source) {
    if (source < 0 || source >= g.vertex_count())
        throw std::invalid_argument("bfs: source out of range");
    std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
    std::deque<Vertex> queue{source};
    dist[static_cast<std::size_t>(source)] = 0;
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        for (Vertex w : g.neighbors(v)) {
            if (dist[static_cast<std::size_t>(w)] < 0) {
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

std::vector<int> proper_two_coloring(const Graph& g) {
    std::vector<int> color(static_cast<std::size_t>(g.vertex_count()), -1);
    for (Vertex root = 0; root < g.vertex_count(); ++root) {
        if (color[static_cast<std::size_t>(root)] >= 0)
            continue;
        color[static_cast<std::size_t>(root)] = 0;
        std::deque<Vertex> queue{root};
        while (!queue.empty()) {
            Vertex v = queue.front();
            queue.pop_front();
            for (Vertex w : g.neighbors(v)) {
                int& cw = color[static_cast<std::size_t>(w)];
                if (cw < 0) {
                    cw = 1 - color[static_cast<std::size_t>(v)];
                    queue.push_back(w);
                } else if (cw == color[static_cast<std::size_t>(v)]) {
                    throw std::invalid_argument("two-coloring: graph is not bipartite");
                }
            }
        }
    }
    return color;
}

Graph single_vertex_graph() {
    return Graph(1);
}

Graph path_graph(int n) {
    if (n < 1)
        throw std::invalid_argument("path: needs at least one vertex");
    Graph g(n);
    for (Vertex v = 0; v + 1 < n; ++v)
        g.add_edge(v, v + 1);
    return g;
}

Graph cycle_graph(int n) {
    if (n < 3)
        throw std::invalid_argument("cycle: needs at least three vertices");
    Graph g(n);
    for (Vertex v = 0; v + 1 < n; ++v)
        g.add_edge(v, v + 1);
    g.add_edge(n - 1, 0);
    return g;
}

Graph complete_graph(int n) {
    if (n < 1)
        throw std::invalid_argument("complete: needs at least one vertex");
    Graph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            g.add_edge(u, v);
    return g;
}

Graph star_graph(int leaves) {
    if (leaves < 0)
        throw std::invalid_argument("star: negative leaf count");
    Graph g(leaves + 1);
    for (Vertex leaf = 1; leaf <= leaves; ++leaf)
        g.add_edge(0, leaf);
    return g;
}

Graph hypercube_graph(int dim) {
    if (dim < 0 || dim > 20)
        throw std::invalid_argument("hypercube: dimension out of range");
    Graph g(1 << dim);
    for (Vertex v = 0; v < (1 << dim); ++v)
        for (int bit = 0; bit < dim; ++bit) {
            Vertex w = v ^ (1 << bit);
            if (v < w)
                g.add_edge(v, w);
        }
    return g;
}

std::uint64_t fnv1a(const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t hash = 14695981039346656037ULL;
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= bytes[i];
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::uint64_t fnv1a(const std::string& text) {
    return fnv1a(text.data(), text.size());
}

} // namespace pursuit
