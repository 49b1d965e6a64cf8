#include "pursuit/product.hpp"

#include "pursuit/errors.hpp"

#include <stdexcept>
#include <utility>

namespace pursuit {

DistanceOracle::DistanceOracle(const Graph& g) : n_(g.vertex_count()) {
    table_.reserve(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_));
    for (Vertex v = 0; v < n_; ++v) {
        std::vector<int> row = bfs_distances(g, v);
        table_.insert(table_.end(), row.begin(), row.end());
    }
}

int DistanceOracle::distance(Vertex u, Vertex v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
        throw std::invalid_argument("distance oracle: vertex out of range");
    return table_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) +
                  static_cast<std::size_t>(v)];
}

ProductGraph::ProductGraph(std::vector<Graph> factors, long long max_vertices)
    : factors_(std::move(factors)) {
    if (factors_.empty())
        throw std::invalid_argument("product: needs at least one factor");
    long long total = 1;
    for (const Graph& f : factors_) {
        if (f.vertex_count() < 1)
            throw std::invalid_argument("product: empty factor");
        if (!f.is_connected())
            throw std::invalid_argument("product: factor not connected");
        total *= f.vertex_count();
        if (total > max_vertices)
            throw BudgetExceeded("product: vertex count exceeds limit");
    }
    // Row-major codec: the last factor varies fastest.
    strides_.assign(factors_.size(), 1);
    for (int i = factor_count() - 2; i >= 0; --i)
        strides_[static_cast<std::size_t>(i)] =
            strides_[static_cast<std::size_t>(i + 1)] * factor(i + 1).vertex_count();
    oracles_.reserve(factors_.size());
    for (const Graph& f : factors_)
        oracles_.emplace_back(f);

    flat_ = Graph(static_cast<int>(total));
    std::vector<int> coords(factors_.size());
    for (int v = 0; v < static_cast<int>(total); ++v) {
        coordinates_into(v, coords);
        for (int i = 0; i < factor_count(); ++i)
            for (Vertex w : factors_[static_cast<std::size_t>(i)].neighbors(coords[static_cast<std::size_t>(i)])) {
                int u = with_coordinate(v, i, w);
                if (v < u)
                    flat_.add_edge(v, u);
            }
    }
}

int ProductGraph::flatten(const std::vector<int>& coords) const {
    if (static_cast<int>(coords.size()) != factor_count())
        throw std::invalid_argument("product: coordinate count mismatch");
    long long flat = 0;
    for (int i = 0; i < factor_count(); ++i) {
        int c = coords[static_cast<std::size_t>(i)];
        if (c < 0 || c >= factor(i).vertex_count())
            throw std::invalid_argument("product: coordinate out of range");
        flat += strides_[static_cast<std::size_t>(i)] * c;
    }
    return static_cast<int>(flat);
}

void ProductGraph::coordinates_into(int flat, std::vector<int>& out) const {
    if (flat < 0 || flat >= vertex_count())
        throw std::invalid_argument("product: flat vertex out of range");
    out.resize(factors_.size());
    for (int i = 0; i < factor_count(); ++i)
        out[static_cast<std::size_t>(i)] = static_cast<int>(
            (flat / strides_[static_cast<std::size_t>(i)]) % factor(i).vertex_count());
}

std::vector<int> ProductGraph::coordinates(int flat) const {
    std::vector<int> out;
    coordinates_into(flat, out);
    return out;
}

int ProductGraph::coordinate(int flat, int factor_index) const {
    if (flat < 0 || flat >= vertex_count())
        throw std::invalid_argument("product: flat vertex out of range");
    long long stride = strides_.at(static_cast<std::size_t>(factor_index));
    return static_cast<int>((flat / stride) % factor(factor_index).vertex_count());
}

int ProductGraph::with_coordinate(int flat, int factor_index, int value) const {
    if (value < 0 || value >= factor(factor_index).vertex_count())
        throw std::invalid_argument("product: coordinate out of range");
    long long stride = strides_.at(static_cast<std::size_t>(factor_index));
    int old = coordinate(flat, factor_index);
    return static_cast<int>(flat + stride * (value - old));
}

int ProductGraph::factor_distance(int factor_index, Vertex a, Vertex b) const {
    return factor_oracle(factor_index).distance(a, b);
}

bool ProductGraph::factors_are_trees() const {
    for (const Graph& f : factors_)
        if (!f.is_tree())
            return false;
    return true;
}

Graph cartesian_product(const Graph& a, const Graph& b) {
    ProductGraph p({a, b});
    return p.flat();
}

int product_distance(const ProductGraph& p, int u, int v) {
    int total = 0;
    for (int i = 0; i < p.factor_count(); ++i) {
        int d = p.factor_distance(i, p.coordinate(u, i), p.coordinate(v, i));
        if (d < 0)
            throw InvariantError("product distance: disconnected factor slipped through");
        total += d;
    }
    return total;
}

std::vector<Vertex> geodesic_moves(const Graph& g, const DistanceOracle& oracle, Vertex from,
                                   Vertex target) {
    int here = oracle.distance(from, target);
    if (here < 0)
        throw std::invalid_argument("geodesic moves: target unreachable");
    std::vector<Vertex> out;
    for (Vertex w : g.neighbors(from))
        if (oracle.distance(w, target) == here - 1)
            out.push_back(w);
    return out; // sorted because neighbor lists are sorted
}

std::vector<Vertex> geodesic_moves(const Graph& g, Vertex from, Vertex target) {
    return geodesic_moves(g, DistanceOracle(g), from, target);
}

} // namespace pursuit
