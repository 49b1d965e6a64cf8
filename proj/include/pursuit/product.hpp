#pragma once

#include "pursuit/graph.hpp"

#include <cstddef>
#include <vector>

namespace pursuit {

// All-pairs distances, one BFS per vertex.
class DistanceOracle {
  public:
    DistanceOracle() = default;
    explicit DistanceOracle(const Graph& g);

    int vertex_count() const { return n_; }
    int distance(Vertex u, Vertex v) const;

  private:
    int n_ = 0;
    std::vector<int> table_; // n*n row-major, -1 for unreachable
};

// Cartesian product of connected factor graphs, materialized. Flat vertex
// ids use a row-major codec: the last factor varies fastest,
//   flat = c_{n-1} + c_{n-2} * |V_{n-1}| + ... + c_0 * (|V_1| * ... * |V_{n-1}|).
class ProductGraph {
  public:
    explicit ProductGraph(std::vector<Graph> factors, long long max_vertices = 1LL << 20);

    int factor_count() const { return static_cast<int>(factors_.size()); }
    const Graph& factor(int i) const { return factors_.at(static_cast<std::size_t>(i)); }
    const DistanceOracle& factor_oracle(int i) const { return oracles_.at(static_cast<std::size_t>(i)); }
    const Graph& flat() const { return flat_; }
    int vertex_count() const { return flat_.vertex_count(); }

    int flatten(const std::vector<int>& coords) const;
    std::vector<int> coordinates(int flat) const;
    void coordinates_into(int flat, std::vector<int>& out) const;
    int coordinate(int flat, int factor) const;
    int with_coordinate(int flat, int factor, int value) const;

    int factor_distance(int factor, Vertex a, Vertex b) const;
    bool factors_are_trees() const;

  private:
    std::vector<Graph> factors_;
    std::vector<DistanceOracle> oracles_;
    std::vector<long long> strides_;
    Graph flat_;
};

// Two-factor product as a plain graph (flat labelling as above).
Graph cartesian_product(const Graph& a, const Graph& b);

// Distance in the product = sum of per-factor distances.
int product_distance(const ProductGraph& p, int u, int v);

// Neighbors of `from` strictly closer to `target` (the legal zombie steps).
std::vector<Vertex> geodesic_moves(const Graph& g, const DistanceOracle& oracle, Vertex from,
                                   Vertex target);
std::vector<Vertex> geodesic_moves(const Graph& g, Vertex from, Vertex target);

} // namespace pursuit
