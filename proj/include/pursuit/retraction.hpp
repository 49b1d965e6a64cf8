#pragma once

#include "pursuit/graph.hpp"
#include "pursuit/product.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace pursuit {

// Vertex map onto a fixed image subgraph (r is the identity on its image).
struct Retraction {
    std::vector<Vertex> map;   // domain vertex -> image vertex
    std::vector<Vertex> image; // sorted distinct fixed points
};

// Folds each tree factor onto a chosen edge (x_i, y_i): every factor vertex
// maps to the endpoint in its own color class. The product map sends each
// product vertex coordinate-wise; the image is the induced copy of a
// hypercube on {x_i, y_i} per coordinate.
Retraction edge_retraction(const ProductGraph& product,
                           const std::vector<std::pair<Vertex, Vertex>>& chosen_edges);

// True iff r.map is total, fixes its image pointwise, and maps every edge to
// an image edge (never collapsing an edge to a single vertex).
bool verify_retraction(const Graph& g, const Retraction& r);

// Subgraph induced on `vertices` (sorted, distinct), relabelled 0..m-1 in
// that order.
Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& vertices);

// Backtracking isomorphism search; practical for graphs up to ~16 vertices.
// Returns a vertex bijection a -> b, or nullopt.
std::optional<std::vector<Vertex>> find_isomorphism(const Graph& a, const Graph& b);

} // namespace pursuit
