#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "xc/errors.hpp"

namespace xc {

// Vertex-labeled undirected graph, simple (no loops, no parallel edges).
struct Graph {
    std::vector<std::string> labels;
    std::vector<std::pair<int, int>> edges;  // normalized u < v, deduplicated

    int add_vertex(const std::string& label);
    void add_edge(int u, int v);
    int vertex_count() const { return static_cast<int>(labels.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }
    int index_of(const std::string& label) const;  // -1 when absent

    // Adjacency as bitmasks over words of 64 vertices.
    std::vector<std::vector<std::uint64_t>> adjacency_masks() const;
};

// Vertex-labeled directed multigraph. Parallel arcs are kept as distinct
// entries so that constructions whose semantics depend on arc identity
// (port choices on degenerate gadgets) stay faithful.
struct Arc {
    int from = 0;
    int to = 0;
    std::string label;
};

struct Digraph {
    std::vector<std::string> labels;
    std::vector<Arc> arcs;

    int add_vertex(const std::string& label);
    int add_arc(int from, int to, const std::string& label = "");  // returns arc id
    int vertex_count() const { return static_cast<int>(labels.size()); }
    int arc_count() const { return static_cast<int>(arcs.size()); }
};

// All stable sets (including the empty set), as sorted vertex-index lists in
// deterministic order. Guarded for desk-scale graphs.
std::vector<std::vector<int>> all_stable_sets(const Graph& g, std::int64_t cap = 5'000'000);

// All stable sets of maximum cardinality.
std::vector<std::vector<int>> maximum_stable_sets(const Graph& g);

std::string graph_dot(const Graph& g);
std::string digraph_dot(const Digraph& d);

void to_json(nlohmann::json& j, const Graph& g);
void from_json(const nlohmann::json& j, Graph& g);
void to_json(nlohmann::json& j, const Digraph& d);
void from_json(const nlohmann::json& j, Digraph& d);

}  // namespace xc
