#include "xc/graph.hpp"

#include <algorithm>
#include <sstream>

namespace xc {

int Graph::add_vertex(const std::string& label) {
    if (index_of(label) >= 0) throw input_error("Graph: duplicate vertex label '" + label + "'");
    labels.push_back(label);
    return vertex_count() - 1;
}

void Graph::add_edge(int u, int v) {
    if (u == v) throw input_error("Graph: self-loop rejected");
    if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count())
        throw input_error("Graph: edge endpoint out of range");
    if (u > v) std::swap(u, v);
    if (std::find(edges.begin(), edges.end(), std::make_pair(u, v)) == edges.end())
        edges.emplace_back(u, v);
}

int Graph::index_of(const std::string& label) const {
    for (int i = 0; i < vertex_count(); ++i)
        if (labels[i] == label) return i;
    return -1;
}

std::vector<std::vector<std::uint64_t>> Graph::adjacency_masks() const {
    const int n = vertex_count();
    const int words = (n + 63) / 64;
    std::vector<std::vector<std::uint64_t>> adj(n, std::vector<std::uint64_t>(words, 0));
    for (auto [u, v] : edges) {
        adj[u][v / 64] |= std::uint64_t(1) << (v % 64);
        adj[v][u / 64] |= std::uint64_t(1) << (u % 64);
    }
    return adj;
}

int Digraph::add_vertex(const std::string& label) {
    for (const auto& l : labels)
        if (l == label) throw input_error("Digraph: duplicate vertex label '" + label + "'");
    labels.push_back(label);
    return vertex_count() - 1;
}

int Digraph::add_arc(int from, int to, const std::string& label) {
    if (from == to) throw input_error("Digraph: self-loop rejected");
    if (from < 0 || to < 0 || from >= vertex_count() || to >= vertex_count())
        throw input_error("Digraph: arc endpoint out of range");
    arcs.push_back({from, to, label});
    return arc_count() - 1;
}

namespace {

// Depth-first stable set enumeration over vertices in index order.
void stable_rec(const Graph& g, const std::vector<std::vector<std::uint64_t>>& adj, int next,
                std::vector<std::uint64_t>& blocked, std::vector<int>& current,
                std::vector<std::vector<int>>& out, std::int64_t cap) {
    if (static_cast<std::int64_t>(out.size()) > cap)
        throw budget_error("all_stable_sets: enumeration cap exceeded");
    out.push_back(current);
    for (int v = next; v < g.vertex_count(); ++v) {
        if (blocked[v / 64] >> (v % 64) & 1) continue;
        std::vector<std::uint64_t> saved = blocked;
        for (std::size_t w = 0; w < blocked.size(); ++w) blocked[w] |= adj[v][w];
        blocked[v / 64] |= std::uint64_t(1) << (v % 64);
        current.push_back(v);
        stable_rec(g, adj, v + 1, blocked, current, out, cap);
        current.pop_back();
        blocked = std::move(saved);
    }
}

}  // namespace

std::vector<std::vector<int>> all_stable_sets(const Graph& g, std::int64_t cap) {
    auto adj = g.adjacency_masks();
    std::vector<std::uint64_t> blocked((g.vertex_count() + 63) / 64, 0);
    std::vector<int> current;
    std::vector<std::vector<int>> out;
    stable_rec(g, adj, 0, blocked, current, out, cap);
    return out;
}

std::vector<std::vector<int>> maximum_stable_sets(const Graph& g) {
    auto sets = all_stable_sets(g);
    std::size_t best = 0;
    for (const auto& s : sets) best = std::max(best, s.size());
    std::vector<std::vector<int>> out;
    for (auto& s : sets)
        if (s.size() == best) out.push_back(std::move(s));
    return out;
}

std::string graph_dot(const Graph& g) {
    std::ostringstream os;
    os << "graph G {\n";
    for (int v = 0; v < g.vertex_count(); ++v)
        os << "  n" << v << " [label=\"" << g.labels[v] << "\"];\n";
    for (auto [u, v] : g.edges) os << "  n" << u << " -- n" << v << ";\n";
    os << "}\n";
    return os.str();
}

std::string digraph_dot(const Digraph& d) {
    std::ostringstream os;
    os << "digraph D {\n";
    for (int v = 0; v < d.vertex_count(); ++v)
        os << "  n" << v << " [label=\"" << d.labels[v] << "\"];\n";
    for (const auto& a : d.arcs) {
        os << "  n" << a.from << " -> n" << a.to;
        if (!a.label.empty()) os << " [label=\"" << a.label << "\"]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

void to_json(nlohmann::json& j, const Graph& g) {
    j = nlohmann::json{{"vertices", g.labels}, {"edges", g.edges}};
}

void from_json(const nlohmann::json& j, Graph& g) {
    g = Graph{};
    for (const auto& l : j.at("vertices")) g.add_vertex(l.get<std::string>());
    for (const auto& e : j.at("edges")) g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
}

void to_json(nlohmann::json& j, const Digraph& d) {
    nlohmann::json arcs = nlohmann::json::array();
    for (const auto& a : d.arcs) arcs.push_back({{"from", a.from}, {"to", a.to}, {"label", a.label}});
    j = nlohmann::json{{"vertices", d.labels}, {"arcs", std::move(arcs)}};
}

void from_json(const nlohmann::json& j, Digraph& d) {
    d = Digraph{};
    for (const auto& l : j.at("vertices")) d.add_vertex(l.get<std::string>());
    for (const auto& a : j.at("arcs"))
        d.add_arc(a.at("from").get<int>(), a.at("to").get<int>(),
                  a.value("label", std::string{}));
}

}  // namespace xc
