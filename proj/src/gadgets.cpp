#include "xc/gadgets.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace xc {

BitString BitString::from_index(int n, std::uint64_t index) {
    if (n < 0 || n > 62) throw input_error("BitString: length out of range");
    if (index >> n) throw input_error("BitString: index out of range");
    BitString b;
    b.n = n;
    b.bits.resize(n);
    for (int i = 0; i < n; ++i) b.bits[i] = static_cast<std::uint8_t>(index >> (n - 1 - i) & 1);
    return b;
}

std::uint64_t BitString::index() const {
    std::uint64_t k = 0;
    for (int i = 0; i < n; ++i) k = (k << 1) | bits[i];
    return k;
}

int BitString::dot(const BitString& o) const {
    if (n != o.n) throw input_error("BitString::dot: length mismatch");
    int s = 0;
    for (int i = 0; i < n; ++i) s += bits[i] & o.bits[i];
    return s;
}

std::string BitString::str() const {
    std::string s(n, '0');
    for (int i = 0; i < n; ++i)
        if (bits[i]) s[i] = '1';
    return s;
}

RationalMatrix cor_slack_matrix(int n) {
    if (n < 1 || n > 12) throw input_error("cor_slack_matrix: need 1 <= n <= 12");
    const std::int64_t size = std::int64_t(1) << n;
    RationalMatrix m(static_cast<int>(size), static_cast<int>(size));
    std::vector<BitString> strings;
    strings.reserve(size);
    for (std::int64_t k = 0; k < size; ++k) strings.push_back(BitString::from_index(n, k));
    for (std::int64_t a = 0; a < size; ++a)
        for (std::int64_t b = 0; b < size; ++b) {
            int d = 1 - strings[a].dot(strings[b]);
            m.at(static_cast<int>(a), static_cast<int>(b)) = d * d;
        }
    return m;
}

Inequality cor_inequality(const BitString& a) {
    const int n = a.n;
    Inequality q;
    q.coeffs.assign(n * (n + 1) / 2, Rational(0));
    q.rhs = 1;
    for (int i = 0; i < n; ++i) {
        q.coeffs[cor_coord_index(n, i, i)] = static_cast<int>(a.bits[i]);
        for (int j = i + 1; j < n; ++j)
            q.coeffs[cor_coord_index(n, i, j)] = -2 * static_cast<int>(a.bits[i] & a.bits[j]);
    }
    return q;
}

// ---------------------------------------------------------------------------
// Stable-set gadget
// ---------------------------------------------------------------------------

namespace {

std::string pair_label(const char* decoration, int i, int j) {
    return std::string(decoration) + std::to_string(i + 1) + "," + std::to_string(j + 1);
}

}  // namespace

Graph build_stable_set_gadget(int n) {
    if (n < 1) throw input_error("build_stable_set_gadget: need n >= 1");
    Graph h;
    // Vertex cliques: "i,i" picks b_i = 1, "~i,i" picks b_i = 0.
    for (int i = 0; i < n; ++i) {
        int plain = h.add_vertex(pair_label("", i, i));
        int over = h.add_vertex(pair_label("~", i, i));
        h.add_edge(plain, over);
    }
    // Edge cliques: the four vertices pick (b_i, b_j) = (1,1), (0,1), (1,0),
    // (0,0) in order, each wired against the incompatible vertex choices.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int e = h.add_vertex(pair_label("", i, j));
            int eo = h.add_vertex(pair_label("~", i, j));
            int eu = h.add_vertex(pair_label("_", i, j));
            int eou = h.add_vertex(pair_label("~_", i, j));
            int quad[4] = {e, eo, eu, eou};
            for (int x = 0; x < 4; ++x)
                for (int y = x + 1; y < 4; ++y) h.add_edge(quad[x], quad[y]);
            int ii = h.index_of(pair_label("", i, i));
            int iio = h.index_of(pair_label("~", i, i));
            int jj = h.index_of(pair_label("", j, j));
            int jjo = h.index_of(pair_label("~", j, j));
            h.add_edge(e, iio);
            h.add_edge(e, jjo);
            h.add_edge(eo, ii);
            h.add_edge(eo, jjo);
            h.add_edge(eu, iio);
            h.add_edge(eu, jj);
            h.add_edge(eou, ii);
            h.add_edge(eou, jj);
        }
    return h;
}

std::vector<std::vector<int>> gadget_max_stable_sets(const Graph& h, int n) {
    auto sets = maximum_stable_sets(h);
    const std::size_t expected = static_cast<std::size_t>(n) + n * (n - 1) / 2;
    for (const auto& s : sets)
        if (s.size() != expected)
            throw std::logic_error("gadget_max_stable_sets: unexpected maximum cardinality");
    return sets;
}

RatVec project_stable_set_to_cor(const Graph& h, const std::vector<int>& stable_set, int n) {
    std::set<int> chosen(stable_set.begin(), stable_set.end());
    auto count_in = [&](std::initializer_list<std::string> labels) {
        int c = 0;
        for (const auto& l : labels) {
            int v = h.index_of(l);
            if (v < 0) throw input_error("project_stable_set_to_cor: gadget label missing");
            c += chosen.count(v);
        }
        return c;
    };
    for (int i = 0; i < n; ++i)
        if (count_in({pair_label("", i, i), pair_label("~", i, i)}) != 1)
            throw input_error("project_stable_set_to_cor: set does not pick one vertex per vertex-clique");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (count_in({pair_label("", i, j), pair_label("~", i, j), pair_label("_", i, j),
                          pair_label("~_", i, j)}) != 1)
                throw input_error("project_stable_set_to_cor: set does not pick one vertex per edge-clique");

    RatVec y(n * (n + 1) / 2, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (chosen.count(h.index_of(pair_label("", i, j)))) y[cor_coord_index(n, i, j)] = 1;
    return y;
}

// ---------------------------------------------------------------------------
// CNF and tour gadget
// ---------------------------------------------------------------------------

CnfFormula build_rank1_cnf(int n) {
    if (n < 1) throw input_error("build_rank1_cnf: need n >= 1");
    CnfFormula f;
    f.num_vars = n * n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            f.var_labels.push_back("C" + std::to_string(i + 1) + "," + std::to_string(j + 1));
    auto var = [&](int i, int j) { return i * n + j + 1; };  // DIMACS id
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            int ii = var(i, i), jj = var(j, j), ij = var(i, j);
            f.clauses.push_back({ii, jj, -ij});
            f.clauses.push_back({ii, -jj, -ij});
            f.clauses.push_back({-ii, jj, -ij});
            f.clauses.push_back({-ii, -jj, ij});
        }
    return f;
}

bool cnf_satisfied(const CnfFormula& f, const std::vector<std::uint8_t>& assignment) {
    if (static_cast<int>(assignment.size()) != f.num_vars)
        throw input_error("cnf_satisfied: assignment length mismatch");
    for (const auto& cl : f.clauses) {
        bool sat = false;
        for (int lit : cl) {
            int v = std::abs(lit) - 1;
            bool val = assignment[v] != 0;
            if (lit < 0) val = !val;
            if (val) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

std::string cnf_dimacs(const CnfFormula& f) {
    std::ostringstream os;
    for (int v = 0; v < f.num_vars; ++v)
        os << "c var " << (v + 1) << " = " << f.var_labels[v] << "\n";
    os << "p cnf " << f.num_vars << " " << f.clauses.size() << "\n";
    for (const auto& cl : f.clauses) os << cl[0] << " " << cl[1] << " " << cl[2] << " 0\n";
    return os.str();
}

TourGadget build_tour_gadget(int n) {
    if (n < 1) throw input_error("build_tour_gadget: need n >= 1");
    TourGadget g;
    g.n = n;
    g.phi = build_rank1_cnf(n);
    const int nvars = g.phi.num_vars;
    const int nclauses = static_cast<int>(g.phi.clauses.size());

    g.occurrence.assign(nvars, {});
    for (int m = 0; m < nclauses; ++m)
        for (int lit : g.phi.clauses[m]) g.occurrence[std::abs(lit) - 1].emplace_back(m, lit < 0);

    g.chain.resize(nvars);
    g.junction.resize(nvars + 1);
    g.enter_left_arc.resize(nvars);
    g.enter_right_arc.resize(nvars);
    g.exit_left_arc.resize(nvars);
    g.exit_right_arc.resize(nvars);
    g.fwd_arc.resize(nvars);
    g.bwd_arc.resize(nvars);
    g.det_to_clause.resize(nvars);
    g.det_from_clause.resize(nvars);

    g.junction[0] = g.d.add_vertex("s1");
    for (int k = 0; k < nvars; ++k) {
        const int p = static_cast<int>(g.occurrence[k].size());
        const int len = 3 * p + 1;
        for (int l = 1; l <= len; ++l)
            g.chain[k].push_back(
                g.d.add_vertex("v" + std::to_string(k + 1) + "_" + std::to_string(l)));
        g.junction[k + 1] = g.d.add_vertex("t" + std::to_string(k + 1));
        for (int l = 0; l + 1 < len; ++l) {
            g.fwd_arc[k].push_back(g.d.add_arc(g.chain[k][l], g.chain[k][l + 1]));
            g.bwd_arc[k].push_back(g.d.add_arc(g.chain[k][l + 1], g.chain[k][l]));
        }
        g.enter_left_arc[k] = g.d.add_arc(g.junction[k], g.chain[k].front(), "enterL");
        g.enter_right_arc[k] = g.d.add_arc(g.junction[k], g.chain[k].back(), "enterR");
        g.exit_left_arc[k] = g.d.add_arc(g.chain[k].front(), g.junction[k + 1], "exitL");
        g.exit_right_arc[k] = g.d.add_arc(g.chain[k].back(), g.junction[k + 1], "exitR");
    }
    g.d.add_arc(g.junction[nvars], g.junction[0], "close");

    g.clause_node.resize(nclauses);
    for (int m = 0; m < nclauses; ++m)
        g.clause_node[m] = g.d.add_vertex("w" + std::to_string(m + 1));

    // Negated occurrence l: path v_{k,3l-1} -> w_m -> v_{k,3l} (used when the
    // chain is walked left to right, i.e. variable false). Non-negated: the
    // reverse orientation, used when walking right to left (variable true).
    for (int k = 0; k < nvars; ++k)
        for (std::size_t occ = 0; occ < g.occurrence[k].size(); ++occ) {
            auto [m, negated] = g.occurrence[k][occ];
            int l = static_cast<int>(occ) + 1;
            int a = g.chain[k][3 * l - 2];  // v_{k,3l-1}
            int b = g.chain[k][3 * l - 1];  // v_{k,3l}
            int w = g.clause_node[m];
            if (negated) {
                g.det_to_clause[k].push_back(g.d.add_arc(a, w));
                g.det_from_clause[k].push_back(g.d.add_arc(w, b));
            } else {
                g.det_to_clause[k].push_back(g.d.add_arc(b, w));
                g.det_from_clause[k].push_back(g.d.add_arc(w, a));
            }
        }
    return g;
}

Graph build_undirected_tour_graph(const TourGadget& g) {
    Graph out;
    for (int v = 0; v < g.d.vertex_count(); ++v) {
        out.add_vertex(g.d.labels[v] + ".in");
        out.add_vertex(g.d.labels[v] + ".mid");
        out.add_vertex(g.d.labels[v] + ".out");
        out.add_edge(3 * v, 3 * v + 1);
        out.add_edge(3 * v + 1, 3 * v + 2);
    }
    for (const auto& a : g.d.arcs) out.add_edge(3 * a.from + 2, 3 * a.to);
    return out;
}

bool is_hamiltonian_cycle(const Graph& g, const std::vector<int>& cycle) {
    const int n = g.vertex_count();
    if (static_cast<int>(cycle.size()) != n || n < 3) return false;
    std::vector<char> seen(n, 0);
    for (int v : cycle) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = 1;
    }
    std::set<std::pair<int, int>> edges(g.edges.begin(), g.edges.end());
    auto has_edge = [&](int u, int v) {
        if (u > v) std::swap(u, v);
        return edges.count({u, v}) != 0;
    };
    for (int t = 0; t < n; ++t)
        if (!has_edge(cycle[t], cycle[(t + 1) % n])) return false;
    return true;
}

Tour tour_from_assignment(const TourGadget& g, const BitString& b) {
    if (b.n != g.n) throw input_error("tour_from_assignment: bit string length mismatch");
    if (g.n > 3) throw input_error("tour_from_assignment: size guard n <= 3");
    const int n = g.n;
    const int nvars = g.phi.num_vars;

    std::vector<std::uint8_t> assign(nvars);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) assign[i * n + j] = b.bits[i] & b.bits[j];
    if (!cnf_satisfied(g.phi, assign))
        throw std::logic_error("tour_from_assignment: rank-one assignment does not satisfy phi");

    // Each clause is visited from the first variable (in variable order)
    // whose value satisfies it.
    std::vector<int> visit_var(g.phi.clauses.size(), -1);
    for (std::size_t m = 0; m < g.phi.clauses.size(); ++m) {
        int best = nvars;
        for (int lit : g.phi.clauses[m]) {
            int k = std::abs(lit) - 1;
            bool val = assign[k] != 0;
            if (lit < 0) val = !val;
            if (val) best = std::min(best, k);
        }
        visit_var[m] = best;
    }

    Tour t;
    auto step = [&](int arc_id) {
        t.d_arcs.push_back(arc_id);
        t.d_vertices.push_back(g.d.arcs[arc_id].to);
    };
    t.d_vertices.push_back(g.junction[0]);
    for (int k = 0; k < nvars; ++k) {
        const int len = static_cast<int>(g.chain[k].size());
        const bool truthy = assign[k] != 0;
        if (truthy) {
            step(g.enter_right_arc[k]);
            for (int l = len; l > 1; --l) {
                // Step v_{k,l} -> v_{k,l-1}; detour when this is the 3l'-1..3l'
                // segment of an occurrence this chain must serve.
                if (l % 3 == 0) {
                    int occ = l / 3 - 1;
                    auto [m, negated] = g.occurrence[k][occ];
                    if (!negated && visit_var[m] == k) {
                        step(g.det_to_clause[k][occ]);
                        step(g.det_from_clause[k][occ]);
                        continue;
                    }
                }
                step(g.bwd_arc[k][l - 2]);
            }
            step(g.exit_left_arc[k]);
        } else {
            step(g.enter_left_arc[k]);
            for (int l = 1; l < len; ++l) {
                if (l % 3 == 2) {
                    int occ = (l + 1) / 3 - 1;
                    auto [m, negated] = g.occurrence[k][occ];
                    if (negated && visit_var[m] == k) {
                        step(g.det_to_clause[k][occ]);
                        step(g.det_from_clause[k][occ]);
                        continue;
                    }
                }
                step(g.fwd_arc[k][l - 1]);
            }
            step(g.exit_right_arc[k]);
        }
    }
    // Closing arc t_{n^2} -> s_1 is the last arc added before clause nodes.
    {
        int close = -1;
        for (int a = 0; a < g.d.arc_count(); ++a)
            if (g.d.arcs[a].label == "close") close = a;
        step(close);
    }
    t.d_vertices.pop_back();  // last step returned to the start

    if (static_cast<int>(t.d_vertices.size()) != g.d.vertex_count())
        throw std::logic_error("tour_from_assignment: constructed walk is not spanning");

    // Triple into the undirected graph and verify honestly.
    for (int v : t.d_vertices) {
        t.g_vertices.push_back(3 * v);
        t.g_vertices.push_back(3 * v + 1);
        t.g_vertices.push_back(3 * v + 2);
    }
    Graph und = build_undirected_tour_graph(g);
    if (!is_hamiltonian_cycle(und, t.g_vertices))
        throw std::logic_error("tour_from_assignment: result is not a Hamiltonian cycle");
    return t;
}

std::vector<std::uint8_t> assignment_from_tour(const TourGadget& g, const Tour& t) {
    std::set<int> arcs(t.d_arcs.begin(), t.d_arcs.end());
    std::vector<std::uint8_t> assign(g.phi.num_vars);
    for (int k = 0; k < g.phi.num_vars; ++k) {
        bool right = arcs.count(g.enter_right_arc[k]) != 0;
        bool left = arcs.count(g.enter_left_arc[k]) != 0;
        if (right == left)
            throw input_error("assignment_from_tour: tour does not enter chain exactly once");
        assign[k] = right ? 1 : 0;
    }
    return assign;
}

RatVec project_tour_to_cor(const TourGadget& g, const Tour& t) {
    const int n = g.n;
    std::set<int> arcs(t.d_arcs.begin(), t.d_arcs.end());
    RatVec y(n * (n + 1) / 2, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            int k = i * n + j;  // variable C_ij, i <= j
            bool indicator;
            if (!g.bwd_arc[k].empty()) {
                // Designated edge: the arc v_{k,2} -> v_{k,1}, traversed
                // exactly by right-to-left (true) walks.
                indicator = arcs.count(g.bwd_arc[k][0]) != 0;
            } else {
                // Single-node chain: the port arcs carry the direction.
                indicator = arcs.count(g.enter_right_arc[k]) != 0;
            }
            if (indicator) y[cor_coord_index(n, i, j)] = 1;
        }
    return y;
}

TourEnumeration enumerate_tours(const Digraph& d, std::int64_t step_budget) {
    TourEnumeration result;
    const int n = d.vertex_count();
    if (n == 0) {
        result.complete = true;
        return result;
    }
    std::vector<std::vector<std::pair<int, int>>> out(n), in(n);  // (arc, other end)
    for (int a = 0; a < d.arc_count(); ++a) {
        out[d.arcs[a].from].emplace_back(a, d.arcs[a].to);
        in[d.arcs[a].to].emplace_back(a, d.arcs[a].from);
    }

    std::vector<char> visited(n, 0);
    std::vector<int> path_v{0};
    std::vector<int> path_a;
    visited[0] = 1;
    std::int64_t steps = 0;
    bool exhausted = false;

    // Pruning: every unvisited vertex must keep a usable in-arc, be reachable
    // from the current vertex through unvisited vertices, and the start must
    // be reachable to close the cycle.
    std::vector<char> reached(n, 0);
    std::vector<int> queue;
    auto feasible = [&](int current) {
        for (int u = 0; u < n; ++u) {
            if (visited[u]) continue;
            bool has_in = false;
            for (auto [a, s] : in[u]) {
                (void)a;
                if (!visited[s] || s == current) {
                    has_in = true;
                    break;
                }
            }
            if (!has_in) return false;
        }
        std::fill(reached.begin(), reached.end(), 0);
        queue.clear();
        queue.push_back(current);
        reached[current] = 1;
        bool start_reachable = false;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            for (auto [a, w] : out[queue[head]]) {
                (void)a;
                if (w == 0) start_reachable = true;
                if (visited[w] || reached[w]) continue;
                reached[w] = 1;
                queue.push_back(w);
            }
        }
        if (!start_reachable) return false;
        for (int u = 0; u < n; ++u)
            if (!visited[u] && !reached[u]) return false;
        return true;
    };

    auto rec = [&](auto&& self, int current) -> void {
        if (exhausted) return;
        if (++steps > step_budget) {
            exhausted = true;
            return;
        }
        if (static_cast<int>(path_v.size()) == n) {
            for (auto [a, w] : out[current])
                if (w == 0) {
                    Tour t;
                    t.d_vertices = path_v;
                    t.d_arcs = path_a;
                    t.d_arcs.push_back(a);
                    result.tours.push_back(std::move(t));
                }
            return;
        }
        if (!feasible(current)) return;
        for (auto [a, w] : out[current]) {
            if (visited[w]) continue;
            visited[w] = 1;
            path_v.push_back(w);
            path_a.push_back(a);
            self(self, w);
            path_a.pop_back();
            path_v.pop_back();
            visited[w] = 0;
        }
    };
    rec(rec, 0);
    result.complete = !exhausted;
    return result;
}

void to_json(nlohmann::json& j, const CnfFormula& f) {
    j = nlohmann::json{
        {"num_vars", f.num_vars}, {"var_labels", f.var_labels}, {"clauses", f.clauses}};
}

}  // namespace xc
