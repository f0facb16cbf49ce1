#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "xc/graph.hpp"
#include "xc/matrix.hpp"
#include "xc/polytope.hpp"

namespace xc {

// Fixed-length 0/1 string. Lexicographic order coincides with numeric order
// of the index read MSB-first, so from_index(n, k) enumerates strings in
// lexicographic order as k runs over 0..2^n-1.
struct BitString {
    int n = 0;
    std::vector<std::uint8_t> bits;

    static BitString from_index(int n, std::uint64_t index);
    std::uint64_t index() const;
    int dot(const BitString& o) const;  // number of shared 1 positions
    std::string str() const;
    bool operator==(const BitString& o) const = default;
};

// 2^n x 2^n matrix over bit-string pairs (a, b) with entry (1 - a.b)^2: the
// exact slack of the correlation-polytope vertex bb^T against the quadratic
// valid inequality derived from a (see cor_inequality).
RationalMatrix cor_slack_matrix(int n);

// The valid inequality <2 diag(a) - aa^T, x> <= 1 over the n(n+1)/2
// correlation coordinates y_ij (i <= j): coefficient a_i on y_ii and
// -2 a_i a_j on y_ij for i < j.
Inequality cor_inequality(const BitString& a);

// ---------------------------------------------------------------------------
// Stable-set gadget: a graph on 2n + 4*C(n,2) vertices whose maximum stable
// sets are in bijection with {0,1}^n.
// ---------------------------------------------------------------------------

// Vertex labels: "i,i" / "~i,i" for the two-vertex clique of each i, and
// "i,j" / "~i,j" / "_i,j" / "~_i,j" for the four-vertex clique of each pair
// i < j, picking (1,1), (0,1), (1,0), (0,0) for (b_i, b_j) respectively.
Graph build_stable_set_gadget(int n);

// All maximum stable sets (one vertex per clique); exactly 2^n of them.
std::vector<std::vector<int>> gadget_max_stable_sets(const Graph& h, int n);

// Orthogonal projection onto correlation coordinates: y_ij is the indicator
// of the plain "i,j" vertex. Input must pick one vertex per clique.
RatVec project_stable_set_to_cor(const Graph& h, const std::vector<int>& stable_set, int n);

// ---------------------------------------------------------------------------
// Tour gadget: CNF whose models are the rank-one 0/1 matrices, a digraph
// whose tours encode those models, and its undirected tripling.
// ---------------------------------------------------------------------------

struct CnfFormula {
    int num_vars = 0;
    std::vector<std::string> var_labels;
    // Each clause has exactly three literals; literal k+1 is variable k
    // positive, -(k+1) negated (DIMACS convention).
    std::vector<std::array<int, 3>> clauses;
};

// n^2 variables C_ij in row-major order; for every ordered pair i != j the
// four clauses encoding C_ij = C_ii AND C_jj, in a fixed template order.
CnfFormula build_rank1_cnf(int n);

bool cnf_satisfied(const CnfFormula& f, const std::vector<std::uint8_t>& assignment);
std::string cnf_dimacs(const CnfFormula& f);

// Digraph gadget plus the bookkeeping needed to build and read tours.
struct TourGadget {
    int n = 0;
    CnfFormula phi;
    Digraph d;
    std::vector<std::vector<int>> chain;  // per variable k: nodes v_{k,1..3p+1}
    std::vector<int> junction;            // s_1, s_2 = t_1, ..., t_{#vars}
    std::vector<int> clause_node;         // w_m per clause
    // Per variable: (clause index m, negated?) in clause order.
    std::vector<std::vector<std::pair<int, bool>>> occurrence;
    // Arc ids of the diamond ports. On single-node chains the two enter
    // (resp. exit) arcs are parallel, and entry identity is what still
    // distinguishes the traversal direction.
    std::vector<int> enter_left_arc;   // s_k -> v_{k,1}
    std::vector<int> enter_right_arc;  // s_k -> v_{k,3p+1}
    std::vector<int> exit_left_arc;    // v_{k,1} -> t_k
    std::vector<int> exit_right_arc;   // v_{k,3p+1} -> t_k
    // Chain arcs: fwd[l-1] is v_{k,l} -> v_{k,l+1}, bwd[l-1] the reverse.
    std::vector<std::vector<int>> fwd_arc;
    std::vector<std::vector<int>> bwd_arc;
    // Detour arcs per occurrence: chain -> w_m and w_m -> chain.
    std::vector<std::vector<int>> det_to_clause;
    std::vector<std::vector<int>> det_from_clause;
};

TourGadget build_tour_gadget(int n);

// Undirected tripling: each digraph node v becomes the path in-mid-out and
// each arc (v,w) the edge {v_out, w_in}. Node v maps to indices 3v+0/1/2.
Graph build_undirected_tour_graph(const TourGadget& g);

struct Tour {
    std::vector<int> d_vertices;  // vertex cycle in the digraph (no repeat of start)
    std::vector<int> d_arcs;      // arc ids, d_arcs[t] goes d_vertices[t] -> d_vertices[t+1]
    std::vector<int> g_vertices;  // induced cycle in the tripled graph (may be empty)
};

// Builds the tour encoding assignment C = bb^T: traverse chain k right to
// left when variable k is true, detouring through each clause node once,
// from the first satisfying variable in variable order. The result is
// verified to be a Hamiltonian cycle of the tripled graph.
Tour tour_from_assignment(const TourGadget& g, const BitString& b);

// Reads the assignment a directed tour encodes (per-variable traversal
// direction; entry-arc identity decides on single-node chains).
std::vector<std::uint8_t> assignment_from_tour(const TourGadget& g, const Tour& t);

// Projection onto correlation coordinates: y_ij is the indicator of the
// designated right-to-left chain edge of variable C_ij.
RatVec project_tour_to_cor(const TourGadget& g, const Tour& t);

struct TourEnumeration {
    std::vector<Tour> tours;
    bool complete = false;
};

// Exhaustive directed-tour enumeration (backtracking with forced-move
// pruning), stopping early when the step budget runs out.
TourEnumeration enumerate_tours(const Digraph& d, std::int64_t step_budget = 50'000'000);

bool is_hamiltonian_cycle(const Graph& g, const std::vector<int>& cycle);

void to_json(nlohmann::json& j, const CnfFormula& f);

}  // namespace xc
