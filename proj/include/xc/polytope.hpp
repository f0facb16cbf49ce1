#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "xc/graph.hpp"
#include "xc/lp.hpp"
#include "xc/matrix.hpp"

namespace xc {

// One row coeffs.x <= rhs.
struct Inequality {
    RatVec coeffs;
    Rational rhs;

    Rational slack_at(const RatVec& point) const { return rhs - dot(coeffs, point); }
    bool operator==(const Inequality& o) const = default;
};

// One row coeffs.x == rhs (affine hull descriptions).
struct Equality {
    RatVec coeffs;
    Rational rhs;
    bool operator==(const Equality& o) const = default;
};

// Affine map x -> matrix.x + offset.
struct LinearMap {
    RationalMatrix matrix;  // target_dim x source_dim
    RatVec offset;          // length target_dim (empty means zero)

    RatVec apply(const RatVec& point) const;
};

// Exact polytope carrying either or both representations. When both are
// present they are expected to describe the same set; validate_reps checks
// this by a roundtrip conversion.
struct Polytope {
    int dim = 0;
    std::optional<std::vector<RatVec>> vertices;
    std::optional<std::vector<Inequality>> inequalities;
    std::optional<std::vector<Equality>> equalities;

    const std::vector<RatVec>& vrep() const;
    const std::vector<Inequality>& hrep() const;
};

struct HRep {
    std::vector<Inequality> facets;
    std::vector<Equality> equalities;
};

// Work guard for the double description method; exhaustion raises
// budget_error instead of grinding forever.
struct DdBudget {
    std::int64_t max_rays = 2'000'000;
};

// Irredundant facets plus affine-hull equalities of conv(points), by the
// exact double description method on the polar of the homogenization cone.
HRep hull_facets(const std::vector<RatVec>& points, const DdBudget& budget = {});

// Exact vertex enumeration of {x : ineqs, eqs}; throws unbounded_error when
// the set is not bounded. An empty list means the system is infeasible.
std::vector<RatVec> vertices_from_hrep(const std::vector<Inequality>& ineqs,
                                       const std::vector<Equality>& eqs = {},
                                       const DdBudget& budget = {});

// Polytope with V-rep, filling the H-rep via hull_facets.
Polytope with_hrep(const Polytope& p, const DdBudget& budget = {});
Polytope with_vrep(const Polytope& p, const DdBudget& budget = {});
bool validate_reps(const Polytope& p);

struct SlackMatrix {
    RationalMatrix matrix;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
};

// Exact slacks rhs_i - coeffs_i.point_j; a negative entry (point violating a
// row) raises validity_error naming the offending pair. Redundant rows and
// non-vertex columns are allowed.
SlackMatrix slack_matrix(const std::vector<Inequality>& rows, const std::vector<RatVec>& cols,
                         const std::vector<std::string>& row_labels = {},
                         const std::vector<std::string>& col_labels = {});
SlackMatrix slack_matrix(const Polytope& p);

// Generators. Cut vectors are enumerated modulo complementation, so cut(n)
// has exactly 2^(n-1) vertices. cor(n) lives in the n(n+1)/2 coordinates
// y_ij with i <= j.
Polytope cut_polytope(int n);
Polytope correlation_polytope(int n);
Polytope stable_set_polytope(const Graph& g);

enum class PolytopeKind { Cut, Cor, Stab };
Polytope gen_polytope(PolytopeKind kind, int n);

// Index helpers for the generator coordinate conventions (0-based i <= j).
int cut_edge_index(int n, int i, int j);   // edges of K_n, i < j, lex order
int cor_coord_index(int n, int i, int j);  // pairs i <= j, lex order

// The linear isomorphism CUT(n+1) -> COR(n) and its inverse. Vertex-set
// bijectivity is verified by enumeration at construction for n <= 4.
std::pair<LinearMap, LinearMap> covariance_iso(int n);

// Face of p defined by a valid inequality: vertices satisfying it with
// equality. An inequality slack at every vertex defines no proper face and
// returns p unchanged. Invalid inequalities raise validity_error.
Polytope face_of(const Polytope& p, const Inequality& ineq);

// V-rep image under an affine map, reduced to extreme points.
Polytope linear_image(const Polytope& p, const LinearMap& map);

// Points that are vertices of conv(points), each exactly once.
std::vector<RatVec> irredundant_hull(const std::vector<RatVec>& points);

std::string inequality_str(const Inequality& ineq,
                           const std::vector<std::string>& var_names = {});

void to_json(nlohmann::json& j, const Polytope& p);
void from_json(const nlohmann::json& j, Polytope& p);

}  // namespace xc
