#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "xc/matrix.hpp"
#include "xc/polytope.hpp"

namespace xc {

// S = left * right with entrywise nonnegative factors; inner dimension is
// the rank of the factorization.
struct NonnegFactorization {
    RationalMatrix left;   // m x r
    RationalMatrix right;  // r x n
    int rank() const { return left.cols; }
};

// M_ij = <row_factors[i], col_factors[j]> (Frobenius pairing) with symmetric
// PSD factors of size r x r.
struct PsdFactorization {
    int r = 0;
    std::vector<RationalMatrix> row_factors;
    std::vector<RationalMatrix> col_factors;
};

struct VerifyResult {
    bool ok = true;
    int bad_i = -1;
    int bad_j = -1;
    std::string reason;
    explicit operator bool() const { return ok; }
};

// Exact product equality plus nonnegativity; reports the first violation.
VerifyResult verify_nonneg_factorization(const RationalMatrix& s, const NonnegFactorization& f);

// Exact Frobenius-pairing equality plus an exact PSD certificate (LDL^T with
// nonnegative pivots) for every factor.
VerifyResult verify_psd_factorization(const RationalMatrix& m, const PsdFactorization& f);

// Exact PSD test for a symmetric rational matrix.
bool is_psd(const RationalMatrix& sym);

// The two self-dual cones the toolkit works over.
struct ConeId {
    enum class Kind { NonnegOrthant, PsdCone };
    Kind kind = Kind::NonnegOrthant;
    int param = 0;  // orthant dimension k, or PSD matrix side r

    int ambient_dim() const {
        return kind == Kind::NonnegOrthant ? param : param * (param + 1) / 2;
    }
};

bool cone_contains(const ConeId& cone, const RatVec& y);

// Conic system E x + F y = g, y in cone, together with lifted witnesses
// (vertex id, y) proving that the polytope's vertices project from it.
struct ExtensionSystem {
    RationalMatrix E;
    RationalMatrix F;
    RatVec g;
    ConeId cone;
    std::vector<std::pair<int, RatVec>> lifted_points;
};

// From a verified factorization of the slack matrix of p (w.r.t. its stored
// inequality rows and vertices) to the slack-form extension
//   A x + T y = b, y >= 0,
// dropping zero columns of the left factor first. Every vertex lifts via its
// right-factor column.
ExtensionSystem extension_from_nonneg_factorization(const Polytope& p,
                                                    const NonnegFactorization& f);

// The reverse direction for nonnegative-orthant systems: vertex lifts give
// the right factor, and exact LP multipliers expressing each inequality row
// from the equalities and y >= 0 give the left factor rows. The result
// verifies against the slack matrix of p exactly.
NonnegFactorization factorization_from_extension(const ExtensionSystem& ext, const Polytope& p);

// Extends a factorization over facet rows and vertices to extra (redundant
// or tight-everywhere) rows and extra (interior) points, without changing
// the inner dimension.
NonnegFactorization extend_to_redundant_rows(const NonnegFactorization& f, const Polytope& p,
                                             const std::vector<Inequality>& extra_rows,
                                             const std::vector<RatVec>& extra_cols);

// Rank-(n+1) PSD factorization of the 2^n x 2^n correlation slack matrix:
// rank-one factors built from (1, -a) and (1, b).
PsdFactorization cor_slack_psd_factorization(int n);

// Conic extension in the PSD cone: F rows carry the row factors flattened
// with doubled off-diagonal so the pairing with plainly flattened y is the
// Frobenius product.
ExtensionSystem psd_extension_from_factorization(const Polytope& p, const PsdFactorization& f);

// Exact PSD factorization of m of rank rank(n) + 1, given m = n squared
// entrywise: rank-factor n, scale rows by a shared rational norm bound, and
// keep the normalization slack as a separate diagonal block.
PsdFactorization psd_rank_upper_from_sqrt(const RationalMatrix& m, const RationalMatrix& n);

// Symmetric flattenings over the upper triangle (row-major, i <= j).
RatVec sym_flatten_plain(const RationalMatrix& sym);
RatVec sym_flatten_weighted(const RationalMatrix& sym);  // off-diagonal doubled
RationalMatrix sym_unflatten(const RatVec& v, int r);

void to_json(nlohmann::json& j, const NonnegFactorization& f);
void from_json(const nlohmann::json& j, NonnegFactorization& f);
void to_json(nlohmann::json& j, const PsdFactorization& f);
void from_json(const nlohmann::json& j, PsdFactorization& f);
void to_json(nlohmann::json& j, const ExtensionSystem& e);
void from_json(const nlohmann::json& j, ExtensionSystem& e);

}  // namespace xc
