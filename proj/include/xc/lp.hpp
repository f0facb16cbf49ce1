#pragma once

#include <optional>

#include "xc/matrix.hpp"

namespace xc {

enum class LpStatus { Optimal, Infeasible, Unbounded };
enum class LpSense { Max, Min };

// Result of an exact LP over free variables x:
//   optimize c.x  subject to  A x <= b  (and optionally  eqA x = eqb).
// On Optimal, primal satisfies every constraint with exact rational
// arithmetic. On Infeasible, the certificate satisfies
//   farkas_ineq >= 0,  farkas_ineq.A + farkas_eq.eqA = 0,
//   farkas_ineq.b + farkas_eq.eqb < 0.
struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    std::optional<Rational> optimum;
    std::optional<RatVec> primal;
    std::optional<RatVec> farkas_ineq;
    std::optional<RatVec> farkas_eq;
};

struct LpProblem {
    RationalMatrix ineq_lhs;  // A, m x n
    RatVec ineq_rhs;          // b
    RationalMatrix eq_lhs;    // optional extra equalities, p x n (rows may be empty)
    RatVec eq_rhs;
    RatVec objective;  // c, length n
    LpSense sense = LpSense::Max;
    // When set, variables are restricted to x >= 0 (halving the internal
    // column count); the Farkas certificate then witnesses y >= 0 with
    // y.A >= 0 componentwise and y.b < 0.
    bool nonneg_vars = false;
};

// Exact rational simplex with Bland's pivot rule (terminates on degenerate
// inputs). Equalities are expanded to opposite inequality pairs internally;
// the reported Farkas multipliers are merged back per equality row.
LpResult lp_solve(const LpProblem& prob);

LpResult lp_solve(const RationalMatrix& a, const RatVec& b, const RatVec& objective,
                  LpSense sense = LpSense::Max);

// Nonnegative multipliers lambda with lambda.A = c and lambda.b = delta,
// witnessing that c.x <= delta is derivable from the system A x <= b.
// Throws validity_error when c.x <= delta is not valid for {Ax <= b}, and
// input_error when no such decomposition exists (precondition violated).
RatVec farkas_decompose(const RationalMatrix& a, const RatVec& b, const RatVec& c,
                        const Rational& delta);

}  // namespace xc
