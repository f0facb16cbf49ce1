#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "xc/factorization.hpp"
#include "xc/matrix.hpp"

namespace xc {

// Cartesian product of row and column index sets; in a 1-cover every covered
// cell is a 1 of the underlying matrix.
struct Rectangle {
    std::vector<int> row_set;
    std::vector<int> col_set;
    bool operator==(const Rectangle& o) const = default;
};

struct RectangleCover {
    std::vector<Rectangle> rectangles;
    int size = 0;
    bool optimal = false;
    int lower_bound = 0;  // proven lower bound on the minimum cover size
};

struct SearchBudget {
    std::int64_t max_candidates = 200'000;
    std::int64_t budget_ms = 10'000;
};

// All inclusion-maximal 1-monochromatic rectangles, each exactly once, in
// lectic order of their column sets. Raises budget_error past the cap.
std::vector<Rectangle> maximal_rectangles(const BooleanMatrix& b,
                                          std::int64_t max_candidates = 200'000);

// Provably minimum 1-rectangle cover by branch and bound over maximal
// rectangles, with a greedy fooling-set bound for pruning. On budget
// exhaustion returns the best cover found with optimal = false and the best
// proven lower bound.
RectangleCover min_rectangle_cover(const BooleanMatrix& b, const SearchBudget& budget = {});

bool cover_is_valid(const BooleanMatrix& b, const RectangleCover& cover);

struct NnegRankBounds {
    int lower = 0;
    int upper = 0;
    enum class LowerWitness { Rank, Cover };
    LowerWitness lower_witness = LowerWitness::Rank;
    RectangleCover cover;
    NonnegFactorization upper_witness;
};

// lower = max(exact rank, proven cover bound of the support); upper = the
// best exactly verified factorization found (heuristic search, else the
// trivial identity split giving min(rows, cols)).
NnegRankBounds nnegrank_bounds(const RationalMatrix& m, const SearchBudget& budget = {},
                               std::uint64_t seed = 1);

// Multiplicative-update NMF in floating point followed by exact
// rationalization (continued fractions, denominators up to 1e6) and an exact
// LP polish; only exactly verified factorizations are returned.
std::optional<NonnegFactorization> nmf_heuristic(const RationalMatrix& m, int r,
                                                 double tolerance = 1e-6,
                                                 std::uint64_t seed = 1, int max_iters = 3000);

void to_json(nlohmann::json& j, const Rectangle& r);
void to_json(nlohmann::json& j, const RectangleCover& c);
void from_json(const nlohmann::json& j, Rectangle& r);
void from_json(const nlohmann::json& j, RectangleCover& c);

}  // namespace xc
