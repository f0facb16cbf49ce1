#include "xc/bounds.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include <boost/dynamic_bitset.hpp>

#include "xc/lp.hpp"

namespace xc {

namespace {

using Bits = boost::dynamic_bitset<>;

Bits row_bits(const BooleanMatrix& b, int i) {
    Bits r(b.cols);
    for (int j = 0; j < b.cols; ++j)
        if (b.at(i, j)) r.set(j);
    return r;
}

// rows(C): every row that is 1 on all of C.
Bits rows_supporting(const std::vector<Bits>& rows, const Bits& cols) {
    Bits out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        if ((cols & ~rows[i]).none()) out.set(i);
    return out;
}

// closure(C) = intersection of all supporting rows; full column set when no
// row supports C.
Bits column_closure(const std::vector<Bits>& rows, const Bits& cols, const Bits& support) {
    Bits out(cols.size());
    out.set();
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (support.test(i)) out &= rows[i];
    return out;
}

}  // namespace

std::vector<Rectangle> maximal_rectangles(const BooleanMatrix& b, std::int64_t max_candidates) {
    if (static_cast<std::int64_t>(b.rows) * b.cols > 65'536)
        throw budget_error("maximal_rectangles: matrix too large for exact enumeration");
    const int nc = b.cols;
    std::vector<Bits> rows;
    rows.reserve(b.rows);
    for (int i = 0; i < b.rows; ++i) rows.push_back(row_bits(b, i));

    std::vector<Rectangle> out;
    if (nc == 0 || b.rows == 0) return out;

    auto emit = [&](const Bits& cols) {
        Bits support = rows_supporting(rows, cols);
        if (support.none() || cols.none()) return;
        Rectangle r;
        for (int i = 0; i < b.rows; ++i)
            if (support.test(i)) r.row_set.push_back(i);
        for (int j = 0; j < nc; ++j)
            if (cols.test(j)) r.col_set.push_back(j);
        out.push_back(std::move(r));
        if (static_cast<std::int64_t>(out.size()) > max_candidates)
            throw budget_error("maximal_rectangles: candidate cap exceeded");
    };

    // Ganter's NextClosure over column sets in lectic order enumerates every
    // closed set exactly once; concepts with nonempty sides are exactly the
    // maximal 1-rectangles.
    auto closure_of = [&](const Bits& c) {
        return column_closure(rows, c, rows_supporting(rows, c));
    };
    Bits a = closure_of(Bits(nc));
    std::int64_t visited = 0;
    for (;;) {
        if (++visited > 4 * max_candidates + 16)
            throw budget_error("maximal_rectangles: closure cap exceeded");
        emit(a);
        bool advanced = false;
        for (int i = nc - 1; i >= 0; --i) {
            if (a.test(i)) continue;
            Bits prefix = a;
            for (int t = i; t < nc; ++t) prefix.reset(t);
            prefix.set(i);
            Bits next = closure_of(prefix);
            bool canonical = true;
            for (int t = 0; t < i && canonical; ++t)
                if (next.test(t) && !a.test(t)) canonical = false;
            if (canonical) {
                a = next;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return out;
}

bool cover_is_valid(const BooleanMatrix& b, const RectangleCover& cover) {
    Bits covered(static_cast<std::size_t>(b.rows) * b.cols);
    for (const auto& r : cover.rectangles) {
        if (r.row_set.empty() || r.col_set.empty()) return false;
        for (int i : r.row_set)
            for (int j : r.col_set) {
                if (i < 0 || i >= b.rows || j < 0 || j >= b.cols) return false;
                if (!b.at(i, j)) return false;  // not 1-monochromatic
                covered.set(static_cast<std::size_t>(i) * b.cols + j);
            }
    }
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < b.cols; ++j)
            if (b.at(i, j) && !covered.test(static_cast<std::size_t>(i) * b.cols + j))
                return false;
    return true;
}

namespace {

int ceil_of(const Rational& q) {
    Int n = rat_num(q), d = rat_den(q);
    Int c = n / d;
    if (c * d < n) c += 1;
    return static_cast<int>(c);
}

struct CoverSearch {
    std::vector<Bits> cand_cells;            // candidate -> essential cells covered
    std::vector<std::vector<int>> covering;  // essential cell -> covering candidates
    std::vector<Bits> compat;                // cell pair co-coverable in one rectangle
    std::vector<int> fooling_order;          // cells by ascending compatibility degree
    int lp_floor = 0;                        // ceil of the fractional cover value
    std::chrono::steady_clock::time_point deadline;
    bool timed_out = false;

    std::vector<int> best;
    int best_size = 0;

    // Greedy set of pairwise one-rectangle-incompatible 1-cells: each needs
    // its own rectangle, so the count lower-bounds any remaining cover.
    int fooling_bound(const Bits& uncovered) const {
        Bits chosen(uncovered.size());
        int count = 0;
        for (int c : fooling_order) {
            if (!uncovered.test(c)) continue;
            if ((compat[c] & chosen).any()) continue;
            chosen.set(c);
            ++count;
        }
        return count;
    }

    void greedy_seed() {
        Bits uncovered(covering.size());
        uncovered.set();
        std::vector<int> picked;
        while (uncovered.any()) {
            int best_cand = -1;
            std::size_t best_gain = 0;
            for (std::size_t c = 0; c < cand_cells.size(); ++c) {
                std::size_t gain = (cand_cells[c] & uncovered).count();
                if (gain > best_gain) {
                    best_gain = gain;
                    best_cand = static_cast<int>(c);
                }
            }
            if (best_cand < 0) throw std::logic_error("cover search: uncoverable cell");
            picked.push_back(best_cand);
            uncovered &= ~cand_cells[best_cand];
        }
        std::sort(picked.begin(), picked.end());
        best = picked;
        best_size = static_cast<int>(picked.size());
    }

    void dfs(Bits& uncovered, std::vector<int>& chosen) {
        if (timed_out) return;
        if (std::chrono::steady_clock::now() > deadline) {
            timed_out = true;
            return;
        }
        if (uncovered.none()) {
            // Strict-improvement search: any complete cover reached here is
            // smaller than the incumbent.
            best = chosen;
            std::sort(best.begin(), best.end());
            best_size = static_cast<int>(chosen.size());
            return;
        }
        int used = static_cast<int>(chosen.size());
        int bound = std::max(used + std::max(fooling_bound(uncovered), 1), lp_floor);
        if (bound >= best_size) return;

        // Branch on the uncovered cell with the fewest covering rectangles,
        // trying candidates by descending fresh coverage.
        int cell = -1;
        std::size_t fewest = SIZE_MAX;
        for (std::size_t c = 0; c < covering.size(); ++c) {
            if (!uncovered.test(c)) continue;
            if (covering[c].size() < fewest) {
                fewest = covering[c].size();
                cell = static_cast<int>(c);
            }
        }
        std::vector<std::pair<std::size_t, int>> order;
        order.reserve(covering[cell].size());
        for (int cand : covering[cell])
            order.emplace_back((cand_cells[cand] & uncovered).count(), cand);
        std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        for (auto [gain, cand] : order) {
            Bits saved = uncovered;
            uncovered &= ~cand_cells[cand];
            chosen.push_back(cand);
            dfs(uncovered, chosen);
            chosen.pop_back();
            uncovered = std::move(saved);
            if (timed_out) return;
        }
    }
};

}  // namespace

RectangleCover min_rectangle_cover(const BooleanMatrix& b, const SearchBudget& budget) {
    RectangleCover result;
    std::vector<std::pair<int, int>> ones;
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < b.cols; ++j)
            if (b.at(i, j)) ones.emplace_back(i, j);
    if (ones.empty()) {
        result.optimal = true;
        return result;
    }

    // Candidate generation. The exhaustive maximal-rectangle list feeds the
    // provably-optimal search; past desk scale (or past the cap) fall back to
    // one maximal rectangle through each 1-cell's column, which still covers
    // everything but forfeits the optimality claim.
    bool candidates_complete = false;
    std::vector<Rectangle> candidates;
    if (ones.size() <= 2'000) {
        try {
            candidates = maximal_rectangles(b, budget.max_candidates);
            candidates_complete = true;
        } catch (const budget_error&) {
        }
        if (candidates.size() > 5'000) {
            candidates.clear();
            candidates_complete = false;
        }
    }
    if (!candidates_complete) {
        candidates.clear();
        std::vector<Bits> rows;
        for (int i = 0; i < b.rows; ++i) rows.push_back(row_bits(b, i));
        std::vector<Bits> seen;
        for (auto [i, j] : ones) {
            Bits c(b.cols);
            c.set(j);
            Bits support = rows_supporting(rows, c);
            Bits closed = column_closure(rows, c, support);
            if (std::find(seen.begin(), seen.end(), closed) != seen.end()) continue;
            seen.push_back(closed);
            Rectangle r;
            for (int t = 0; t < b.rows; ++t)
                if (support.test(t)) r.row_set.push_back(t);
            for (int t = 0; t < b.cols; ++t)
                if (closed.test(t)) r.col_set.push_back(t);
            candidates.push_back(std::move(r));
        }
    }

    std::vector<Bits> cand_all(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        Bits cells(ones.size());
        const auto& r = candidates[c];
        for (std::size_t t = 0; t < ones.size(); ++t) {
            auto [i, j] = ones[t];
            if (std::binary_search(r.row_set.begin(), r.row_set.end(), i) &&
                std::binary_search(r.col_set.begin(), r.col_set.end(), j))
                cells.set(t);
        }
        cand_all[c] = std::move(cells);
    }
    std::vector<Bits> cell_cands(ones.size(), Bits(candidates.size()));
    for (std::size_t c = 0; c < candidates.size(); ++c)
        for (std::size_t t = 0; t < ones.size(); ++t)
            if (cand_all[c].test(t)) cell_cands[t].set(c);

    // Cell dominance: if every rectangle covering cell c also covers cell e,
    // then covering c covers e for free, so e can leave the universe.
    // Quadratic in the cell count, so skipped past desk scale.
    std::vector<char> dropped(ones.size(), 0);
    if (ones.size() <= 2'000) {
        for (std::size_t c = 0; c < ones.size(); ++c) {
            if (dropped[c]) continue;
            for (std::size_t e = 0; e < ones.size(); ++e) {
                if (e == c || dropped[e]) continue;
                if ((cell_cands[c] & ~cell_cands[e]).none() &&
                    (cell_cands[c].count() < cell_cands[e].count() || c < e))
                    dropped[e] = 1;
            }
        }
    }
    std::vector<int> essential;
    for (std::size_t t = 0; t < ones.size(); ++t)
        if (!dropped[t]) essential.push_back(static_cast<int>(t));
    const std::size_t ne = essential.size();

    // The exact pipeline (compatibility matrix, fractional LP, exhaustive
    // search) is quadratic and worse in the cell count; past desk scale fall
    // back to a greedy cover with a direct fooling-set lower bound.
    if (ne > 600 || candidates.size() > 5'000) {
        Bits uncovered(ones.size());
        uncovered.set();
        std::vector<Bits> cand_fast = cand_all;
        while (uncovered.any()) {
            int best_cand = -1;
            std::size_t best_gain = 0;
            for (std::size_t c = 0; c < cand_fast.size(); ++c) {
                std::size_t gain = (cand_fast[c] & uncovered).count();
                if (gain > best_gain) {
                    best_gain = gain;
                    best_cand = static_cast<int>(c);
                }
            }
            if (best_cand < 0) throw std::logic_error("min_rectangle_cover: uncoverable cell");
            result.rectangles.push_back(candidates[best_cand]);
            uncovered &= ~cand_fast[best_cand];
        }
        result.size = static_cast<int>(result.rectangles.size());
        result.optimal = false;
        std::vector<int> fooling;
        const std::size_t scan_cap = 20'000;
        for (std::size_t t = 0; t < essential.size() && t < scan_cap; ++t) {
            auto [i, j] = ones[essential[t]];
            bool independent = true;
            for (int d : fooling) {
                auto [k, l] = ones[d];
                if (b.at(i, l) && b.at(k, j)) {
                    independent = false;
                    break;
                }
            }
            if (independent) fooling.push_back(essential[t]);
        }
        result.lower_bound = std::max<int>(1, static_cast<int>(fooling.size()));
        if (!cover_is_valid(b, result))
            throw std::logic_error("min_rectangle_cover: produced an invalid cover");
        return result;
    }

    CoverSearch search;
    search.deadline =
        std::chrono::steady_clock::now() + std::chrono::milliseconds(budget.budget_ms);
    search.cand_cells.assign(candidates.size(), Bits(ne));
    search.covering.assign(ne, {});
    for (std::size_t c = 0; c < candidates.size(); ++c)
        for (std::size_t t = 0; t < ne; ++t)
            if (cand_all[c].test(essential[t])) {
                search.cand_cells[c].set(t);
                search.covering[t].push_back(static_cast<int>(c));
            }

    // Pairwise co-coverability: cells (i,j), (k,l) can share a 1-rectangle
    // only when the opposite corners (i,l), (k,j) are both 1.
    search.compat.assign(ne, Bits(ne));
    for (std::size_t s = 0; s < ne; ++s)
        for (std::size_t t = s + 1; t < ne; ++t) {
            auto [i, j] = ones[essential[s]];
            auto [k, l] = ones[essential[t]];
            if (b.at(i, l) && b.at(k, j)) {
                search.compat[s].set(t);
                search.compat[t].set(s);
            }
        }
    search.fooling_order.resize(ne);
    for (std::size_t t = 0; t < ne; ++t) search.fooling_order[t] = static_cast<int>(t);
    std::stable_sort(search.fooling_order.begin(), search.fooling_order.end(),
                     [&](int x, int y) { return search.compat[x].count() < search.compat[y].count(); });

    // Fractional cover LP gives the strongest cheap global bound. The exact
    // simplex is not interruptible, so only run it at sizes where it is
    // known to finish fast.
    if (candidates.size() <= 600 && ne <= 400) {
        const int nc = static_cast<int>(candidates.size());
        LpProblem lp;
        lp.nonneg_vars = true;
        lp.sense = LpSense::Min;
        lp.objective.assign(nc, Rational(1));
        lp.ineq_lhs = RationalMatrix(static_cast<int>(ne), nc);
        lp.ineq_rhs.assign(ne, Rational(-1));
        for (std::size_t t = 0; t < ne; ++t)
            for (int c : search.covering[t]) lp.ineq_lhs.at(static_cast<int>(t), c) = -1;
        LpResult res = lp_solve(lp);
        if (res.status != LpStatus::Optimal)
            throw std::logic_error("min_rectangle_cover: cover LP not optimal");
        search.lp_floor = ceil_of(*res.optimum);
    }

    search.greedy_seed();
    Bits uncovered(ne);
    uncovered.set();
    int root_fooling = search.fooling_bound(uncovered);
    std::vector<int> chosen;
    search.dfs(uncovered, chosen);

    for (int c : search.best) result.rectangles.push_back(candidates[c]);
    result.size = search.best_size;
    result.optimal = candidates_complete && !search.timed_out;
    result.lower_bound =
        result.optimal ? result.size : std::max({root_fooling, search.lp_floor, 1});
    if (!cover_is_valid(b, result))
        throw std::logic_error("min_rectangle_cover: produced an invalid cover");
    return result;
}

// ---------------------------------------------------------------------------
// Nonnegative rank bounds
// ---------------------------------------------------------------------------

namespace {


// With one side fixed exactly, the other side solves per-column feasibility
// LPs; any solution makes the product exact by construction.
std::optional<RationalMatrix> exact_complete_right(const RationalMatrix& left,
                                                   const RationalMatrix& m) {
    const int r = left.cols;
    RationalMatrix right(r, m.cols);
    for (int j = 0; j < m.cols; ++j) {
        LpProblem lp;
        lp.objective.assign(r, Rational(0));
        lp.ineq_lhs = RationalMatrix(r, r);
        for (int t = 0; t < r; ++t) lp.ineq_lhs.at(t, t) = -1;
        lp.ineq_rhs.assign(r, Rational(0));
        lp.eq_lhs = left;
        lp.eq_rhs = m.col(j);
        LpResult res = lp_solve(lp);
        if (res.status != LpStatus::Optimal) return std::nullopt;
        for (int t = 0; t < r; ++t) right.at(t, j) = (*res.primal)[t];
    }
    return right;
}

}  // namespace

std::optional<NonnegFactorization> nmf_heuristic(const RationalMatrix& m, int r, double tolerance,
                                                 std::uint64_t seed, int max_iters) {
    if (r < 1) throw input_error("nmf_heuristic: need r >= 1");
    for (const auto& x : m.a)
        if (x < 0) throw input_error("nmf_heuristic: negative entry");
    if (m.rows == 0 || m.cols == 0) return std::nullopt;

    const int mr = m.rows, mc = m.cols;
    std::vector<double> v(static_cast<std::size_t>(mr) * mc);
    for (int i = 0; i < mr; ++i)
        for (int j = 0; j < mc; ++j)
            v[static_cast<std::size_t>(i) * mc + j] = static_cast<double>(m.at(i, j));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.1, 1.1);
    std::vector<double> w(static_cast<std::size_t>(mr) * r), h(static_cast<std::size_t>(r) * mc);
    for (auto& x : w) x = unif(rng);
    for (auto& x : h) x = unif(rng);

    const double eps = 1e-12;
    auto recon = [&](int i, int j) {
        double s = 0;
        for (int k = 0; k < r; ++k)
            s += w[static_cast<std::size_t>(i) * r + k] * h[static_cast<std::size_t>(k) * mc + j];
        return s;
    };

    // Rationalize one side (snapping near-zero entries) and recover the
    // other exactly; only an exactly verified factorization is accepted.
    auto try_exact = [&]() -> std::optional<NonnegFactorization> {
        auto snap = [](double x) {
            if (std::abs(x) < 1e-7) return Rational(0);
            Rational q = rationalize(x, 1'000'000);
            return q < 0 ? Rational(0) : q;
        };
        RationalMatrix left(mr, r);
        for (int i = 0; i < mr; ++i)
            for (int k = 0; k < r; ++k) left.at(i, k) = snap(w[static_cast<std::size_t>(i) * r + k]);
        if (auto right = exact_complete_right(left, m)) {
            NonnegFactorization f{left, *right};
            if (verify_nonneg_factorization(m, f)) return f;
        }
        RationalMatrix right_t(mc, r);
        for (int j = 0; j < mc; ++j)
            for (int k = 0; k < r; ++k)
                right_t.at(j, k) = snap(h[static_cast<std::size_t>(k) * mc + j]);
        if (auto left_t = exact_complete_right(right_t, m.transposed())) {
            NonnegFactorization f{left_t->transposed(), right_t.transposed()};
            if (verify_nonneg_factorization(m, f)) return f;
        }
        return std::nullopt;
    };

    double err = 1e300;
    for (int it = 0; it < max_iters && err > tolerance; ++it) {
        // Lee-Seung multiplicative updates.
        for (int k = 0; k < r; ++k)
            for (int j = 0; j < mc; ++j) {
                double num = 0, den = 0;
                for (int i = 0; i < mr; ++i) {
                    num += w[static_cast<std::size_t>(i) * r + k] *
                           v[static_cast<std::size_t>(i) * mc + j];
                    den += w[static_cast<std::size_t>(i) * r + k] * recon(i, j);
                }
                h[static_cast<std::size_t>(k) * mc + j] *= num / (den + eps);
            }
        for (int i = 0; i < mr; ++i)
            for (int k = 0; k < r; ++k) {
                double num = 0, den = 0;
                for (int j = 0; j < mc; ++j) {
                    num += h[static_cast<std::size_t>(k) * mc + j] *
                           v[static_cast<std::size_t>(i) * mc + j];
                    den += h[static_cast<std::size_t>(k) * mc + j] * recon(i, j);
                }
                w[static_cast<std::size_t>(i) * r + k] *= num / (den + eps);
            }
        err = 0;
        for (int i = 0; i < mr; ++i)
            for (int j = 0; j < mc; ++j)
                err = std::max(err,
                               std::abs(v[static_cast<std::size_t>(i) * mc + j] - recon(i, j)));
        // Boundary factorizations converge slowly under multiplicative
        // updates; once the iterate is close, an exact polish often already
        // succeeds, so check periodically.
        if (err < 1e-2 && it % 200 == 199)
            if (auto f = try_exact()) return f;
    }
    if (err > tolerance) return std::nullopt;
    return try_exact();
}

NnegRankBounds nnegrank_bounds(const RationalMatrix& m, const SearchBudget& budget,
                               std::uint64_t seed) {
    for (const auto& x : m.a)
        if (x < 0) throw input_error("nnegrank_bounds: negative entry");
    NnegRankBounds out;
    int rank = rat_rank(m);
    out.cover = min_rectangle_cover(support(m), budget);
    int cover_lb = out.cover.optimal ? out.cover.size : out.cover.lower_bound;
    out.lower = std::max(rank, cover_lb);
    out.lower_witness = rank >= cover_lb ? NnegRankBounds::LowerWitness::Rank
                                         : NnegRankBounds::LowerWitness::Cover;

    // Trivial exact factorization: split off the smaller side.
    if (m.rows <= m.cols)
        out.upper_witness = {RationalMatrix::identity(m.rows), m};
    else
        out.upper_witness = {m, RationalMatrix::identity(m.cols)};
    out.upper = out.upper_witness.rank();

    // Heuristic tightening only at sizes where the float iteration is cheap.
    if (out.lower < out.upper && m.rows * m.cols <= 1024) {
        if (auto f = nmf_heuristic(m, out.lower, 1e-7, seed)) {
            out.upper_witness = *f;
            out.upper = f->rank();
        }
    }
    if (out.lower > out.upper)
        throw std::logic_error("nnegrank_bounds: bound inversion (internal error)");
    return out;
}

void to_json(nlohmann::json& j, const Rectangle& r) {
    j = nlohmann::json{{"rows", r.row_set}, {"cols", r.col_set}};
}

void from_json(const nlohmann::json& j, Rectangle& r) {
    j.at("rows").get_to(r.row_set);
    j.at("cols").get_to(r.col_set);
}

void to_json(nlohmann::json& j, const RectangleCover& c) {
    j = nlohmann::json{{"rectangles", c.rectangles},
                       {"size", c.size},
                       {"optimal", c.optimal},
                       {"lower_bound", c.lower_bound}};
}

void from_json(const nlohmann::json& j, RectangleCover& c) {
    j.at("rectangles").get_to(c.rectangles);
    j.at("size").get_to(c.size);
    j.at("optimal").get_to(c.optimal);
    j.at("lower_bound").get_to(c.lower_bound);
}

}  // namespace xc
