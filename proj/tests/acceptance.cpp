// Acceptance suite: exercises every headline guarantee of the toolkit at
// desk scale and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "xc/bounds.hpp"
#include "xc/cli.hpp"
#include "xc/factorization.hpp"
#include "xc/gadgets.hpp"
#include "xc/lp.hpp"
#include "xc/polytope.hpp"
#include "xc/quantum.hpp"

using namespace xc;

namespace {

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    try {
        body();
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("PASS criterion %d: %s (%.1fs)\n", id, title.c_str(), secs);
    } catch (const std::exception& e) {
        ++failures;
        std::printf("FAIL criterion %d: %s: %s\n", id, title.c_str(), e.what());
    }
    std::fflush(stdout);
}

void expect(bool cond, const std::string& what) {
    if (!cond) throw std::runtime_error(what);
}

Graph complete_graph(int n) {
    Graph g;
    for (int i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i + 1));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Graph cycle_graph(int n) {
    Graph g;
    for (int i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i + 1));
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

// ---------------------------------------------------------------------------
// Independent set-cover oracle: its own candidate enumeration (row-subset
// closures) and its own depth-capped exhaustive search. Shares no code with
// the production cover solver.
// ---------------------------------------------------------------------------

struct CoverOracle {
    int rows = 0, cols = 0;
    const BooleanMatrix* b = nullptr;
    std::vector<std::uint32_t> rowbits;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> rects;  // (row mask, col mask)
    std::vector<std::pair<int, int>> cells;
    std::vector<std::vector<int>> covering;

    void build(const BooleanMatrix& bm) {
        b = &bm;
        rows = bm.rows;
        cols = bm.cols;
        if (rows > 31 || cols > 31) throw std::runtime_error("oracle: matrix too large");
        rowbits.assign(rows, 0);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (bm.at(i, j)) rowbits[i] |= std::uint32_t(1) << j;
        for (std::uint32_t rs = 1; rs < (std::uint32_t(1) << rows); ++rs) {
            std::uint32_t cs = (std::uint32_t(1) << cols) - 1;
            for (int i = 0; i < rows; ++i)
                if (rs >> i & 1) cs &= rowbits[i];
            if (!cs) continue;
            std::uint32_t full = 0;  // close the row side
            for (int i = 0; i < rows; ++i)
                if ((cs & ~rowbits[i]) == 0) full |= std::uint32_t(1) << i;
            auto key = std::make_pair(full, cs);
            if (std::find(rects.begin(), rects.end(), key) == rects.end()) rects.push_back(key);
        }
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (bm.at(i, j)) cells.emplace_back(i, j);
        covering.assign(cells.size(), {});
        for (std::size_t c = 0; c < cells.size(); ++c)
            for (std::size_t r = 0; r < rects.size(); ++r)
                if ((rects[r].first >> cells[c].first & 1) &&
                    (rects[r].second >> cells[c].second & 1))
                    covering[c].push_back(static_cast<int>(r));
    }

    bool cover_exists(int cap) const {
        std::vector<char> covered(cells.size(), 0);
        std::function<bool(int)> rec = [&](int left) -> bool {
            std::vector<int> fooling;
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (covered[c]) continue;
                bool independent = true;
                for (int d : fooling) {
                    auto [i, j] = cells[c];
                    auto [k, l] = cells[d];
                    if (b->at(i, l) && b->at(k, j)) {
                        independent = false;
                        break;
                    }
                }
                if (independent) fooling.push_back(static_cast<int>(c));
            }
            if (static_cast<int>(fooling.size()) > left) return false;
            int cell = -1;
            std::size_t fewest = SIZE_MAX;
            for (std::size_t c = 0; c < cells.size(); ++c)
                if (!covered[c] && covering[c].size() < fewest) {
                    fewest = covering[c].size();
                    cell = static_cast<int>(c);
                }
            if (cell < 0) return true;
            if (left == 0) return false;
            for (int r : covering[cell]) {
                std::vector<char> saved = covered;
                for (std::size_t c = 0; c < cells.size(); ++c)
                    if ((rects[r].first >> cells[c].first & 1) &&
                        (rects[r].second >> cells[c].second & 1))
                        covered[c] = 1;
                if (rec(left - 1)) return true;
                covered = saved;
            }
            return false;
        };
        return rec(cap);
    }

    int minimum(int cap) const {
        for (int k = 0; k <= cap; ++k)
            if (cover_exists(k)) return k;
        return -1;
    }
};

NonnegFactorization trivial_factorization(const Polytope& p) {
    SlackMatrix s = slack_matrix(p.hrep(), p.vrep());
    return {RationalMatrix::identity(s.matrix.rows), s.matrix};
}

}  // namespace

// Criterion 1: the rank-one PSD factors pair to the slack matrix exactly for
// n = 1..10, certifying the (n+1)-dimensional PSD rank upper bound; n = 10
// completes within 60 seconds.
static void criterion1() {
    for (int n = 1; n <= 9; ++n) {
        PsdFactorization f = cor_slack_psd_factorization(n);
        expect(f.r == n + 1, "factorization rank is not n+1");
        VerifyResult v = verify_psd_factorization(cor_slack_matrix(n), f);
        expect(v.ok, "verification failed at n=" + std::to_string(n) + ": " + v.reason);
    }
    auto t0 = std::chrono::steady_clock::now();
    RationalMatrix m10 = cor_slack_matrix(10);
    PsdFactorization f10 = cor_slack_psd_factorization(10);
    expect(f10.r == 11, "factorization rank is not 11 at n=10");
    VerifyResult v10 = verify_psd_factorization(m10, f10);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    expect(v10.ok, "verification failed at n=10");
    expect(secs < 60.0, "n=10 verification took " + std::to_string(secs) + "s");
}

// Criterion 2: minimum rectangle covers of the support matrices are provably
// optimal for n = 1..4 and agree with an independent exhaustive oracle; the
// cover / rank / upper-bound chain holds on every instance.
static void criterion2() {
    const int expected_cover[5] = {0, 2, 3, 7, 13};
    SearchBudget budget{200'000, 120'000};
    for (int n = 1; n <= 4; ++n) {
        RationalMatrix m = cor_slack_matrix(n);
        BooleanMatrix supp = support(m);
        RectangleCover cover = min_rectangle_cover(supp, budget);
        expect(cover.optimal, "cover search not optimal at n=" + std::to_string(n));
        expect(cover_is_valid(supp, cover), "cover invalid at n=" + std::to_string(n));
        expect(cover.size == expected_cover[n],
               "cover(" + std::to_string(n) + ") = " + std::to_string(cover.size) +
                   ", expected " + std::to_string(expected_cover[n]));

        CoverOracle oracle;
        oracle.build(supp);
        if (n <= 3) {
            // Exhaustive: tries every size from zero upward, so in particular
            // all covers of size up to 6 are ruled out before 7 is found.
            int oracle_min = oracle.minimum(cover.size);
            expect(oracle_min == cover.size, "oracle disagrees at n=" + std::to_string(n));
        } else {
            // n = 4: the oracle refutes any 12-cover; the explicit 13-cover
            // above is verified cell by cell, pinning the optimum at 13.
            expect(!oracle.cover_exists(12), "oracle found a 12-cover at n=4");
        }

        NnegRankBounds nb = nnegrank_bounds(m, budget);
        expect(cover.size <= nb.lower, "cover exceeds the lower bound");
        expect(nb.lower == std::max(rat_rank(m), cover.size), "lower bound is not the max");
        expect(nb.lower <= nb.upper, "lower bound exceeds upper bound");
        expect(static_cast<bool>(verify_nonneg_factorization(m, nb.upper_witness)),
               "upper-bound witness does not verify");
    }
}

// Criterion 3: the slack matrix of the correlation polytope against its
// quadratic valid inequalities equals the direct formula matrix, exactly,
// for n <= 4.
static void criterion3() {
    for (int n = 1; n <= 4; ++n) {
        Polytope p = correlation_polytope(n);
        std::vector<Inequality> rows;
        for (std::int64_t a = 0; a < (std::int64_t(1) << n); ++a)
            rows.push_back(cor_inequality(BitString::from_index(n, a)));
        SlackMatrix s = slack_matrix(rows, p.vrep());
        expect(s.matrix == cor_slack_matrix(n), "slack identity fails at n=" + std::to_string(n));
    }
}

// Criterion 4: the covariance map carries the cut vertex set bijectively onto
// the correlation vertex set (and back) for n <= 4.
static void criterion4() {
    for (int n = 1; n <= 4; ++n) {
        auto [fwd, inv] = covariance_iso(n);  // throws if the bijection check fails
        auto cut_verts = cut_polytope(n + 1).vrep();
        auto cor_verts = correlation_polytope(n).vrep();
        std::set<RatVec> images;
        for (const auto& v : cut_verts) {
            RatVec y = fwd.apply(v);
            expect(inv.apply(y) == v, "inverse does not undo the map");
            images.insert(std::move(y));
        }
        expect(images == std::set<RatVec>(cor_verts.begin(), cor_verts.end()),
               "image is not the correlation vertex set at n=" + std::to_string(n));
    }
}

// Criterion 5: extension <-> factorization roundtrip on the four test
// polytopes with the trivial factorization, plus the redundant-row /
// interior-column extension that must keep the inner dimension fixed.
static void criterion5() {
    std::vector<std::pair<std::string, Polytope>> cases;
    cases.emplace_back("cut3", cut_polytope(3));
    cases.emplace_back("cor2", correlation_polytope(2));
    cases.emplace_back("stab-k3", stable_set_polytope(complete_graph(3)));
    cases.emplace_back("stab-c5", stable_set_polytope(cycle_graph(5)));
    for (auto& [name, poly] : cases) {
        Polytope p = with_hrep(poly);
        SlackMatrix s = slack_matrix(p.hrep(), p.vrep());
        NonnegFactorization f = trivial_factorization(p);
        ExtensionSystem ext = extension_from_nonneg_factorization(p, f);
        expect(ext.lifted_points.size() == p.vrep().size(), name + ": missing lifts");
        for (const auto& [id, y] : ext.lifted_points) {
            RatVec lhs = mat_vec(ext.E, p.vrep()[id]);
            RatVec fy = mat_vec(ext.F, y);
            for (std::size_t t = 0; t < lhs.size(); ++t) lhs[t] += fy[t];
            expect(lhs == ext.g, name + ": lift violates the equality system");
            expect(cone_contains(ext.cone, y), name + ": lift outside the cone");
        }
        NonnegFactorization back = factorization_from_extension(ext, p);
        expect(back.rank() <= f.rank(), name + ": rank grew in the roundtrip");
        expect(static_cast<bool>(verify_nonneg_factorization(s.matrix, back)),
               name + ": roundtrip factorization does not verify");
    }

    // Redundant rows and interior points on the cut polytope.
    Polytope p = with_hrep(cut_polytope(3));
    NonnegFactorization f = trivial_factorization(p);
    std::vector<Inequality> extra_rows;
    {
        RatVec perim(3, Rational(1));
        extra_rows.push_back({perim, Rational(3)});
        extra_rows.push_back(p.hrep()[0]);
        Inequality sum{RatVec(3, Rational(0)), p.hrep()[1].rhs + p.hrep()[2].rhs};
        for (int j = 0; j < 3; ++j)
            sum.coeffs[j] = p.hrep()[1].coeffs[j] + p.hrep()[2].coeffs[j];
        extra_rows.push_back(sum);
    }
    RatVec centroid(3, Rational(0)), midpoint(3, Rational(0));
    for (const auto& v : p.vrep())
        for (int j = 0; j < 3; ++j) centroid[j] += v[j] / 4;
    for (int j = 0; j < 3; ++j) midpoint[j] = (p.vrep()[0][j] + p.vrep()[2][j]) / 2;
    NonnegFactorization full = extend_to_redundant_rows(f, p, extra_rows, {centroid, midpoint});
    expect(full.rank() == f.rank(), "redundant-row extension changed the inner dimension");
}

// Criterion 6: the stable-set gadget has exactly 2^n maximum stable sets and
// they project bijectively onto the correlation vertex set, for n <= 3.
static void criterion6() {
    for (int n = 1; n <= 3; ++n) {
        Graph h = build_stable_set_gadget(n);
        auto sets = gadget_max_stable_sets(h, n);
        expect(sets.size() == (std::size_t(1) << n),
               "wrong count of maximum stable sets at n=" + std::to_string(n));
        std::set<RatVec> images;
        for (const auto& s : sets) images.insert(project_stable_set_to_cor(h, s, n));
        auto verts = correlation_polytope(n).vrep();
        expect(images == std::set<RatVec>(verts.begin(), verts.end()),
               "projection is not onto the vertex set at n=" + std::to_string(n));
    }
}

// Criterion 7: the tour gadget. Models of the formula are exactly the
// rank-one matrices (n <= 3, exhaustive); every assignment yields a verified
// Hamiltonian cycle projecting back to it (n <= 2); exhaustive enumeration of
// the degenerate instance confirms every tour satisfies the formula.
static void criterion7() {
    for (int n = 1; n <= 3; ++n) {
        CnfFormula phi = build_rank1_cnf(n);
        int models = 0;
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << phi.num_vars); ++mask) {
            std::vector<std::uint8_t> assign(phi.num_vars);
            for (int v = 0; v < phi.num_vars; ++v) assign[v] = mask >> v & 1;
            if (!cnf_satisfied(phi, assign)) continue;
            ++models;
            bool rank_one = true;
            for (int i = 0; i < n && rank_one; ++i)
                for (int j = 0; j < n && rank_one; ++j)
                    rank_one = assign[i * n + j] == (assign[i * n + i] & assign[j * n + j]);
            expect(rank_one, "model is not rank one at n=" + std::to_string(n));
        }
        expect(models == 1 << n, "model count wrong at n=" + std::to_string(n));
    }
    for (int n = 1; n <= 2; ++n) {
        TourGadget g = build_tour_gadget(n);
        for (std::uint64_t k = 0; k < (std::uint64_t(1) << n); ++k) {
            BitString b = BitString::from_index(n, k);
            Tour t = tour_from_assignment(g, b);  // Hamiltonicity verified inside
            RatVec y = project_tour_to_cor(g, t);
            RatVec want(n * (n + 1) / 2, Rational(0));
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j)
                    want[cor_coord_index(n, i, j)] = b.bits[i] & b.bits[j];
            expect(y == want, "tour projection differs from the rank-one point");
        }
    }
    TourGadget g1 = build_tour_gadget(1);
    TourEnumeration e = enumerate_tours(g1.d);
    expect(e.complete, "degenerate-instance enumeration did not complete");
    expect(!e.tours.empty(), "no tours found on the degenerate instance");
    for (const auto& t : e.tours)
        expect(cnf_satisfied(g1.phi, assignment_from_tour(g1, t)),
               "a tour induces an unsatisfying assignment");
}

// Criterion 8: quantum protocols. The explicit-factorization protocol matches
// all 64 entries at n=3 within 1e-9; the square-root protocol uses at most
// five message dimensions and matches within 1e-8; Monte Carlo means over
// 1e5 samples stay within five standard errors; the 0/1 slack matrix of the
// triangle yields a PSD factorization of rank <= dim + 2, exactly verified.
static void criterion8() {
    RationalMatrix m3 = cor_slack_matrix(3);
    OneWayProtocol p_fact = protocol_from_psd_factorization(cor_slack_psd_factorization(3));
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            expect(std::abs(expected_output(p_fact, i, j) - static_cast<double>(m3.at(i, j))) <
                       1e-9,
                   "factorization protocol off at (" + std::to_string(i) + "," +
                       std::to_string(j) + ")");

    Eigen::MatrixXd n3(8, 8);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b)
            n3(a, b) = 1.0 - BitString::from_index(3, a).dot(BitString::from_index(3, b));
    OneWayProtocol p_sqrt = protocol_from_entrywise_sqrt(n3);
    expect(p_sqrt.message_dim <= 5, "square-root protocol needs too many dimensions");
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            expect(std::abs(expected_output(p_sqrt, i, j) - static_cast<double>(m3.at(i, j))) <
                       1e-8,
                   "square-root protocol off at (" + std::to_string(i) + "," +
                       std::to_string(j) + ")");

    auto stats = sampling_report(p_sqrt, 100'000, 2024);
    for (const auto& s : stats)
        expect(std::abs(s.mean - s.expected) <= 5 * s.stderr_bound,
               "Monte Carlo mean out of range at (" + std::to_string(s.i) + "," +
                   std::to_string(s.j) + ")");

    Polytope stab = with_hrep(stable_set_polytope(complete_graph(3)));
    SlackMatrix s = slack_matrix(stab.hrep(), stab.vrep());
    PsdFactorization f = psd_rank_upper_from_sqrt(s.matrix, s.matrix);
    expect(f.r <= stab.dim + 2, "PSD rank bound above dim + 2");
    expect(static_cast<bool>(verify_psd_factorization(s.matrix, f)),
           "slack PSD factorization does not verify");
}

// Criterion 9: the separation report for n = 1..4 is internally consistent in
// every row, byte-identical across reruns, and shows the (n+1)-dimensional
// PSD bound strictly below the nonnegative-rank lower bound from n = 3 on.
static void criterion9() {
    ExperimentConfig cfg;
    cfg.n_min = 1;
    cfg.n_max = 4;
    cfg.budget_ms = 120'000;
    cfg.seed = 11;
    std::ostringstream run1, run2;
    int c1 = cmd_separation(cfg, run1);
    int c2 = cmd_separation(cfg, run2);
    expect(c1 == 0 && c2 == 0, "separation reported a budget-limited result");
    expect(run1.str() == run2.str(), "report is not byte-identical across reruns");

    std::istringstream is(run1.str());
    std::string line;
    std::getline(is, line);  // header
    int rows = 0;
    while (std::getline(is, line)) {
        int n, rank, cover, cover_opt, lo, hi, psd, psd_ok;
        expect(std::sscanf(line.c_str(), "%d,%d,%d,%d,%d,%d,%d,%d", &n, &rank, &cover,
                           &cover_opt, &lo, &hi, &psd, &psd_ok) == 8,
               "malformed report row");
        ++rows;
        expect(cover_opt == 1, "cover not optimal in the report");
        expect(psd_ok == 1, "PSD bound not verified in the report");
        expect(cover <= lo && lo <= hi, "bound chain broken in the report");
        expect(lo == std::max(rank, cover), "lower bound is not the max of rank and cover");
        expect(psd == n + 1, "PSD upper bound is not n+1");
        // Regenerate the row from the modules directly.
        RationalMatrix m = cor_slack_matrix(n);
        expect(rank == rat_rank(m), "rank column not regenerable");
        RectangleCover rc = min_rectangle_cover(support(m), {200'000, 120'000});
        expect(rc.optimal && rc.size == cover, "cover column not regenerable");
        if (n >= 3) expect(psd < lo, "no strict separation at n=" + std::to_string(n));
    }
    expect(rows == 4, "report row count wrong");
}

int main() {
    criterion(1, "rank-(n+1) PSD factorization verifies exactly up to n=10", criterion1);
    criterion(2, "minimum rectangle covers are optimal for n<=4 and match the oracle",
              criterion2);
    criterion(3, "slack of the quadratic inequalities equals the formula matrix (n<=4)",
              criterion3);
    criterion(4, "covariance map is a vertex bijection (n<=4)", criterion4);
    criterion(5, "extension roundtrip and redundant-row extension", criterion5);
    criterion(6, "stable-set gadget projects onto the correlation vertices (n<=3)", criterion6);
    criterion(7, "tour gadget: models, tours, projections, enumeration", criterion7);
    criterion(8, "quantum protocols compute the matrix in expectation", criterion8);
    criterion(9, "separation report is consistent and deterministic", criterion9);
    if (failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
