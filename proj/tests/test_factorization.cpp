#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "xc/factorization.hpp"
#include "xc/gadgets.hpp"
#include "xc/lp.hpp"

using namespace xc;

namespace {

RatVec vec(const std::vector<int>& v) {
    RatVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i];
    return r;
}

RationalMatrix mat(const std::vector<std::vector<int>>& rows) {
    RationalMatrix m(static_cast<int>(rows.size()),
                     rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
    return m;
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

NonnegFactorization trivial_factorization(const Polytope& p) {
    SlackMatrix s = slack_matrix(p.hrep(), p.vrep());
    return {RationalMatrix::identity(s.matrix.rows), s.matrix};
}

}  // namespace

TEST_CASE("verify nonneg factorization") {
    RationalMatrix m = cor_slack_matrix(1);
    NonnegFactorization ok{RationalMatrix::identity(2), m};
    CHECK(static_cast<bool>(verify_nonneg_factorization(m, ok)));

    NonnegFactorization bad = ok;
    bad.left.at(0, 1) = -1;
    VerifyResult v = verify_nonneg_factorization(m, bad);
    CHECK(!v.ok);
    CHECK(v.reason == "negative entry in left factor");

    NonnegFactorization wrong = ok;
    wrong.right.at(0, 0) = 5;
    VerifyResult w = verify_nonneg_factorization(m, wrong);
    CHECK(!w.ok);
    CHECK(w.bad_i == 0);
    CHECK(w.bad_j == 0);
}

TEST_CASE("is_psd exact") {
    CHECK(is_psd(RationalMatrix::identity(3)));
    CHECK(is_psd(RationalMatrix(2, 2)));  // zero matrix
    CHECK(is_psd(mat({{1, -1}, {-1, 1}})));
    CHECK(!is_psd(mat({{1, 2}, {2, 1}})));
    CHECK(!is_psd(mat({{0, 1}, {1, 0}})));
    CHECK(!is_psd(mat({{-1}})));
    CHECK(!is_psd(mat({{1, 2}, {3, 4}})));  // not symmetric
    // Semidefinite with a zero pivot mid-way.
    CHECK(is_psd(mat({{1, 1, 0}, {1, 1, 0}, {0, 0, 2}})));
}

TEST_CASE("flatten pairing equals the Frobenius product") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> entry(-3, 3);
    for (int t = 0; t < 20; ++t) {
        RationalMatrix a(4, 4), b(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) {
                a.at(i, j) = entry(rng);
                a.at(j, i) = a.at(i, j);
                b.at(i, j) = entry(rng);
                b.at(j, i) = b.at(i, j);
            }
        Rational direct = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) direct += a.at(i, j) * b.at(i, j);
        CHECK(dot(sym_flatten_weighted(a), sym_flatten_plain(b)) == direct);
        CHECK(sym_unflatten(sym_flatten_plain(a), 4) == a);
    }
}

TEST_CASE("explicit rank-one psd factors") {
    PsdFactorization f = cor_slack_psd_factorization(1);
    CHECK(f.r == 2);
    CHECK(f.row_factors[1] == mat({{1, -1}, {-1, 1}}));
    CHECK(f.col_factors[1] == mat({{1, 1}, {1, 1}}));
    // Trace product for a = b = 1 vanishes, matching the zero slack.
    CHECK(dot(sym_flatten_weighted(f.row_factors[1]), sym_flatten_plain(f.col_factors[1])) == 0);
    // a = 0 row pairs to 1 against every column.
    for (int b = 0; b < 2; ++b)
        CHECK(dot(sym_flatten_weighted(f.row_factors[0]), sym_flatten_plain(f.col_factors[b])) ==
              1);
    CHECK(static_cast<bool>(verify_psd_factorization(cor_slack_matrix(1), f)));

    PsdFactorization f2 = cor_slack_psd_factorization(2);
    // a = (1,0) against b = (1,1): (1 - a.b)^2 = 0.
    CHECK(dot(sym_flatten_weighted(f2.row_factors[2]), sym_flatten_plain(f2.col_factors[3])) == 0);
    CHECK(static_cast<bool>(verify_psd_factorization(cor_slack_matrix(2), f2)));
}

TEST_CASE("verify psd factorization catches perturbations") {
    RationalMatrix m = cor_slack_matrix(1);
    PsdFactorization f = cor_slack_psd_factorization(1);
    f.col_factors[0].at(0, 0) += 1;
    VerifyResult v = verify_psd_factorization(m, f);
    CHECK(!v.ok);

    RationalMatrix zero(2, 2);
    PsdFactorization zf;
    zf.r = 1;
    zf.row_factors.assign(2, RationalMatrix(1, 1));
    zf.col_factors.assign(2, RationalMatrix(1, 1));
    CHECK(static_cast<bool>(verify_psd_factorization(zero, zf)));
}

TEST_CASE("extension from factorization on a segment") {
    Polytope seg;
    seg.dim = 1;
    seg.vertices = {{vec({0}), vec({1})}};
    seg = with_hrep(seg);
    NonnegFactorization f = trivial_factorization(seg);
    ExtensionSystem ext = extension_from_nonneg_factorization(seg, f);
    CHECK(ext.cone.kind == ConeId::Kind::NonnegOrthant);
    CHECK(ext.cone.param == 2);
    CHECK(ext.E.rows == 2);
    CHECK(ext.F == RationalMatrix::identity(2));
    REQUIRE(ext.lifted_points.size() == 2);
    for (const auto& [id, y] : ext.lifted_points) {
        RatVec lhs = mat_vec(ext.E, seg.vrep()[id]);
        RatVec fy = mat_vec(ext.F, y);
        for (std::size_t t = 0; t < lhs.size(); ++t) lhs[t] += fy[t];
        CHECK(lhs == ext.g);
        CHECK(cone_contains(ext.cone, y));
    }
}

TEST_CASE("zero columns of the left factor are dropped") {
    Polytope seg;
    seg.dim = 1;
    seg.vertices = {{vec({0}), vec({1})}};
    seg = with_hrep(seg);
    SlackMatrix s = slack_matrix(seg.hrep(), seg.vrep());
    // Pad the trivial factorization with an all-zero third column/row.
    NonnegFactorization padded{RationalMatrix(2, 3), RationalMatrix(3, 2)};
    for (int i = 0; i < 2; ++i) {
        padded.left.at(i, i) = 1;
        for (int j = 0; j < 2; ++j) padded.right.at(i, j) = s.matrix.at(i, j);
    }
    ExtensionSystem ext = extension_from_nonneg_factorization(seg, padded);
    CHECK(ext.cone.param == 2);  // rank dropped back to 2
}

TEST_CASE("factorization roundtrip on generated polytopes") {
    for (Polytope p : {cut_polytope(3), correlation_polytope(2),
                       stable_set_polytope(complete_graph(3))}) {
        p = with_hrep(p);
        NonnegFactorization f = trivial_factorization(p);
        ExtensionSystem ext = extension_from_nonneg_factorization(p, f);
        NonnegFactorization back = factorization_from_extension(ext, p);
        CHECK(back.rank() <= f.rank());
        SlackMatrix s = slack_matrix(p.hrep(), p.vrep());
        CHECK(static_cast<bool>(verify_nonneg_factorization(s.matrix, back)));
    }
}

TEST_CASE("quadratic-row correlation polytope lifts through its rank-4 factorization") {
    Polytope p = correlation_polytope(2);
    std::vector<Inequality> rows;
    for (int a = 0; a < 4; ++a) rows.push_back(cor_inequality(BitString::from_index(2, a)));
    p.inequalities = rows;
    SlackMatrix s = slack_matrix(p.hrep(), p.vrep());
    NonnegFactorization f{RationalMatrix::identity(4), s.matrix};
    ExtensionSystem ext = extension_from_nonneg_factorization(p, f);
    for (const auto& [id, y] : ext.lifted_points) {
        RatVec lhs = mat_vec(ext.E, p.vrep()[id]);
        RatVec fy = mat_vec(ext.F, y);
        for (std::size_t t = 0; t < lhs.size(); ++t) lhs[t] += fy[t];
        CHECK(lhs == ext.g);
    }
    NonnegFactorization back = factorization_from_extension(ext, p);
    CHECK(static_cast<bool>(verify_nonneg_factorization(s.matrix, back)));
}

TEST_CASE("a redundant slack coordinate does not break recovery") {
    Polytope p = with_hrep(cut_polytope(3));
    SlackMatrix s = slack_matrix(p.hrep(), p.vrep());
    ExtensionSystem ext = extension_from_nonneg_factorization(p, trivial_factorization(p));
    // Duplicate the first slack coordinate: an extra y-row that any lift can
    // leave at zero.
    RationalMatrix f2(ext.F.rows, ext.F.cols + 1);
    for (int i = 0; i < ext.F.rows; ++i) {
        for (int j = 0; j < ext.F.cols; ++j) f2.at(i, j) = ext.F.at(i, j);
        f2.at(i, ext.F.cols) = ext.F.at(i, 0);
    }
    ext.F = std::move(f2);
    ext.cone.param += 1;
    ext.lifted_points.clear();
    NonnegFactorization back = factorization_from_extension(ext, p);
    CHECK(static_cast<bool>(verify_nonneg_factorization(s.matrix, back)));
    CHECK(rat_rank(back.left) <= 4);  // the duplicate adds no new direction
}

TEST_CASE("factorization recovered without stored lifts") {
    Polytope p = with_hrep(cut_polytope(3));
    ExtensionSystem ext = extension_from_nonneg_factorization(p, trivial_factorization(p));
    ext.lifted_points.clear();  // forces the exact-LP lift search
    NonnegFactorization back = factorization_from_extension(ext, p);
    SlackMatrix s = slack_matrix(p.hrep(), p.vrep());
    CHECK(static_cast<bool>(verify_nonneg_factorization(s.matrix, back)));
}

TEST_CASE("non-extension is rejected") {
    Polytope p = with_hrep(cut_polytope(3));
    ExtensionSystem ext = extension_from_nonneg_factorization(p, trivial_factorization(p));
    // Flip g so no vertex can lift.
    for (auto& x : ext.g) x -= 10;
    ext.lifted_points.clear();
    CHECK_THROWS_AS(factorization_from_extension(ext, p), not_an_extension_error);
}

TEST_CASE("redundant rows and interior columns extend without rank growth") {
    Polytope p = with_hrep(cut_polytope(3));
    NonnegFactorization f = trivial_factorization(p);

    std::vector<Inequality> extra_rows;
    extra_rows.push_back({vec({1, 1, 1}), Rational(3)});  // slack version of the perimeter bound
    extra_rows.push_back(p.hrep()[0]);                    // duplicate facet
    {
        // Sum of two facet rows.
        Inequality sum{RatVec(3, Rational(0)), p.hrep()[0].rhs + p.hrep()[1].rhs};
        for (int j = 0; j < 3; ++j) sum.coeffs[j] = p.hrep()[0].coeffs[j] + p.hrep()[1].coeffs[j];
        extra_rows.push_back(sum);
    }

    RatVec centroid(3, Rational(0));
    for (const auto& v : p.vrep())
        for (int j = 0; j < 3; ++j) centroid[j] += v[j] / 4;
    RatVec midpoint(3, Rational(0));
    for (int j = 0; j < 3; ++j) midpoint[j] = (p.vrep()[0][j] + p.vrep()[1][j]) / 2;

    NonnegFactorization full =
        extend_to_redundant_rows(f, p, extra_rows, {centroid, midpoint});
    CHECK(full.rank() == f.rank());
    CHECK(full.left.rows == 4 + 3);
    CHECK(full.right.cols == 4 + 2);

    // Duplicate facet keeps its unit multiplier row.
    for (int k = 0; k < 4; ++k) CHECK(full.left.at(5, k) == f.left.at(0, k));
    // Centroid column is the average of the vertex columns.
    for (int k = 0; k < 4; ++k) {
        Rational avg = 0;
        for (int j = 0; j < 4; ++j) avg += f.right.at(k, j) / 4;
        CHECK(full.right.at(k, 4) == avg);
    }

    CHECK_THROWS_AS(
        extend_to_redundant_rows(f, p, {Inequality{vec({1, 1, 1}), Rational(1)}}, {}),
        input_error);
    CHECK_THROWS_AS(extend_to_redundant_rows(f, p, {}, {vec({5, 5, 5})}), input_error);
}

TEST_CASE("psd extension on the unit interval") {
    Polytope cor1 = with_hrep(correlation_polytope(1));
    PsdFactorization f = cor_slack_psd_factorization(1);
    // Restrict to the interval's two facet rows via the quadratic inequalities:
    // the generated H-rep of COR(1) is exactly {y >= 0, y <= 1} up to order, so
    // build the factorization against those rows directly.
    SlackMatrix s = slack_matrix(cor1.hrep(), cor1.vrep());
    PsdFactorization tiny;
    tiny.r = 1;
    for (int i = 0; i < s.matrix.rows; ++i) {
        RationalMatrix t(1, 1);
        t.at(0, 0) = 1;
        tiny.row_factors.push_back(t);
    }
    for (int j = 0; j < s.matrix.cols; ++j) {
        RationalMatrix u(1, 1);
        u.at(0, 0) = s.matrix.at(0, j);
        tiny.col_factors.push_back(u);
    }
    if (static_cast<bool>(verify_psd_factorization(s.matrix, tiny))) {
        ExtensionSystem ext = psd_extension_from_factorization(cor1, tiny);
        CHECK(ext.cone.kind == ConeId::Kind::PsdCone);
        CHECK(ext.cone.param == 1);
    }

    // The quadratic-row polytope with the rank-two explicit factorization.
    Polytope p = correlation_polytope(1);
    std::vector<Inequality> rows;
    for (int a = 0; a < 2; ++a) rows.push_back(cor_inequality(BitString::from_index(1, a)));
    p.inequalities = rows;
    ExtensionSystem ext = psd_extension_from_factorization(p, f);
    CHECK(ext.cone.param == 2);
    for (const auto& [id, y] : ext.lifted_points) {
        RatVec lhs = mat_vec(ext.E, p.vrep()[id]);
        RatVec fy = mat_vec(ext.F, y);
        for (std::size_t t = 0; t < lhs.size(); ++t) lhs[t] += fy[t];
        CHECK(lhs == ext.g);
        CHECK(cone_contains(ext.cone, y));
    }
}

TEST_CASE("psd extension of the quadratic-row correlation polytope") {
    Polytope p = correlation_polytope(2);
    std::vector<Inequality> rows;
    for (int a = 0; a < 4; ++a) rows.push_back(cor_inequality(BitString::from_index(2, a)));
    p.inequalities = rows;
    ExtensionSystem ext = psd_extension_from_factorization(p, cor_slack_psd_factorization(2));
    REQUIRE(ext.lifted_points.size() == 4);
    for (const auto& [id, y] : ext.lifted_points) {
        RatVec lhs = mat_vec(ext.E, p.vrep()[id]);
        RatVec fy = mat_vec(ext.F, y);
        for (std::size_t t = 0; t < lhs.size(); ++t) lhs[t] += fy[t];
        CHECK(lhs == ext.g);
        CHECK(cone_contains(ext.cone, y));
    }
}

TEST_CASE("psd rank upper bound from an entrywise square root") {
    RationalMatrix ones = mat({{1, 1}, {1, 1}});
    PsdFactorization f = psd_rank_upper_from_sqrt(ones, ones);
    CHECK(f.r == 2);  // rank(N) = 1, plus the normalization slack
    CHECK(static_cast<bool>(verify_psd_factorization(ones, f)));

    RationalMatrix m1 = cor_slack_matrix(1);
    RationalMatrix n1 = mat({{1, 1}, {1, 0}});
    PsdFactorization f1 = psd_rank_upper_from_sqrt(m1, n1);
    CHECK(f1.r == 3);
    CHECK(f1.r == rat_rank(n1) + 1);
    CHECK(static_cast<bool>(verify_psd_factorization(m1, f1)));

    CHECK_THROWS_AS(psd_rank_upper_from_sqrt(m1, mat({{1, 1}, {1, 1}})), input_error);

    RationalMatrix zero(2, 3);
    PsdFactorization fz = psd_rank_upper_from_sqrt(zero, zero);
    CHECK(fz.r == 1);
    CHECK(static_cast<bool>(verify_psd_factorization(zero, fz)));
}

TEST_CASE("stable set slack matrix gives the small psd extension") {
    Polytope p = with_hrep(stable_set_polytope(complete_graph(3)));
    SlackMatrix s = slack_matrix(p.hrep(), p.vrep());
    for (const auto& x : s.matrix.a) CHECK((x == 0 || x == 1));
    PsdFactorization f = psd_rank_upper_from_sqrt(s.matrix, s.matrix);
    CHECK(f.r == rat_rank(s.matrix) + 1);
    CHECK(f.r <= p.dim + 2);
    CHECK(static_cast<bool>(verify_psd_factorization(s.matrix, f)));
}

TEST_CASE("projection soundness over random cone points") {
    Polytope p = with_hrep(cut_polytope(3));
    ExtensionSystem ext = extension_from_nonneg_factorization(p, trivial_factorization(p));
    RationalMatrix a(ext.E.rows, ext.E.cols);
    a = ext.E;
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> weight(0, 8);
    int solved = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        // Random rational convex combination of the lifted witnesses keeps the
        // equality system consistent; the solved x must satisfy Ax <= b.
        RatVec lambda(ext.lifted_points.size());
        Rational total = 0;
        for (auto& l : lambda) {
            l = weight(rng);
            total += l;
        }
        if (total == 0) continue;
        for (auto& l : lambda) l /= total;
        RatVec y(ext.cone.param, Rational(0));
        for (std::size_t t = 0; t < lambda.size(); ++t)
            for (int k = 0; k < ext.cone.param; ++k)
                y[k] += lambda[t] * ext.lifted_points[t].second[k];
        REQUIRE(cone_contains(ext.cone, y));
        RatVec rhs = ext.g;
        RatVec fy = mat_vec(ext.F, y);
        for (std::size_t t = 0; t < rhs.size(); ++t) rhs[t] -= fy[t];
        auto x = solve_linear(ext.E, rhs);
        REQUIRE(x.has_value());
        ++solved;
        for (int i = 0; i < ext.E.rows; ++i) {
            Rational ax = 0;
            for (int j = 0; j < ext.E.cols; ++j) ax += ext.E.at(i, j) * (*x)[j];
            CHECK(ax <= ext.g[i]);
        }
    }
    CHECK(solved >= 990);
}

TEST_CASE("extension system json roundtrip") {
    Polytope p = with_hrep(cut_polytope(3));
    ExtensionSystem ext = extension_from_nonneg_factorization(p, trivial_factorization(p));
    nlohmann::json j = ext;
    ExtensionSystem back = j.get<ExtensionSystem>();
    CHECK(back.E == ext.E);
    CHECK(back.F == ext.F);
    CHECK(back.g == ext.g);
    CHECK(back.cone.kind == ext.cone.kind);
    CHECK(back.cone.param == ext.cone.param);
    CHECK(back.lifted_points == ext.lifted_points);
}
