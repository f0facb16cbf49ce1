#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "xc/bounds.hpp"
#include "xc/gadgets.hpp"

using namespace xc;

namespace {

BooleanMatrix bits(const std::vector<std::vector<int>>& rows) {
    BooleanMatrix b(static_cast<int>(rows.size()),
                    rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < b.cols; ++j) b.at(i, j) = static_cast<std::uint8_t>(rows[i][j]);
    return b;
}

BooleanMatrix permuted(const BooleanMatrix& b, const std::vector<int>& rp,
                       const std::vector<int>& cp) {
    BooleanMatrix out(b.rows, b.cols);
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < b.cols; ++j) out.at(i, j) = b.at(rp[i], cp[j]);
    return out;
}

}  // namespace

TEST_CASE("maximal rectangles of small patterns") {
    auto rects = maximal_rectangles(bits({{1, 1}, {1, 0}}));
    REQUIRE(rects.size() == 2);
    std::set<std::pair<std::vector<int>, std::vector<int>>> got;
    for (const auto& r : rects) got.insert({r.row_set, r.col_set});
    CHECK(got.count({{0}, {0, 1}}) == 1);
    CHECK(got.count({{0, 1}, {0}}) == 1);

    CHECK(maximal_rectangles(bits({{1, 1}, {1, 1}})).size() == 1);
    CHECK(maximal_rectangles(bits({{1, 0}, {0, 1}})).size() == 2);
    CHECK(maximal_rectangles(bits({{0, 0}, {0, 0}})).empty());
}

TEST_CASE("maximal rectangles cap") {
    CHECK_THROWS_AS(maximal_rectangles(support(cor_slack_matrix(3)), 4), budget_error);
}

TEST_CASE("minimum covers of the slack support matrices") {
    RectangleCover c1 = min_rectangle_cover(support(cor_slack_matrix(1)));
    CHECK(c1.size == 2);
    CHECK(c1.optimal);
    RectangleCover c2 = min_rectangle_cover(support(cor_slack_matrix(2)));
    CHECK(c2.size == 3);
    CHECK(c2.optimal);
    CHECK(cover_is_valid(support(cor_slack_matrix(2)), c2));
}

TEST_CASE("trivial covers") {
    RectangleCover ones = min_rectangle_cover(bits({{1, 1}, {1, 1}}));
    CHECK(ones.size == 1);
    CHECK(ones.optimal);
    RectangleCover zeros = min_rectangle_cover(bits({{0, 0}, {0, 0}}));
    CHECK(zeros.size == 0);
    CHECK(zeros.optimal);
}

TEST_CASE("cover size is invariant under permutations") {
    std::mt19937_64 rng(11);
    BooleanMatrix base = support(cor_slack_matrix(2));
    int want = min_rectangle_cover(base).size;
    std::vector<int> rp(base.rows), cp(base.cols);
    for (int t = 0; t < 5; ++t) {
        std::iota(rp.begin(), rp.end(), 0);
        std::iota(cp.begin(), cp.end(), 0);
        std::shuffle(rp.begin(), rp.end(), rng);
        std::shuffle(cp.begin(), cp.end(), rng);
        CHECK(min_rectangle_cover(permuted(base, rp, cp)).size == want);
    }

    BooleanMatrix rnd(6, 6);
    std::uniform_int_distribution<int> bit(0, 1);
    for (auto& x : rnd.bits) x = static_cast<std::uint8_t>(bit(rng));
    int rnd_want = min_rectangle_cover(rnd).size;
    rp.assign(6, 0);
    cp.assign(6, 0);
    for (int t = 0; t < 5; ++t) {
        std::iota(rp.begin(), rp.end(), 0);
        std::iota(cp.begin(), cp.end(), 0);
        std::shuffle(rp.begin(), rp.end(), rng);
        std::shuffle(cp.begin(), cp.end(), rng);
        CHECK(min_rectangle_cover(permuted(rnd, rp, cp)).size == rnd_want);
    }
}

TEST_CASE("budget exhaustion returns a valid best-known cover") {
    SearchBudget tight{200'000, 0};
    BooleanMatrix b = support(cor_slack_matrix(3));
    RectangleCover c = min_rectangle_cover(b, tight);
    CHECK(!c.optimal);
    CHECK(cover_is_valid(b, c));
    CHECK(c.lower_bound >= 1);
    CHECK(c.lower_bound <= c.size);
}

TEST_CASE("support zero pattern matches inner products") {
    for (int n = 1; n <= 4; ++n) {
        BooleanMatrix s = support(cor_slack_matrix(n));
        for (int a = 0; a < s.rows; ++a)
            for (int b = 0; b < s.cols; ++b) {
                int d = BitString::from_index(n, a).dot(BitString::from_index(n, b));
                CHECK((s.at(a, b) == 0) == (d == 1));
            }
    }
}

TEST_CASE("nmf heuristic on the all-ones matrix") {
    RationalMatrix ones(3, 3);
    for (auto& x : ones.a) x = 1;
    auto f = nmf_heuristic(ones, 1);
    REQUIRE(f.has_value());
    CHECK(f->rank() == 1);
    CHECK(static_cast<bool>(verify_nonneg_factorization(ones, *f)));
}

TEST_CASE("nmf heuristic on the n=1 slack matrix") {
    RationalMatrix m = cor_slack_matrix(1);
    auto f = nmf_heuristic(m, 2);
    REQUIRE(f.has_value());
    CHECK(static_cast<bool>(verify_nonneg_factorization(m, *f)));
    CHECK(!nmf_heuristic(m, 1).has_value());  // rank lower bound forbids r=1
}

TEST_CASE("nnegrank bounds") {
    NnegRankBounds b1 = nnegrank_bounds(cor_slack_matrix(1));
    CHECK(b1.lower == 2);
    CHECK(b1.upper == 2);

    RationalMatrix ones(3, 3);
    for (auto& x : ones.a) x = 1;
    NnegRankBounds bo = nnegrank_bounds(ones);
    CHECK(bo.lower == 1);
    CHECK(bo.upper == 1);

    NnegRankBounds b2 = nnegrank_bounds(cor_slack_matrix(2));
    CHECK(b2.lower == 4);
    CHECK(b2.upper == 4);
    CHECK(b2.lower_witness == NnegRankBounds::LowerWitness::Rank);
    CHECK(static_cast<bool>(
        verify_nonneg_factorization(cor_slack_matrix(2), b2.upper_witness)));

    RationalMatrix neg(1, 1);
    neg.at(0, 0) = -1;
    CHECK_THROWS_AS(nnegrank_bounds(neg), input_error);
}

TEST_CASE("bound chain for small slack matrices") {
    for (int n = 1; n <= 3; ++n) {
        RationalMatrix m = cor_slack_matrix(n);
        NnegRankBounds nb = nnegrank_bounds(m);
        int cover_lb = nb.cover.optimal ? nb.cover.size : nb.cover.lower_bound;
        CHECK(cover_lb <= nb.lower);
        CHECK(nb.lower <= nb.upper);
        CHECK(nb.upper <= std::min(m.rows, m.cols));
    }
}

TEST_CASE("cover json roundtrip") {
    RectangleCover c = min_rectangle_cover(support(cor_slack_matrix(2)));
    nlohmann::json j = c;
    RectangleCover back = j.get<RectangleCover>();
    CHECK(back.size == c.size);
    CHECK(back.optimal == c.optimal);
    CHECK(back.rectangles == c.rectangles);
}
