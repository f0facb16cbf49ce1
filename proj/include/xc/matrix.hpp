#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "xc/rational.hpp"

namespace xc {

// Dense row-major matrix of exact rationals.
struct RationalMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Rational> a;

    RationalMatrix() = default;
    RationalMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, Rational(0)) {
        if (r < 0 || c < 0) throw input_error("RationalMatrix: negative dimension");
    }

    static RationalMatrix identity(int n);
    static RationalMatrix from_rows(const std::vector<RatVec>& rows_in);

    Rational& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const Rational& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    RatVec row(int i) const;
    RatVec col(int j) const;
    RationalMatrix transposed() const;
    bool is_symmetric() const;
    bool is_zero() const;

    bool operator==(const RationalMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

RationalMatrix operator*(const RationalMatrix& x, const RationalMatrix& y);
RatVec mat_vec(const RationalMatrix& m, const RatVec& v);
RatVec vec_mat(const RatVec& v, const RationalMatrix& m);

// 0/1 matrix, one byte per bit (desk scale).
struct BooleanMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> bits;

    BooleanMatrix() = default;
    BooleanMatrix(int r, int c) : rows(r), cols(c), bits(static_cast<std::size_t>(r) * c, 0) {}

    std::uint8_t& at(int i, int j) { return bits[static_cast<std::size_t>(i) * cols + j]; }
    std::uint8_t at(int i, int j) const { return bits[static_cast<std::size_t>(i) * cols + j]; }

    bool operator==(const BooleanMatrix& o) const { return rows == o.rows && cols == o.cols && bits == o.bits; }
};

// Exact rank by fraction-free (Bareiss) elimination over integer-scaled rows.
int rat_rank(const RationalMatrix& m);

// 1 exactly where the entry is nonzero.
BooleanMatrix support(const RationalMatrix& m);

// Reduced row echelon form, exact.
struct RrefResult {
    RationalMatrix reduced;
    std::vector<int> pivot_cols;
    int rank = 0;
};
RrefResult rref(const RationalMatrix& m);

// Basis of {x : Mx = 0}.
std::vector<RatVec> nullspace_basis(const RationalMatrix& m);

// Some exact solution of Mx = b, or nullopt when inconsistent.
std::optional<RatVec> solve_linear(const RationalMatrix& m, const RatVec& b);

// JSON codec: {"rows": r, "cols": c, "entries": [["p/q", ...], ...]}.
void to_json(nlohmann::json& j, const RationalMatrix& m);
void from_json(const nlohmann::json& j, RationalMatrix& m);
void to_json(nlohmann::json& j, const BooleanMatrix& m);
void from_json(const nlohmann::json& j, BooleanMatrix& m);

nlohmann::json ratvec_to_json(const RatVec& v);
RatVec ratvec_from_json(const nlohmann::json& j);

}  // namespace xc
