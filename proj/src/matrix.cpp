#include "xc/matrix.hpp"

#include <algorithm>

namespace xc {

RationalMatrix RationalMatrix::identity(int n) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RatVec>& rows_in) {
    if (rows_in.empty()) return {};
    RationalMatrix m(static_cast<int>(rows_in.size()), static_cast<int>(rows_in[0].size()));
    for (int i = 0; i < m.rows; ++i) {
        if (static_cast<int>(rows_in[i].size()) != m.cols)
            throw input_error("from_rows: ragged row lengths");
        for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows_in[i][j];
    }
    return m;
}

RatVec RationalMatrix::row(int i) const {
    return RatVec(a.begin() + static_cast<std::size_t>(i) * cols,
                  a.begin() + static_cast<std::size_t>(i + 1) * cols);
}

RatVec RationalMatrix::col(int j) const {
    RatVec v(rows);
    for (int i = 0; i < rows; ++i) v[i] = at(i, j);
    return v;
}

RationalMatrix RationalMatrix::transposed() const {
    RationalMatrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

bool RationalMatrix::is_symmetric() const {
    if (rows != cols) return false;
    for (int i = 0; i < rows; ++i)
        for (int j = i + 1; j < cols; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

bool RationalMatrix::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](const Rational& x) { return x == 0; });
}

RationalMatrix operator*(const RationalMatrix& x, const RationalMatrix& y) {
    if (x.cols != y.rows) throw input_error("matrix product: dimension mismatch");
    RationalMatrix z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Rational& xik = x.at(i, k);
            if (xik == 0) continue;
            for (int j = 0; j < y.cols; ++j) z.at(i, j) += xik * y.at(k, j);
        }
    return z;
}

RatVec mat_vec(const RationalMatrix& m, const RatVec& v) {
    if (static_cast<int>(v.size()) != m.cols) throw input_error("mat_vec: dimension mismatch");
    RatVec r(m.rows, Rational(0));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r[i] += m.at(i, j) * v[j];
    return r;
}

RatVec vec_mat(const RatVec& v, const RationalMatrix& m) {
    if (static_cast<int>(v.size()) != m.rows) throw input_error("vec_mat: dimension mismatch");
    RatVec r(m.cols, Rational(0));
    for (int i = 0; i < m.rows; ++i) {
        if (v[i] == 0) continue;
        for (int j = 0; j < m.cols; ++j) r[j] += v[i] * m.at(i, j);
    }
    return r;
}

int rat_rank(const RationalMatrix& m) {
    if (m.rows == 0 || m.cols == 0) return 0;
    // Scale each row to integers; rank is invariant.
    std::vector<std::vector<Int>> w(m.rows, std::vector<Int>(m.cols));
    for (int i = 0; i < m.rows; ++i) {
        Int l = 1;
        for (int j = 0; j < m.cols; ++j) l = lcm(l, rat_den(m.at(i, j)));
        for (int j = 0; j < m.cols; ++j) w[i][j] = rat_num(m.at(i, j) * l);
    }
    // Bareiss fraction-free elimination, stopping once no pivot remains.
    Int prev = 1;
    int rank = 0;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int piv = -1;
        for (int i = row; i < m.rows; ++i)
            if (w[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(w[row], w[piv]);
        for (int i = row + 1; i < m.rows; ++i) {
            for (int j = col + 1; j < m.cols; ++j)
                w[i][j] = (w[row][col] * w[i][j] - w[i][col] * w[row][j]) / prev;
            w[i][col] = 0;
        }
        prev = w[row][col];
        ++rank;
        ++row;
    }
    return rank;
}

BooleanMatrix support(const RationalMatrix& m) {
    BooleanMatrix b(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) b.at(i, j) = m.at(i, j) != 0 ? 1 : 0;
    return b;
}

RrefResult rref(const RationalMatrix& m) {
    RrefResult res;
    res.reduced = m;
    RationalMatrix& w = res.reduced;
    int row = 0;
    for (int col = 0; col < w.cols && row < w.rows; ++col) {
        int piv = -1;
        for (int i = row; i < w.rows; ++i)
            if (w.at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < w.cols; ++j) std::swap(w.at(piv, j), w.at(row, j));
        Rational p = w.at(row, col);
        for (int j = col; j < w.cols; ++j) w.at(row, j) /= p;
        for (int i = 0; i < w.rows; ++i) {
            if (i == row || w.at(i, col) == 0) continue;
            Rational f = w.at(i, col);
            for (int j = col; j < w.cols; ++j) w.at(i, j) -= f * w.at(row, j);
        }
        res.pivot_cols.push_back(col);
        ++row;
    }
    res.rank = row;
    return res;
}

std::vector<RatVec> nullspace_basis(const RationalMatrix& m) {
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : r.pivot_cols) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (int free_col = 0; free_col < m.cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        RatVec v(m.cols, Rational(0));
        v[free_col] = 1;
        for (int k = 0; k < r.rank; ++k) v[r.pivot_cols[k]] = -r.reduced.at(k, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RatVec> solve_linear(const RationalMatrix& m, const RatVec& b) {
    if (static_cast<int>(b.size()) != m.rows) throw input_error("solve_linear: dimension mismatch");
    RationalMatrix aug(m.rows, m.cols + 1);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[i];
    }
    RrefResult r = rref(aug);
    RatVec x(m.cols, Rational(0));
    for (int k = 0; k < r.rank; ++k) {
        if (r.pivot_cols[k] == m.cols) return std::nullopt;  // row 0 = 1: inconsistent
        x[r.pivot_cols[k]] = r.reduced.at(k, m.cols);
    }
    return x;
}

void to_json(nlohmann::json& j, const RationalMatrix& m) {
    nlohmann::json entries = nlohmann::json::array();
    for (int i = 0; i < m.rows; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int jj = 0; jj < m.cols; ++jj) row.push_back(rat_str(m.at(i, jj)));
        entries.push_back(std::move(row));
    }
    j = nlohmann::json{{"rows", m.rows}, {"cols", m.cols}, {"entries", std::move(entries)}};
}

void from_json(const nlohmann::json& j, RationalMatrix& m) {
    int rows = j.at("rows").get<int>();
    int cols = j.at("cols").get<int>();
    m = RationalMatrix(rows, cols);
    const auto& entries = j.at("entries");
    if (static_cast<int>(entries.size()) != rows) throw input_error("matrix json: row count mismatch");
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(entries[i].size()) != cols)
            throw input_error("matrix json: column count mismatch");
        for (int jj = 0; jj < cols; ++jj)
            m.at(i, jj) = rat_parse(entries[i][jj].get<std::string>());
    }
}

void to_json(nlohmann::json& j, const BooleanMatrix& m) {
    nlohmann::json entries = nlohmann::json::array();
    for (int i = 0; i < m.rows; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int jj = 0; jj < m.cols; ++jj) row.push_back(static_cast<int>(m.at(i, jj)));
        entries.push_back(std::move(row));
    }
    j = nlohmann::json{{"rows", m.rows}, {"cols", m.cols}, {"entries", std::move(entries)}};
}

void from_json(const nlohmann::json& j, BooleanMatrix& m) {
    int rows = j.at("rows").get<int>();
    int cols = j.at("cols").get<int>();
    m = BooleanMatrix(rows, cols);
    const auto& entries = j.at("entries");
    for (int i = 0; i < rows; ++i)
        for (int jj = 0; jj < cols; ++jj) {
            int v = entries.at(i).at(jj).get<int>();
            if (v != 0 && v != 1) throw input_error("boolean matrix json: entry not 0/1");
            m.at(i, jj) = static_cast<std::uint8_t>(v);
        }
}

nlohmann::json ratvec_to_json(const RatVec& v) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& x : v) j.push_back(rat_str(x));
    return j;
}

RatVec ratvec_from_json(const nlohmann::json& j) {
    RatVec v;
    v.reserve(j.size());
    for (const auto& s : j) v.push_back(rat_parse(s.get<std::string>()));
    return v;
}

}  // namespace xc
