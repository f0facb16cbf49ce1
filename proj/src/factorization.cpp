#include "xc/factorization.hpp"

#include <algorithm>

#include "xc/gadgets.hpp"
#include "xc/lp.hpp"

namespace xc {

VerifyResult verify_nonneg_factorization(const RationalMatrix& s, const NonnegFactorization& f) {
    if (f.left.rows != s.rows || f.right.cols != s.cols || f.left.cols != f.right.rows)
        return {false, -1, -1, "dimension mismatch"};
    if (f.left.cols < 1) return {false, -1, -1, "rank must be at least 1"};
    for (int i = 0; i < f.left.rows; ++i)
        for (int k = 0; k < f.left.cols; ++k)
            if (f.left.at(i, k) < 0) return {false, i, k, "negative entry in left factor"};
    for (int k = 0; k < f.right.rows; ++k)
        for (int j = 0; j < f.right.cols; ++j)
            if (f.right.at(k, j) < 0) return {false, k, j, "negative entry in right factor"};
    for (int i = 0; i < s.rows; ++i)
        for (int j = 0; j < s.cols; ++j) {
            Rational acc = 0;
            for (int k = 0; k < f.left.cols; ++k) acc += f.left.at(i, k) * f.right.at(k, j);
            if (acc != s.at(i, j)) return {false, i, j, "product mismatch"};
        }
    return {};
}

bool is_psd(const RationalMatrix& sym) {
    if (!sym.is_symmetric()) return false;
    RationalMatrix a = sym;
    const int n = a.rows;
    for (int k = 0; k < n; ++k) {
        if (a.at(k, k) < 0) return false;
        if (a.at(k, k) == 0) {
            // A PSD matrix with zero diagonal entry has a zero row.
            for (int j = k + 1; j < n; ++j)
                if (a.at(k, j) != 0) return false;
            continue;
        }
        for (int i = k + 1; i < n; ++i) {
            if (a.at(i, k) == 0) continue;
            Rational f = a.at(i, k) / a.at(k, k);
            for (int j = k; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
        }
    }
    return true;
}

namespace {

// Exact Frobenius pairing over all (i, j) with an integer fast path: when
// every flattened entry and every target entry is a machine-size integer the
// dot products run in native arithmetic, with identical exact results.
VerifyResult check_pairing(const RationalMatrix& m, const std::vector<RatVec>& rows_flat,
                           const std::vector<RatVec>& cols_flat) {
    bool integral = true;
    Rational bound = 0;
    auto scan = [&](const std::vector<RatVec>& vs) {
        for (const auto& v : vs)
            for (const auto& x : v) {
                if (!is_integral(x)) {
                    integral = false;
                    return;
                }
                Rational ax = x < 0 ? Rational(-x) : x;
                if (ax > bound) bound = ax;
            }
    };
    scan(rows_flat);
    if (integral) scan(cols_flat);
    if (integral)
        for (const auto& x : m.a)
            if (!is_integral(x)) {
                integral = false;
                break;
            }

    // 1e4 terms of products below 1e12 keep the accumulator well inside
    // int64 range, so the fast path is exact.
    const std::size_t terms = rows_flat.empty() ? 0 : rows_flat[0].size();
    if (integral && bound < Rational(1'000'000) && terms < 10'000) {
        std::vector<std::vector<std::int64_t>> ri(rows_flat.size()), ci(cols_flat.size());
        auto conv = [](const std::vector<RatVec>& vs, std::vector<std::vector<std::int64_t>>& out) {
            for (std::size_t k = 0; k < vs.size(); ++k) {
                out[k].resize(vs[k].size());
                for (std::size_t t = 0; t < vs[k].size(); ++t)
                    out[k][t] = static_cast<std::int64_t>(rat_num(vs[k][t]));
            }
        };
        conv(rows_flat, ri);
        conv(cols_flat, ci);
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) {
                __int128 acc = 0;
                const auto& r = ri[i];
                const auto& c = ci[j];
                for (std::size_t t = 0; t < terms; ++t)
                    acc += static_cast<__int128>(r[t]) * c[t];
                const Rational& target = m.at(i, j);
                bool match = rat_den(target) == 1 &&
                             rat_num(target) == Int(static_cast<std::int64_t>(acc));
                if (!match) return {false, i, j, "pairing mismatch"};
            }
        return {};
    }

    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (dot(rows_flat[i], cols_flat[j]) != m.at(i, j))
                return {false, i, j, "pairing mismatch"};
    return {};
}

}  // namespace

VerifyResult verify_psd_factorization(const RationalMatrix& m, const PsdFactorization& f) {
    if (static_cast<int>(f.row_factors.size()) != m.rows ||
        static_cast<int>(f.col_factors.size()) != m.cols)
        return {false, -1, -1, "factor count mismatch"};
    if (f.r < 1) return {false, -1, -1, "rank must be at least 1"};
    for (int i = 0; i < m.rows; ++i) {
        const RationalMatrix& t = f.row_factors[i];
        if (t.rows != f.r || t.cols != f.r) return {false, i, -1, "row factor size mismatch"};
        if (!is_psd(t)) return {false, i, -1, "row factor not PSD"};
    }
    for (int j = 0; j < m.cols; ++j) {
        const RationalMatrix& u = f.col_factors[j];
        if (u.rows != f.r || u.cols != f.r) return {false, -1, j, "column factor size mismatch"};
        if (!is_psd(u)) return {false, -1, j, "column factor not PSD"};
    }
    std::vector<RatVec> rows_flat(m.rows), cols_flat(m.cols);
    for (int i = 0; i < m.rows; ++i) rows_flat[i] = sym_flatten_weighted(f.row_factors[i]);
    for (int j = 0; j < m.cols; ++j) cols_flat[j] = sym_flatten_plain(f.col_factors[j]);
    return check_pairing(m, rows_flat, cols_flat);
}

bool cone_contains(const ConeId& cone, const RatVec& y) {
    if (static_cast<int>(y.size()) != cone.ambient_dim()) return false;
    if (cone.kind == ConeId::Kind::NonnegOrthant) {
        for (const auto& x : y)
            if (x < 0) return false;
        return true;
    }
    return is_psd(sym_unflatten(y, cone.param));
}

RatVec sym_flatten_plain(const RationalMatrix& sym) {
    RatVec v;
    v.reserve(sym.rows * (sym.rows + 1) / 2);
    for (int i = 0; i < sym.rows; ++i)
        for (int j = i; j < sym.cols; ++j) v.push_back(sym.at(i, j));
    return v;
}

RatVec sym_flatten_weighted(const RationalMatrix& sym) {
    RatVec v;
    v.reserve(sym.rows * (sym.rows + 1) / 2);
    for (int i = 0; i < sym.rows; ++i)
        for (int j = i; j < sym.cols; ++j)
            v.push_back(i == j ? sym.at(i, j) : Rational(2) * sym.at(i, j));
    return v;
}

RationalMatrix sym_unflatten(const RatVec& v, int r) {
    if (static_cast<int>(v.size()) != r * (r + 1) / 2)
        throw input_error("sym_unflatten: length mismatch");
    RationalMatrix m(r, r);
    int t = 0;
    for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j) {
            m.at(i, j) = v[t];
            m.at(j, i) = v[t];
            ++t;
        }
    return m;
}

// ---------------------------------------------------------------------------
// Extensions from factorizations and back
// ---------------------------------------------------------------------------

ExtensionSystem extension_from_nonneg_factorization(const Polytope& p,
                                                    const NonnegFactorization& f) {
    Polytope q = with_hrep(with_vrep(p));
    SlackMatrix s = slack_matrix(q.hrep(), q.vrep());
    if (VerifyResult v = verify_nonneg_factorization(s.matrix, f); !v)
        throw input_error("extension_from_nonneg_factorization: factorization does not verify: " +
                          v.reason);

    // Drop zero columns of the left factor (each lowers the rank by one).
    std::vector<int> keep;
    for (int k = 0; k < f.left.cols; ++k) {
        bool zero = true;
        for (int i = 0; i < f.left.rows && zero; ++i) zero = f.left.at(i, k) == 0;
        if (!zero) keep.push_back(k);
    }
    if (keep.empty()) keep.push_back(0);  // all-zero slack matrix: keep one slot

    const int m = s.matrix.rows;
    const int r = static_cast<int>(keep.size());
    ExtensionSystem ext;
    ext.E = RationalMatrix(m, q.dim);
    ext.F = RationalMatrix(m, r);
    ext.g.resize(m);
    for (int i = 0; i < m; ++i) {
        const Inequality& row = q.hrep()[i];
        for (int j = 0; j < q.dim; ++j) ext.E.at(i, j) = row.coeffs[j];
        for (int k = 0; k < r; ++k) ext.F.at(i, k) = f.left.at(i, keep[k]);
        ext.g[i] = row.rhs;
    }
    ext.cone = {ConeId::Kind::NonnegOrthant, r};
    for (int j = 0; j < s.matrix.cols; ++j) {
        RatVec y(r);
        for (int k = 0; k < r; ++k) y[k] = f.right.at(keep[k], j);
        ext.lifted_points.emplace_back(j, std::move(y));
    }
    return ext;
}

NonnegFactorization factorization_from_extension(const ExtensionSystem& ext, const Polytope& p) {
    if (ext.cone.kind != ConeId::Kind::NonnegOrthant)
        throw input_error("factorization_from_extension: nonnegative-orthant systems only");
    Polytope q = with_hrep(with_vrep(p));
    const auto& verts = q.vrep();
    const auto& rows = q.hrep();
    const int d = q.dim;
    const int k = ext.cone.param;
    const int pe = ext.E.rows;
    if (ext.E.cols != d) throw input_error("factorization_from_extension: x-dimension mismatch");

    // Right factor: one lift per vertex, taken from the stored witnesses when
    // they check out exactly, otherwise found by exact LP.
    RationalMatrix right(k, static_cast<int>(verts.size()));
    for (std::size_t j = 0; j < verts.size(); ++j) {
        RatVec need = ext.g;
        RatVec ev = mat_vec(ext.E, verts[j]);
        for (int i = 0; i < pe; ++i) need[i] -= ev[i];

        std::optional<RatVec> lift;
        for (const auto& [id, y] : ext.lifted_points) {
            if (id != static_cast<int>(j)) continue;
            if (!cone_contains(ext.cone, y)) break;
            if (mat_vec(ext.F, y) == need) lift = y;
            break;
        }
        if (!lift) {
            LpProblem lp;
            lp.ineq_lhs = RationalMatrix(k, k);
            for (int t = 0; t < k; ++t) lp.ineq_lhs.at(t, t) = -1;
            lp.ineq_rhs.assign(k, Rational(0));
            lp.eq_lhs = ext.F;
            lp.eq_rhs = need;
            lp.objective.assign(k, Rational(0));
            LpResult res = lp_solve(lp);
            if (res.status != LpStatus::Optimal)
                throw not_an_extension_error(
                    "factorization_from_extension: vertex " + std::to_string(j) +
                    " does not lift into the system");
            lift = *res.primal;
        }
        for (int t = 0; t < k; ++t) right.at(t, static_cast<int>(j)) = (*lift)[t];
    }

    // Left factor rows: multipliers nu with nu.E = A_i, nu.g = b_i and
    // nu.F >= 0; then the slack of row i at vertex j is (nu.F) . y_j.
    RationalMatrix left(static_cast<int>(rows.size()), k);
    RationalMatrix et = ext.E.transposed();
    RationalMatrix ft = ext.F.transposed();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        LpProblem lp;
        lp.objective.assign(pe, Rational(0));
        lp.ineq_lhs = RationalMatrix(k, pe);
        for (int t = 0; t < k; ++t)
            for (int c = 0; c < pe; ++c) lp.ineq_lhs.at(t, c) = -ft.at(t, c);
        lp.ineq_rhs.assign(k, Rational(0));
        lp.eq_lhs = RationalMatrix(d + 1, pe);
        lp.eq_rhs.resize(d + 1);
        for (int c = 0; c < pe; ++c) {
            for (int t = 0; t < d; ++t) lp.eq_lhs.at(t, c) = et.at(t, c);
            lp.eq_lhs.at(d, c) = ext.g[c];
        }
        for (int t = 0; t < d; ++t) lp.eq_rhs[t] = rows[i].coeffs[t];
        lp.eq_rhs[d] = rows[i].rhs;
        LpResult res = lp_solve(lp);
        if (res.status != LpStatus::Optimal)
            throw not_an_extension_error("factorization_from_extension: inequality row " +
                                         std::to_string(i) +
                                         " is not derivable from the system");
        RatVec t_row = vec_mat(*res.primal, ext.F);
        for (int t = 0; t < k; ++t) left.at(static_cast<int>(i), t) = t_row[t];
    }

    NonnegFactorization out{std::move(left), std::move(right)};
    SlackMatrix s = slack_matrix(rows, verts);
    if (VerifyResult v = verify_nonneg_factorization(s.matrix, out); !v)
        throw std::logic_error("factorization_from_extension: result failed verification: " +
                               v.reason);
    return out;
}

NonnegFactorization extend_to_redundant_rows(const NonnegFactorization& f, const Polytope& p,
                                             const std::vector<Inequality>& extra_rows,
                                             const std::vector<RatVec>& extra_cols) {
    Polytope q = with_hrep(with_vrep(p));
    const auto& rows = q.hrep();
    const auto& verts = q.vrep();
    SlackMatrix base = slack_matrix(rows, verts);
    if (VerifyResult v = verify_nonneg_factorization(base.matrix, f); !v)
        throw input_error("extend_to_redundant_rows: base factorization does not verify: " +
                          v.reason);
    const int r = f.rank();
    const int m0 = static_cast<int>(rows.size());
    const int n0 = static_cast<int>(verts.size());

    RationalMatrix a_base(m0, q.dim);
    RatVec b_base(m0);
    for (int i = 0; i < m0; ++i) {
        for (int j = 0; j < q.dim; ++j) a_base.at(i, j) = rows[i].coeffs[j];
        b_base[i] = rows[i].rhs;
    }

    RationalMatrix left(m0 + static_cast<int>(extra_rows.size()), r);
    for (int i = 0; i < m0; ++i)
        for (int k = 0; k < r; ++k) left.at(i, k) = f.left.at(i, k);
    for (std::size_t e = 0; e < extra_rows.size(); ++e) {
        const Inequality& row = extra_rows[e];
        bool tight_everywhere = true;
        for (const auto& v : verts) {
            Rational s = row.slack_at(v);
            if (s < 0)
                throw input_error("extend_to_redundant_rows: extra row " + std::to_string(e) +
                                  " is not valid for the polytope");
            if (s != 0) tight_everywhere = false;
        }
        RatVec t_row(r, Rational(0));
        if (!tight_everywhere) {
            RatVec mu = farkas_decompose(a_base, b_base, row.coeffs, row.rhs);
            t_row = vec_mat(mu, f.left);
        }
        for (int k = 0; k < r; ++k) left.at(m0 + static_cast<int>(e), k) = t_row[k];
    }

    RationalMatrix right(r, n0 + static_cast<int>(extra_cols.size()));
    for (int k = 0; k < r; ++k)
        for (int j = 0; j < n0; ++j) right.at(k, j) = f.right.at(k, j);
    for (std::size_t e = 0; e < extra_cols.size(); ++e) {
        // Convex combination coefficients over the vertex list.
        LpProblem lp;
        lp.objective.assign(n0, Rational(0));
        lp.ineq_lhs = RationalMatrix(n0, n0);
        for (int t = 0; t < n0; ++t) lp.ineq_lhs.at(t, t) = -1;
        lp.ineq_rhs.assign(n0, Rational(0));
        lp.eq_lhs = RationalMatrix(q.dim + 1, n0);
        lp.eq_rhs.resize(q.dim + 1);
        for (int j = 0; j < n0; ++j) {
            for (int t = 0; t < q.dim; ++t) lp.eq_lhs.at(t, j) = verts[j][t];
            lp.eq_lhs.at(q.dim, j) = 1;
        }
        if (static_cast<int>(extra_cols[e].size()) != q.dim)
            throw input_error("extend_to_redundant_rows: extra point dimension mismatch");
        for (int t = 0; t < q.dim; ++t) lp.eq_rhs[t] = extra_cols[e][t];
        lp.eq_rhs[q.dim] = 1;
        LpResult res = lp_solve(lp);
        if (res.status != LpStatus::Optimal)
            throw input_error("extend_to_redundant_rows: extra point " + std::to_string(e) +
                              " is not in the polytope");
        RatVec u_col = mat_vec(f.right, *res.primal);
        for (int k = 0; k < r; ++k) right.at(k, n0 + static_cast<int>(e)) = u_col[k];
    }

    NonnegFactorization out{std::move(left), std::move(right)};

    std::vector<Inequality> all_rows = rows;
    all_rows.insert(all_rows.end(), extra_rows.begin(), extra_rows.end());
    std::vector<RatVec> all_cols = verts;
    all_cols.insert(all_cols.end(), extra_cols.begin(), extra_cols.end());
    SlackMatrix full = slack_matrix(all_rows, all_cols);
    if (VerifyResult v = verify_nonneg_factorization(full.matrix, out); !v)
        throw std::logic_error("extend_to_redundant_rows: extended factorization failed: " +
                               v.reason);
    return out;
}

// ---------------------------------------------------------------------------
// PSD constructions
// ---------------------------------------------------------------------------

namespace {

RationalMatrix outer(const RatVec& v) {
    RationalMatrix m(static_cast<int>(v.size()), static_cast<int>(v.size()));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m.at(i, j) = v[i] * v[j];
    return m;
}

}  // namespace

PsdFactorization cor_slack_psd_factorization(int n) {
    if (n < 1 || n > 12) throw input_error("cor_slack_psd_factorization: need 1 <= n <= 12");
    PsdFactorization f;
    f.r = n + 1;
    const std::int64_t size = std::int64_t(1) << n;
    f.row_factors.reserve(size);
    f.col_factors.reserve(size);
    for (std::int64_t idx = 0; idx < size; ++idx) {
        BitString s = BitString::from_index(n, idx);
        RatVec va(n + 1), vb(n + 1);
        va[0] = 1;
        vb[0] = 1;
        for (int i = 0; i < n; ++i) {
            va[i + 1] = -static_cast<int>(s.bits[i]);
            vb[i + 1] = static_cast<int>(s.bits[i]);
        }
        f.row_factors.push_back(outer(va));
        f.col_factors.push_back(outer(vb));
    }
    return f;
}

ExtensionSystem psd_extension_from_factorization(const Polytope& p, const PsdFactorization& f) {
    Polytope q = with_hrep(with_vrep(p));
    SlackMatrix s = slack_matrix(q.hrep(), q.vrep());
    if (VerifyResult v = verify_psd_factorization(s.matrix, f); !v)
        throw input_error("psd_extension_from_factorization: factorization does not verify: " +
                          v.reason);
    const int m = s.matrix.rows;
    const int flat = f.r * (f.r + 1) / 2;
    ExtensionSystem ext;
    ext.E = RationalMatrix(m, q.dim);
    ext.F = RationalMatrix(m, flat);
    ext.g.resize(m);
    for (int i = 0; i < m; ++i) {
        const Inequality& row = q.hrep()[i];
        for (int j = 0; j < q.dim; ++j) ext.E.at(i, j) = row.coeffs[j];
        RatVec w = sym_flatten_weighted(f.row_factors[i]);
        for (int t = 0; t < flat; ++t) ext.F.at(i, t) = w[t];
        ext.g[i] = row.rhs;
    }
    ext.cone = {ConeId::Kind::PsdCone, f.r};
    for (int j = 0; j < s.matrix.cols; ++j)
        ext.lifted_points.emplace_back(j, sym_flatten_plain(f.col_factors[j]));
    return ext;
}

PsdFactorization psd_rank_upper_from_sqrt(const RationalMatrix& m, const RationalMatrix& n) {
    if (m.rows != n.rows || m.cols != n.cols)
        throw input_error("psd_rank_upper_from_sqrt: dimension mismatch");
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (m.at(i, j) != n.at(i, j) * n.at(i, j))
                throw input_error("psd_rank_upper_from_sqrt: m is not the entrywise square of n");

    // Exact rank factorization n = a * b from the reduced row echelon form.
    RrefResult rr = rref(n);
    const int r = rr.rank;
    PsdFactorization f;
    if (r == 0) {
        f.r = 1;
        RationalMatrix one(1, 1), zero(1, 1);
        one.at(0, 0) = 1;
        f.row_factors.assign(m.rows, one);
        f.col_factors.assign(m.cols, zero);
        return f;
    }
    RationalMatrix a(m.rows, r), b(r, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int k = 0; k < r; ++k) a.at(i, k) = n.at(i, rr.pivot_cols[k]);
    for (int k = 0; k < r; ++k)
        for (int j = 0; j < m.cols; ++j) b.at(k, j) = rr.reduced.at(k, j);
    if (!(a * b == n)) throw std::logic_error("psd_rank_upper_from_sqrt: rank factorization failed");

    // Shared normalization: a rational upper bound on every row norm of a.
    Rational delta = 0;
    for (int i = 0; i < m.rows; ++i) {
        Rational s = 0;
        for (int k = 0; k < r; ++k) s += a.at(i, k) < 0 ? Rational(-a.at(i, k)) : a.at(i, k);
        if (s > delta) delta = s;
    }

    f.r = r + 1;
    for (int i = 0; i < m.rows; ++i) {
        RatVec phi(r + 1, Rational(0));
        Rational norm2 = 0;
        for (int k = 0; k < r; ++k) {
            phi[k] = a.at(i, k) / delta;
            norm2 += phi[k] * phi[k];
        }
        RationalMatrix t = outer(phi);
        t.at(r, r) = Rational(1) - norm2;  // normalization slack, kept diagonal
        f.row_factors.push_back(std::move(t));
    }
    Rational delta2 = delta * delta;
    for (int j = 0; j < m.cols; ++j) {
        RatVec psi(r + 1, Rational(0));
        for (int k = 0; k < r; ++k) psi[k] = b.at(k, j);
        RationalMatrix u = outer(psi);
        for (auto& x : u.a) x *= delta2;
        f.col_factors.push_back(std::move(u));
    }
    if (VerifyResult v = verify_psd_factorization(m, f); !v)
        throw std::logic_error("psd_rank_upper_from_sqrt: construction failed verification: " +
                               v.reason);
    return f;
}

// ---------------------------------------------------------------------------
// JSON codecs
// ---------------------------------------------------------------------------

void to_json(nlohmann::json& j, const NonnegFactorization& f) {
    j = nlohmann::json{{"left", f.left}, {"right", f.right}};
}

void from_json(const nlohmann::json& j, NonnegFactorization& f) {
    j.at("left").get_to(f.left);
    j.at("right").get_to(f.right);
}

void to_json(nlohmann::json& j, const PsdFactorization& f) {
    j = nlohmann::json{
        {"r", f.r}, {"row_factors", f.row_factors}, {"col_factors", f.col_factors}};
}

void from_json(const nlohmann::json& j, PsdFactorization& f) {
    j.at("r").get_to(f.r);
    j.at("row_factors").get_to(f.row_factors);
    j.at("col_factors").get_to(f.col_factors);
}

void to_json(nlohmann::json& j, const ExtensionSystem& e) {
    nlohmann::json lifts = nlohmann::json::array();
    for (const auto& [id, y] : e.lifted_points)
        lifts.push_back({{"vertex", id}, {"y", ratvec_to_json(y)}});
    j = nlohmann::json{
        {"E", e.E},
        {"F", e.F},
        {"g", ratvec_to_json(e.g)},
        {"cone",
         {{"kind", e.cone.kind == ConeId::Kind::NonnegOrthant ? "nonneg_orthant" : "psd"},
          {"param", e.cone.param}}},
        {"lifted_points", std::move(lifts)}};
}

void from_json(const nlohmann::json& j, ExtensionSystem& e) {
    j.at("E").get_to(e.E);
    j.at("F").get_to(e.F);
    e.g = ratvec_from_json(j.at("g"));
    std::string kind = j.at("cone").at("kind").get<std::string>();
    e.cone.kind = kind == "psd" ? ConeId::Kind::PsdCone : ConeId::Kind::NonnegOrthant;
    e.cone.param = j.at("cone").at("param").get<int>();
    e.lifted_points.clear();
    for (const auto& l : j.at("lifted_points"))
        e.lifted_points.emplace_back(l.at("vertex").get<int>(), ratvec_from_json(l.at("y")));
}

}  // namespace xc
