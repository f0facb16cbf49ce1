#include "xc/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace xc {

RatVec LinearMap::apply(const RatVec& point) const {
    if (static_cast<int>(point.size()) != matrix.cols)
        throw input_error("LinearMap: point dimension mismatch");
    RatVec y = mat_vec(matrix, point);
    if (!offset.empty()) {
        if (offset.size() != y.size()) throw input_error("LinearMap: offset dimension mismatch");
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += offset[i];
    }
    return y;
}

const std::vector<RatVec>& Polytope::vrep() const {
    if (!vertices) throw input_error("Polytope: V-representation not available");
    return *vertices;
}

const std::vector<Inequality>& Polytope::hrep() const {
    if (!inequalities) throw input_error("Polytope: H-representation not available");
    return *inequalities;
}

// ---------------------------------------------------------------------------
// Double description core: generators of {z : eq.z = 0, ineq.z >= 0}.
// ---------------------------------------------------------------------------

namespace {

struct ConeGenerators {
    std::vector<RatVec> lineality;
    std::vector<RatVec> rays;
};

using TightSet = std::vector<std::uint64_t>;

bool tight_subset(const TightSet& a, const TightSet& b) {
    for (std::size_t w = 0; w < a.size(); ++w)
        if (a[w] & ~b[w]) return false;
    return true;
}

// Extreme rays of a pointed cone {w : rows.w >= 0} where the rows have full
// column rank. Classic insertion algorithm with the combinatorial adjacency
// test on tight sets.
std::vector<RatVec> pointed_dd(const std::vector<RatVec>& rows, int dim, const DdBudget& budget) {
    const int q = static_cast<int>(rows.size());
    if (dim == 0) return {};

    // Greedily pick dim linearly independent rows for the initial simplicial cone.
    std::vector<int> indep;
    {
        RationalMatrix probe(0, dim);
        std::vector<RatVec> picked;
        for (int i = 0; i < q && static_cast<int>(indep.size()) < dim; ++i) {
            picked.push_back(rows[i]);
            RationalMatrix m = RationalMatrix::from_rows(picked);
            if (rat_rank(m) == static_cast<int>(picked.size()))
                indep.push_back(i);
            else
                picked.pop_back();
        }
        if (static_cast<int>(indep.size()) != dim)
            throw input_error("pointed_dd: rows do not have full column rank");
    }

    // Rays of the initial cone: columns of the inverse of the chosen rows.
    RationalMatrix basis_rows(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) basis_rows.at(i, j) = rows[indep[i]][j];
    RationalMatrix aug(dim, 2 * dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) aug.at(i, j) = basis_rows.at(i, j);
        aug.at(i, dim + i) = 1;
    }
    RrefResult rr = rref(aug);
    std::vector<RatVec> rays;
    for (int j = 0; j < dim; ++j) {
        RatVec r(dim);
        for (int i = 0; i < dim; ++i) r[i] = rr.reduced.at(i, dim + j);
        rays.push_back(scale_primitive(r));
    }

    const std::size_t words = (q + 63) / 64;
    std::vector<bool> processed(q, false);
    for (int i : indep) processed[i] = true;

    auto compute_tight = [&](const RatVec& ray) {
        TightSet t(words, 0);
        for (int i = 0; i < q; ++i)
            if (processed[i] && dot(rows[i], ray) == 0) t[i / 64] |= std::uint64_t(1) << (i % 64);
        return t;
    };
    std::vector<TightSet> tight;
    for (const auto& r : rays) tight.push_back(compute_tight(r));

    for (int idx = 0; idx < q; ++idx) {
        if (processed[idx]) continue;
        const RatVec& h = rows[idx];
        std::vector<Rational> vals(rays.size());
        for (std::size_t r = 0; r < rays.size(); ++r) vals[r] = dot(h, rays[r]);

        std::vector<std::size_t> pos, zer, neg;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            if (vals[r] > 0)
                pos.push_back(r);
            else if (vals[r] == 0)
                zer.push_back(r);
            else
                neg.push_back(r);
        }
        processed[idx] = true;
        if (neg.empty()) {
            for (std::size_t r : zer) tight[r][idx / 64] |= std::uint64_t(1) << (idx % 64);
            continue;
        }

        std::vector<RatVec> next_rays;
        std::vector<TightSet> next_tight;
        for (std::size_t r : pos) {
            next_rays.push_back(rays[r]);
            next_tight.push_back(tight[r]);
        }
        for (std::size_t r : zer) {
            TightSet t = tight[r];
            t[idx / 64] |= std::uint64_t(1) << (idx % 64);
            next_rays.push_back(rays[r]);
            next_tight.push_back(std::move(t));
        }
        for (std::size_t p : pos) {
            for (std::size_t n : neg) {
                TightSet common(words);
                for (std::size_t w = 0; w < words; ++w) common[w] = tight[p][w] & tight[n][w];
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == p || r == n) continue;
                    if (tight_subset(common, tight[r])) adjacent = false;
                }
                if (!adjacent) continue;
                RatVec v(dim);
                for (int k = 0; k < dim; ++k) v[k] = vals[p] * rays[n][k] - vals[n] * rays[p][k];
                v = scale_primitive(v);
                next_rays.push_back(std::move(v));
                next_tight.push_back(compute_tight(next_rays.back()));
            }
        }
        rays = std::move(next_rays);
        tight = std::move(next_tight);
        if (static_cast<std::int64_t>(rays.size()) > budget.max_rays)
            throw budget_error("double description: ray budget exceeded");
    }
    return rays;
}

ConeGenerators dd_cone(const std::vector<RatVec>& ineq_rows, const std::vector<RatVec>& eq_rows,
                       int dim, const DdBudget& budget) {
    ConeGenerators out;
    if (dim == 0) return out;

    // Restrict to the equality subspace via a nullspace basis.
    std::vector<RatVec> basis;  // columns of the embedding R^s -> R^dim
    if (eq_rows.empty()) {
        for (int i = 0; i < dim; ++i) {
            RatVec e(dim, Rational(0));
            e[i] = 1;
            basis.push_back(std::move(e));
        }
    } else {
        basis = nullspace_basis(RationalMatrix::from_rows(eq_rows));
    }
    const int s = static_cast<int>(basis.size());
    if (s == 0) return out;

    std::vector<RatVec> proj_rows;
    proj_rows.reserve(ineq_rows.size());
    for (const auto& h : ineq_rows) {
        RatVec r(s);
        for (int t = 0; t < s; ++t) r[t] = dot(h, basis[t]);
        proj_rows.push_back(std::move(r));
    }

    // Split off the lineality of {t : proj_rows.t >= 0}.
    std::vector<RatVec> lin_t;
    if (proj_rows.empty()) {
        for (int i = 0; i < s; ++i) {
            RatVec e(s, Rational(0));
            e[i] = 1;
            lin_t.push_back(std::move(e));
        }
    } else {
        lin_t = nullspace_basis(RationalMatrix::from_rows(proj_rows));
    }
    for (const auto& l : lin_t) {
        RatVec z(dim, Rational(0));
        for (int t = 0; t < s; ++t)
            for (int k = 0; k < dim; ++k) z[k] += l[t] * basis[t][k];
        out.lineality.push_back(scale_primitive(z, true));
    }

    // Complement coordinates: non-pivot columns of the lineality's rref span
    // a complement, so the cone restricted there is pointed.
    std::vector<int> comp_cols;
    {
        std::vector<bool> is_pivot(s, false);
        if (!lin_t.empty()) {
            RrefResult lr = rref(RationalMatrix::from_rows(lin_t));
            for (int c : lr.pivot_cols) is_pivot[c] = true;
        }
        for (int t = 0; t < s; ++t)
            if (!is_pivot[t]) comp_cols.push_back(t);
    }
    const int p = static_cast<int>(comp_cols.size());
    if (p == 0 || proj_rows.empty()) return out;

    std::vector<RatVec> pointed_rows;
    pointed_rows.reserve(proj_rows.size());
    for (const auto& r : proj_rows) {
        RatVec w(p);
        for (int k = 0; k < p; ++k) w[k] = r[comp_cols[k]];
        pointed_rows.push_back(std::move(w));
    }

    for (const auto& w : pointed_dd(pointed_rows, p, budget)) {
        RatVec z(dim, Rational(0));
        for (int k = 0; k < p; ++k)
            for (int c = 0; c < dim; ++c) z[c] += w[k] * basis[comp_cols[k]][c];
        out.rays.push_back(scale_primitive(z));
    }
    return out;
}

// Canonical representative of a ray modulo the span of the lineality rows.
RatVec reduce_mod_span(RatVec v, const std::vector<RatVec>& span_rows) {
    if (span_rows.empty()) return v;
    RrefResult r = rref(RationalMatrix::from_rows(span_rows));
    for (int k = 0; k < r.rank; ++k) {
        int c = r.pivot_cols[k];
        if (v[c] == 0) continue;
        Rational f = v[c];
        for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * r.reduced.at(k, j);
    }
    return v;
}

bool ratvec_less(const RatVec& a, const RatVec& b) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

}  // namespace

// ---------------------------------------------------------------------------
// Representation conversions
// ---------------------------------------------------------------------------

HRep hull_facets(const std::vector<RatVec>& points, const DdBudget& budget) {
    if (points.empty()) throw input_error("hull_facets: empty point list");
    const int d = static_cast<int>(points[0].size());
    std::vector<RatVec> rows;
    rows.reserve(points.size());
    for (const auto& v : points) {
        if (static_cast<int>(v.size()) != d) throw input_error("hull_facets: ragged points");
        RatVec r(d + 1);
        r[0] = 1;
        for (int j = 0; j < d; ++j) r[j + 1] = -v[j];
        rows.push_back(std::move(r));
    }
    ConeGenerators gen = dd_cone(rows, {}, d + 1, budget);

    HRep h;
    // A lineality vector z satisfies z.(1,-v) = 0 for all points, i.e. the
    // affine relation z'.x = z0 holds on all of P.
    for (const auto& l : gen.lineality) {
        RatVec z = scale_primitive(l, true);
        h.equalities.push_back({RatVec(z.begin() + 1, z.end()), z[0]});
    }
    for (const auto& ray : gen.rays) {
        // A genuine facet ray is tight at some input point; the ray class of
        // the trivial inequality 0 <= 1 is strictly slack everywhere and is
        // dropped (it only appears when the polytope has no facet at all).
        bool tight_somewhere = false;
        for (const auto& r : rows)
            if (dot(ray, r) == 0) {
                tight_somewhere = true;
                break;
            }
        if (!tight_somewhere) continue;
        // z = (delta, c) encodes c.x <= delta, valid since z.(1,-v) >= 0.
        RatVec z = scale_primitive(reduce_mod_span(ray, gen.lineality));
        h.facets.push_back({RatVec(z.begin() + 1, z.end()), z[0]});
    }
    std::sort(h.facets.begin(), h.facets.end(), [](const Inequality& a, const Inequality& b) {
        if (a.coeffs != b.coeffs) return ratvec_less(a.coeffs, b.coeffs);
        return a.rhs < b.rhs;
    });
    std::sort(h.equalities.begin(), h.equalities.end(), [](const Equality& a, const Equality& b) {
        if (a.coeffs != b.coeffs) return ratvec_less(a.coeffs, b.coeffs);
        return a.rhs < b.rhs;
    });
    return h;
}

std::vector<RatVec> vertices_from_hrep(const std::vector<Inequality>& ineqs,
                                       const std::vector<Equality>& eqs, const DdBudget& budget) {
    int d = -1;
    for (const auto& q : ineqs) d = std::max(d, static_cast<int>(q.coeffs.size()));
    for (const auto& q : eqs) d = std::max(d, static_cast<int>(q.coeffs.size()));
    if (d < 0) throw input_error("vertices_from_hrep: empty system");

    std::vector<RatVec> rows;
    for (const auto& q : ineqs) {
        RatVec r(d + 1);
        r[0] = q.rhs;
        for (int j = 0; j < d; ++j) r[j + 1] = -q.coeffs[j];
        rows.push_back(std::move(r));
    }
    {
        RatVec nonneg(d + 1, Rational(0));
        nonneg[0] = 1;
        rows.push_back(std::move(nonneg));
    }
    std::vector<RatVec> eq_rows;
    for (const auto& q : eqs) {
        RatVec r(d + 1);
        r[0] = q.rhs;
        for (int j = 0; j < d; ++j) r[j + 1] = -q.coeffs[j];
        eq_rows.push_back(std::move(r));
    }

    ConeGenerators gen = dd_cone(rows, eq_rows, d + 1, budget);
    if (!gen.lineality.empty())
        throw unbounded_error("vertices_from_hrep: system contains a line");
    std::vector<RatVec> verts;
    for (const auto& z : gen.rays) {
        if (z[0] == 0) {
            if (!is_zero_vec(z)) throw unbounded_error("vertices_from_hrep: recession ray found");
            continue;
        }
        RatVec x(d);
        for (int j = 0; j < d; ++j) x[j] = z[j + 1] / z[0];
        verts.push_back(std::move(x));
    }
    std::sort(verts.begin(), verts.end(), ratvec_less);
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    return verts;
}

Polytope with_hrep(const Polytope& p, const DdBudget& budget) {
    if (p.inequalities) return p;
    HRep h = hull_facets(p.vrep(), budget);
    Polytope q = p;
    q.inequalities = std::move(h.facets);
    q.equalities = std::move(h.equalities);
    return q;
}

Polytope with_vrep(const Polytope& p, const DdBudget& budget) {
    if (p.vertices) return p;
    Polytope q = p;
    q.vertices = vertices_from_hrep(p.hrep(), p.equalities.value_or(std::vector<Equality>{}), budget);
    return q;
}

bool validate_reps(const Polytope& p) {
    if (!p.vertices || !p.inequalities) return true;
    std::vector<RatVec> from_h =
        vertices_from_hrep(*p.inequalities, p.equalities.value_or(std::vector<Equality>{}));
    std::vector<RatVec> v = *p.vertices;
    std::sort(v.begin(), v.end(), ratvec_less);
    return v == from_h;
}

// ---------------------------------------------------------------------------
// Slack matrices
// ---------------------------------------------------------------------------

SlackMatrix slack_matrix(const std::vector<Inequality>& rows, const std::vector<RatVec>& cols,
                         const std::vector<std::string>& row_labels,
                         const std::vector<std::string>& col_labels) {
    SlackMatrix s;
    s.matrix = RationalMatrix(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (int i = 0; i < s.matrix.rows; ++i)
        for (int j = 0; j < s.matrix.cols; ++j) {
            Rational v = rows[i].slack_at(cols[j]);
            if (v < 0)
                throw validity_error("slack_matrix: point " + std::to_string(j) +
                                     " violates inequality " + std::to_string(i));
            s.matrix.at(i, j) = std::move(v);
        }
    s.row_labels = row_labels;
    s.col_labels = col_labels;
    if (s.row_labels.empty())
        for (int i = 0; i < s.matrix.rows; ++i) s.row_labels.push_back("f" + std::to_string(i));
    if (s.col_labels.empty())
        for (int j = 0; j < s.matrix.cols; ++j) s.col_labels.push_back("v" + std::to_string(j));
    return s;
}

SlackMatrix slack_matrix(const Polytope& p) {
    Polytope q = with_hrep(with_vrep(p));
    return slack_matrix(q.hrep(), q.vrep());
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

int cut_edge_index(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n || i == j) throw input_error("cut_edge_index: bad pair");
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

int cor_coord_index(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n) throw input_error("cor_coord_index: bad pair");
    return i * n - i * (i - 1) / 2 + (j - i);
}

Polytope cut_polytope(int n) {
    if (n < 2) throw input_error("cut_polytope: need n >= 2");
    if (n > 16) throw input_error("cut_polytope: n too large for desk scale");
    const int d = n * (n - 1) / 2;
    Polytope p;
    p.dim = d;
    std::vector<RatVec> verts;
    // delta(X) = delta(complement of X): fix vertex 0 outside X.
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << (n - 1)); ++mask) {
        auto in_x = [&](int v) { return v > 0 && (mask >> (v - 1) & 1); };
        RatVec x(d, Rational(0));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (in_x(i) != in_x(j)) x[cut_edge_index(n, i, j)] = 1;
        verts.push_back(std::move(x));
    }
    std::sort(verts.begin(), verts.end(), ratvec_less);
    p.vertices = std::move(verts);
    return p;
}

Polytope correlation_polytope(int n) {
    if (n < 1) throw input_error("correlation_polytope: need n >= 1");
    if (n > 16) throw input_error("correlation_polytope: n too large for desk scale");
    const int d = n * (n + 1) / 2;
    Polytope p;
    p.dim = d;
    std::vector<RatVec> verts;
    // Lexicographic order over bit strings b (leftmost bit = b_0).
    for (std::uint64_t k = 0; k < (std::uint64_t(1) << n); ++k) {
        RatVec y(d, Rational(0));
        auto bit = [&](int i) { return static_cast<int>(k >> (n - 1 - i) & 1); };
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) y[cor_coord_index(n, i, j)] = bit(i) * bit(j);
        verts.push_back(std::move(y));
    }
    p.vertices = std::move(verts);
    return p;
}

Polytope stable_set_polytope(const Graph& g) {
    const int d = g.vertex_count();
    Polytope p;
    p.dim = d;
    std::vector<RatVec> verts;
    for (const auto& s : all_stable_sets(g)) {
        RatVec x(d, Rational(0));
        for (int v : s) x[v] = 1;
        verts.push_back(std::move(x));
    }
    std::sort(verts.begin(), verts.end(), ratvec_less);
    p.vertices = std::move(verts);
    return p;
}

Polytope gen_polytope(PolytopeKind kind, int n) {
    switch (kind) {
        case PolytopeKind::Cut:
            return cut_polytope(n);
        case PolytopeKind::Cor:
            return correlation_polytope(n);
        case PolytopeKind::Stab: {
            // Complete graph on n vertices as the default parametrized family.
            Graph g;
            for (int i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i + 1));
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
            return stable_set_polytope(g);
        }
    }
    throw input_error("gen_polytope: unknown kind");
}

std::pair<LinearMap, LinearMap> covariance_iso(int n) {
    if (n < 1) throw input_error("covariance_iso: need n >= 1");
    const int cut_dim = (n + 1) * n / 2;
    const int cor_dim = n * (n + 1) / 2;

    LinearMap fwd;  // CUT(n+1) -> COR(n)
    fwd.matrix = RationalMatrix(cor_dim, cut_dim);
    for (int i = 0; i < n; ++i) {
        fwd.matrix.at(cor_coord_index(n, i, i), cut_edge_index(n + 1, i, n)) = 1;
        for (int j = i + 1; j < n; ++j) {
            int row = cor_coord_index(n, i, j);
            fwd.matrix.at(row, cut_edge_index(n + 1, i, n)) = Rational(1, 2);
            fwd.matrix.at(row, cut_edge_index(n + 1, j, n)) = Rational(1, 2);
            fwd.matrix.at(row, cut_edge_index(n + 1, i, j)) = Rational(-1, 2);
        }
    }

    LinearMap inv;  // COR(n) -> CUT(n+1)
    inv.matrix = RationalMatrix(cut_dim, cor_dim);
    for (int i = 0; i < n; ++i) {
        inv.matrix.at(cut_edge_index(n + 1, i, n), cor_coord_index(n, i, i)) = 1;
        for (int j = i + 1; j < n; ++j) {
            int row = cut_edge_index(n + 1, i, j);
            inv.matrix.at(row, cor_coord_index(n, i, i)) = 1;
            inv.matrix.at(row, cor_coord_index(n, j, j)) = 1;
            inv.matrix.at(row, cor_coord_index(n, i, j)) = -2;
        }
    }

    if (n <= 4) {
        // Enumeration check: the map must carry the cut vertex set bijectively
        // onto the correlation vertex set, and the inverse must undo it.
        auto cut_verts = cut_polytope(n + 1).vrep();
        auto cor_verts = correlation_polytope(n).vrep();
        std::set<RatVec> cor_set(cor_verts.begin(), cor_verts.end());
        std::set<RatVec> seen;
        for (const auto& v : cut_verts) {
            RatVec y = fwd.apply(v);
            if (!cor_set.count(y) || seen.count(y))
                throw std::logic_error("covariance_iso: vertex bijection check failed");
            if (inv.apply(y) != v)
                throw std::logic_error("covariance_iso: inverse check failed");
            seen.insert(std::move(y));
        }
        if (seen.size() != cor_set.size())
            throw std::logic_error("covariance_iso: image does not cover all vertices");
    }
    return {fwd, inv};
}

Polytope face_of(const Polytope& p, const Inequality& ineq) {
    Polytope q = with_vrep(p);
    if (static_cast<int>(ineq.coeffs.size()) != q.dim)
        throw input_error("face_of: inequality dimension mismatch");
    std::vector<RatVec> tight;
    for (const auto& v : q.vrep()) {
        Rational s = ineq.slack_at(v);
        if (s < 0) throw validity_error("face_of: inequality is not valid for the polytope");
        if (s == 0) tight.push_back(v);
    }
    if (tight.empty()) return q;  // slack everywhere: no proper face is cut out
    Polytope f;
    f.dim = q.dim;
    f.vertices = std::move(tight);
    return f;
}

std::vector<RatVec> irredundant_hull(const std::vector<RatVec>& points) {
    std::vector<RatVec> pts = points;
    std::sort(pts.begin(), pts.end(), ratvec_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 1) return pts;
    const int d = static_cast<int>(pts[0].size());

    std::vector<RatVec> keep;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        // pts[i] is redundant iff it is a convex combination of the others.
        const int m = static_cast<int>(pts.size()) - 1;
        LpProblem lp;
        lp.ineq_lhs = RationalMatrix(m, m);
        for (int k = 0; k < m; ++k) lp.ineq_lhs.at(k, k) = -1;
        lp.ineq_rhs.assign(m, Rational(0));
        lp.eq_lhs = RationalMatrix(d + 1, m);
        lp.eq_rhs.resize(d + 1);
        int col = 0;
        for (std::size_t k = 0; k < pts.size(); ++k) {
            if (k == i) continue;
            for (int r = 0; r < d; ++r) lp.eq_lhs.at(r, col) = pts[k][r];
            lp.eq_lhs.at(d, col) = 1;
            ++col;
        }
        for (int r = 0; r < d; ++r) lp.eq_rhs[r] = pts[i][r];
        lp.eq_rhs[d] = 1;
        lp.objective.assign(m, Rational(0));
        if (lp_solve(lp).status != LpStatus::Optimal) keep.push_back(pts[i]);
    }
    return keep;
}

Polytope linear_image(const Polytope& p, const LinearMap& map) {
    Polytope q = with_vrep(p);
    if (map.matrix.cols != q.dim) throw input_error("linear_image: map domain mismatch");
    std::vector<RatVec> images;
    images.reserve(q.vrep().size());
    for (const auto& v : q.vrep()) images.push_back(map.apply(v));
    Polytope out;
    out.dim = map.matrix.rows;
    out.vertices = irredundant_hull(images);
    return out;
}

std::string inequality_str(const Inequality& ineq, const std::vector<std::string>& var_names) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = 0; j < ineq.coeffs.size(); ++j) {
        const Rational& c = ineq.coeffs[j];
        if (c == 0) continue;
        std::string name =
            j < var_names.size() ? var_names[j] : "x" + std::to_string(j + 1);
        Rational a = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (a != 1) os << rat_str(a) << " ";
        os << name;
    }
    if (first) os << "0";
    os << " <= " << rat_str(ineq.rhs);
    return os.str();
}

void to_json(nlohmann::json& j, const Polytope& p) {
    j = nlohmann::json{{"dim", p.dim}};
    if (p.vertices) {
        nlohmann::json vs = nlohmann::json::array();
        for (const auto& v : *p.vertices) vs.push_back(ratvec_to_json(v));
        j["vertices"] = std::move(vs);
    }
    if (p.inequalities) {
        nlohmann::json ineqs = nlohmann::json::array();
        for (const auto& q : *p.inequalities)
            ineqs.push_back({{"coeffs", ratvec_to_json(q.coeffs)}, {"rhs", rat_str(q.rhs)}});
        j["inequalities"] = std::move(ineqs);
    }
    if (p.equalities) {
        nlohmann::json eqs = nlohmann::json::array();
        for (const auto& q : *p.equalities)
            eqs.push_back({{"coeffs", ratvec_to_json(q.coeffs)}, {"rhs", rat_str(q.rhs)}});
        j["equalities"] = std::move(eqs);
    }
}

void from_json(const nlohmann::json& j, Polytope& p) {
    p = Polytope{};
    p.dim = j.at("dim").get<int>();
    if (j.contains("vertices")) {
        std::vector<RatVec> vs;
        for (const auto& v : j.at("vertices")) vs.push_back(ratvec_from_json(v));
        p.vertices = std::move(vs);
    }
    if (j.contains("inequalities")) {
        std::vector<Inequality> qs;
        for (const auto& q : j.at("inequalities"))
            qs.push_back({ratvec_from_json(q.at("coeffs")),
                          rat_parse(q.at("rhs").get<std::string>())});
        p.inequalities = std::move(qs);
    }
    if (j.contains("equalities")) {
        std::vector<Equality> qs;
        for (const auto& q : j.at("equalities"))
            qs.push_back({ratvec_from_json(q.at("coeffs")),
                          rat_parse(q.at("rhs").get<std::string>())});
        p.equalities = std::move(qs);
    }
}

}  // namespace xc
