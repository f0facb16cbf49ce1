#include "xc/quantum.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace xc {

namespace {

void require(bool cond, const std::string& what) {
    if (!cond) throw numeric_error(what);
}

bool symmetric_within(const Eigen::MatrixXd& m, double tol) {
    return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol;
}

double min_eigenvalue(const Eigen::MatrixXd& sym) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double max_eigenvalue(const Eigen::MatrixXd& sym) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

Eigen::MatrixXd to_double(const RationalMatrix& m) {
    Eigen::MatrixXd out(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out(i, j) = static_cast<double>(m.at(i, j));
    return out;
}


}  // namespace

void check_protocol(OneWayProtocol& p, double tol) {
    const int r = p.message_dim;
    for (std::size_t i = 0; i < p.states.size(); ++i) {
        const auto& s = p.states[i];
        require(s.dim == r && s.m.rows() == r && s.m.cols() == r,
                "state " + std::to_string(i) + ": dimension mismatch");
        require(symmetric_within(s.m, tol), "state " + std::to_string(i) + ": not symmetric");
        require(min_eigenvalue(s.m) >= -tol, "state " + std::to_string(i) + ": not PSD");
        require(std::abs(s.m.trace() - 1.0) <= tol,
                "state " + std::to_string(i) + ": trace differs from 1");
    }
    for (std::size_t j = 0; j < p.measurements.size(); ++j) {
        auto& povm = p.measurements[j];
        require(povm.dim == r, "POVM " + std::to_string(j) + ": dimension mismatch");
        Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(r, r);
        for (const auto& e : povm.elements) {
            require(e.label >= 0, "POVM " + std::to_string(j) + ": negative outcome label");
            require(e.op.rows() == r && e.op.cols() == r,
                    "POVM " + std::to_string(j) + ": element size mismatch");
            require(symmetric_within(e.op, tol),
                    "POVM " + std::to_string(j) + ": element not symmetric");
            require(min_eigenvalue(e.op) >= -tol,
                    "POVM " + std::to_string(j) + ": element not PSD");
            sum += e.op;
        }
        Eigen::MatrixXd deficiency = Eigen::MatrixXd::Identity(r, r) - sum;
        double gap = deficiency.cwiseAbs().maxCoeff();
        if (gap > tol)
            throw numeric_error("POVM " + std::to_string(j) +
                                ": elements do not sum to the identity (gap " +
                                std::to_string(gap) + ")");
        if (gap > 0 && min_eigenvalue(deficiency) >= 0)
            povm.elements.push_back({0.0, deficiency});  // 0-labeled remainder
    }
}

double expected_output(const OneWayProtocol& p, int i, int j) {
    if (i < 0 || i >= static_cast<int>(p.states.size()) || j < 0 ||
        j >= static_cast<int>(p.measurements.size()))
        throw input_error("expected_output: index out of range");
    double acc = 0;
    for (const auto& e : p.measurements[j].elements)
        if (e.label != 0) acc += e.label * (e.op * p.states[i].m).trace();
    return acc;
}

double sample_output(const OneWayProtocol& p, int i, int j, std::uint64_t seed) {
    if (i < 0 || i >= static_cast<int>(p.states.size()) || j < 0 ||
        j >= static_cast<int>(p.measurements.size()))
        throw input_error("sample_output: index out of range");
    const auto& povm = p.measurements[j];
    std::vector<double> probs;
    probs.reserve(povm.elements.size());
    double total = 0;
    for (const auto& e : povm.elements) {
        double pr = (e.op * p.states[i].m).trace();
        probs.push_back(pr);
        total += pr;
    }
    if (std::abs(total - 1.0) > 1e-6)
        throw numeric_error("sample_output: outcome probabilities do not sum to 1");
    for (auto& pr : probs) {
        if (std::abs(total - 1.0) > 1e-12) pr /= total;
        pr = std::min(1.0, std::max(0.0, pr));
    }
    std::mt19937_64 rng(seed);
    double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    double cdf = 0;
    for (std::size_t t = 0; t < probs.size(); ++t) {
        cdf += probs[t];
        if (u < cdf) return povm.elements[t].label;
    }
    return povm.elements.back().label;
}

ProtocolFactors protocol_to_psd_factorization(const OneWayProtocol& p) {
    ProtocolFactors out;
    for (const auto& s : p.states) out.states.push_back(s.m);
    for (const auto& povm : p.measurements) {
        Eigen::MatrixXd e = Eigen::MatrixXd::Zero(p.message_dim, p.message_dim);
        for (const auto& el : povm.elements) e += el.label * el.op;
        out.effects.push_back(std::move(e));
    }

    // Optional exact lift: every entry must rationalize to a PSD factor.
    PsdFactorization exact;
    exact.r = p.message_dim;
    bool ok = true;
    auto lift = [&](const Eigen::MatrixXd& m) {
        RationalMatrix q(p.message_dim, p.message_dim);
        for (int i = 0; i < p.message_dim && ok; ++i)
            for (int j = i; j < p.message_dim; ++j) {
                Rational v = rationalize((m(i, j) + m(j, i)) / 2, 1'000'000);
                if (std::abs(static_cast<double>(v) - m(i, j)) > 1e-7) {
                    ok = false;
                    break;
                }
                q.at(i, j) = v;
                q.at(j, i) = v;
            }
        if (ok && !is_psd(q)) ok = false;
        return q;
    };
    for (const auto& s : out.states) {
        exact.row_factors.push_back(lift(s));
        if (!ok) break;
    }
    if (ok)
        for (const auto& e : out.effects) {
            exact.col_factors.push_back(lift(e));
            if (!ok) break;
        }
    if (ok) out.exact = std::move(exact);
    return out;
}

OneWayProtocol protocol_from_psd_factorization(const PsdFactorization& f) {
    const int r = f.r;
    OneWayProtocol p;
    p.message_dim = r + 1;

    Rational tau_exact = 0;
    for (const auto& t : f.row_factors) {
        Rational tr = 0;
        for (int k = 0; k < r; ++k) tr += t.at(k, k);
        if (tr > tau_exact) tau_exact = tr;
    }
    const double tau = static_cast<double>(tau_exact);

    for (const auto& t : f.row_factors) {
        DensityMatrix rho;
        rho.dim = r + 1;
        rho.m = Eigen::MatrixXd::Zero(r + 1, r + 1);
        if (tau_exact == 0) {
            // Zero matrix: park all weight on the slack dimension.
            rho.m(r, r) = 1.0;
        } else {
            Eigen::MatrixXd td = to_double(t);
            rho.m.topLeftCorner(r, r) = td / tau;
            rho.m(r, r) = 1.0 - td.trace() / tau;
        }
        p.states.push_back(std::move(rho));
    }

    for (const auto& u : f.col_factors) {
        Povm povm;
        povm.dim = r + 1;
        Eigen::MatrixXd ud = to_double(u);
        double lambda = u.is_zero() || tau_exact == 0 ? 0.0 : max_eigenvalue(ud);
        if (lambda <= 0) {
            povm.elements.push_back({0.0, Eigen::MatrixXd::Identity(r + 1, r + 1)});
        } else {
            lambda *= 1.0 + 1e-12;  // keep I - U/lambda PSD under roundoff
            Eigen::MatrixXd e = Eigen::MatrixXd::Zero(r + 1, r + 1);
            e.topLeftCorner(r, r) = ud / lambda;
            povm.elements.push_back({tau * lambda, e});
            povm.elements.push_back({0.0, Eigen::MatrixXd::Identity(r + 1, r + 1) - e});
        }
        p.measurements.push_back(std::move(povm));
    }
    check_protocol(p);
    return p;
}

OneWayProtocol protocol_from_entrywise_sqrt(const Eigen::MatrixXd& n) {
    if (n.size() == 0 || n.cwiseAbs().maxCoeff() == 0)
        throw input_error("protocol_from_entrywise_sqrt: zero matrix");
    const int mr = static_cast<int>(n.rows());
    const int mc = static_cast<int>(n.cols());

    SvdResult svd = svd_small(n.transpose());
    const int r = svd.rank;

    // phi_i = Sigma V e_i truncated to its r live coordinates; the receiver
    // vectors are rows of U restricted the same way.
    Eigen::MatrixXd sv = svd.sigma * svd.v;  // mc x mr
    std::vector<Eigen::VectorXd> phi(mr);
    double delta = 0;
    for (int i = 0; i < mr; ++i) {
        phi[i] = sv.col(i).head(r);
        delta = std::max(delta, phi[i].norm());
    }
    require(delta > 0, "protocol_from_entrywise_sqrt: degenerate SVD scale");

    OneWayProtocol p;
    p.message_dim = r + 1;
    for (int i = 0; i < mr; ++i) {
        Eigen::VectorXd psi(r + 1);
        psi.head(r) = phi[i] / delta;
        double rest = 1.0 - psi.head(r).squaredNorm();
        psi(r) = std::sqrt(std::max(0.0, rest));
        DensityMatrix rho;
        rho.dim = r + 1;
        rho.m = psi * psi.transpose();
        p.states.push_back(std::move(rho));
    }
    const double delta2 = delta * delta;
    for (int j = 0; j < mc; ++j) {
        Eigen::VectorXd w(r + 1);
        w.head(r) = svd.u.row(j).head(r).transpose();
        w(r) = 0;
        Povm povm;
        povm.dim = r + 1;
        Eigen::MatrixXd e = w * w.transpose();
        povm.elements.push_back({delta2, e});
        povm.elements.push_back({0.0, Eigen::MatrixXd::Identity(r + 1, r + 1) - e});
        p.measurements.push_back(std::move(povm));
    }
    check_protocol(p);
    return p;
}

SvdResult svd_small(const Eigen::MatrixXd& a) {
    if (a.rows() > 512 || a.cols() > 512) throw input_error("svd_small: dimensions above 512");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    SvdResult out;
    out.u = svd.matrixU();
    out.v = svd.matrixV().transpose();
    out.sigma = Eigen::MatrixXd::Zero(a.rows(), a.cols());
    const auto& vals = svd.singularValues();
    for (int k = 0; k < vals.size(); ++k) out.sigma(k, k) = vals(k);
    double top = vals.size() > 0 ? vals(0) : 0.0;
    out.rank = 0;
    for (int k = 0; k < vals.size(); ++k)
        if (vals(k) > 1e-9 * std::max(1.0, top)) ++out.rank;
    double err = (out.u * out.sigma * out.v - a).cwiseAbs().maxCoeff();
    require(err <= 1e-8 * std::max(1.0, a.cwiseAbs().maxCoeff()),
            "svd_small: reconstruction tolerance exceeded");
    return out;
}

std::vector<SampleStats> sampling_report(const OneWayProtocol& p, int samples,
                                         std::uint64_t seed) {
    if (samples < 1) throw input_error("sampling_report: need samples >= 1");
    std::vector<SampleStats> out;
    std::uint64_t counter = 0;
    for (int i = 0; i < static_cast<int>(p.states.size()); ++i)
        for (int j = 0; j < static_cast<int>(p.measurements.size()); ++j) {
            double sum = 0;
            double max_label = 0;
            for (const auto& e : p.measurements[j].elements)
                max_label = std::max(max_label, e.label);
            for (int t = 0; t < samples; ++t)
                sum += sample_output(p, i, j, seed + 0x9e3779b97f4a7c15ULL * ++counter);
            SampleStats s;
            s.i = i;
            s.j = j;
            s.mean = sum / samples;
            s.stderr_bound = max_label / std::sqrt(static_cast<double>(samples));
            s.expected = expected_output(p, i, j);
            out.push_back(s);
        }
    return out;
}

std::string sampling_csv(const std::vector<SampleStats>& stats) {
    std::ostringstream os;
    os << "i,j,mean,stderr,expected\n";
    os.precision(12);
    for (const auto& s : stats)
        os << s.i << "," << s.j << "," << s.mean << "," << s.stderr_bound << "," << s.expected
           << "\n";
    return os.str();
}

namespace {

nlohmann::json dense_to_json(const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd dense_from_json(const nlohmann::json& j) {
    const int r = static_cast<int>(j.size());
    const int c = r > 0 ? static_cast<int>(j[0].size()) : 0;
    Eigen::MatrixXd m(r, c);
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < c; ++k) m(i, k) = j[i][k].get<double>();
    return m;
}

}  // namespace

void to_json(nlohmann::json& j, const OneWayProtocol& p) {
    nlohmann::json states = nlohmann::json::array();
    for (const auto& s : p.states) states.push_back(dense_to_json(s.m));
    nlohmann::json povms = nlohmann::json::array();
    for (const auto& m : p.measurements) {
        nlohmann::json elems = nlohmann::json::array();
        for (const auto& e : m.elements)
            elems.push_back({{"label", e.label}, {"op", dense_to_json(e.op)}});
        povms.push_back(std::move(elems));
    }
    j = nlohmann::json{
        {"message_dim", p.message_dim}, {"states", std::move(states)}, {"povms", std::move(povms)}};
}

void from_json(const nlohmann::json& j, OneWayProtocol& p) {
    p = OneWayProtocol{};
    p.message_dim = j.at("message_dim").get<int>();
    for (const auto& s : j.at("states"))
        p.states.push_back({p.message_dim, dense_from_json(s)});
    for (const auto& m : j.at("povms")) {
        Povm povm;
        povm.dim = p.message_dim;
        for (const auto& e : m)
            povm.elements.push_back({e.at("label").get<double>(), dense_from_json(e.at("op"))});
        p.measurements.push_back(std::move(povm));
    }
}

}  // namespace xc
