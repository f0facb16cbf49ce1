#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "xc/factorization.hpp"

namespace xc {

// Floating-point side of the toolkit: protocols, sampling, SVD. Exactness
// claims live in the rational factorization module; here everything carries
// explicit tolerances.
constexpr double kPsdTol = 1e-9;

// Real symmetric PSD matrix of trace 1.
struct DensityMatrix {
    int dim = 0;
    Eigen::MatrixXd m;
};

struct PovmElement {
    double label = 0;  // nonnegative outcome value
    Eigen::MatrixXd op;
};

// PSD operators summing to the identity (within kPsdTol).
struct Povm {
    int dim = 0;
    std::vector<PovmElement> elements;
};

// Sender states indexed by row, receiver measurements indexed by column.
struct OneWayProtocol {
    int message_dim = 0;
    std::vector<DensityMatrix> states;
    std::vector<Povm> measurements;
};

// Validates symmetry, PSD-ness, traces, labels and POVM completeness within
// tolerance; throws numeric_error with a description otherwise. A POVM
// completeness deficiency below tolerance is repaired by appending a
// 0-labeled remainder element when that remainder is PSD.
void check_protocol(OneWayProtocol& p, double tol = kPsdTol);

// sum_theta theta * tr(E_theta rho_i).
double expected_output(const OneWayProtocol& p, int i, int j);

// One Born-rule draw; probabilities are clipped to [0, 1] after a 1e-12
// renormalization. Deterministic for a fixed seed.
double sample_output(const OneWayProtocol& p, int i, int j, std::uint64_t seed);

// Collapses each POVM to its expectation operator E^j = sum theta E_theta;
// the pair (rho_i, E^j) is a PSD factorization in floating point. When every
// entry rationalizes (denominators up to 1e6) to an exactly PSD factor, the
// exact factorization is attached.
struct ProtocolFactors {
    std::vector<Eigen::MatrixXd> states;
    std::vector<Eigen::MatrixXd> effects;
    std::optional<PsdFactorization> exact;
};
ProtocolFactors protocol_to_psd_factorization(const OneWayProtocol& p);

// States T_i / tau padded to trace 1 with one extra dimension; two-outcome
// POVMs scaled from the column factors. Computes the paired matrix in
// expectation. An all-zero factorization yields the all-zero protocol.
OneWayProtocol protocol_from_psd_factorization(const PsdFactorization& f);

// Pure-state protocol computing the entrywise square of n in expectation,
// with message dimension rank(n) + 1 and outcome set {0, Delta^2}.
OneWayProtocol protocol_from_entrywise_sqrt(const Eigen::MatrixXd& n);

// Thin dense SVD a = u * sigma * v with singular values descending; rank
// counts values above 1e-9 (relative to the largest).
struct SvdResult {
    Eigen::MatrixXd u;
    Eigen::MatrixXd sigma;
    Eigen::MatrixXd v;
    int rank = 0;
};
SvdResult svd_small(const Eigen::MatrixXd& a);

struct SampleStats {
    int i = 0;
    int j = 0;
    double mean = 0;
    double stderr_bound = 0;  // max outcome / sqrt(samples)
    double expected = 0;
};

std::vector<SampleStats> sampling_report(const OneWayProtocol& p, int samples,
                                         std::uint64_t seed);
std::string sampling_csv(const std::vector<SampleStats>& stats);

void to_json(nlohmann::json& j, const OneWayProtocol& p);
void from_json(const nlohmann::json& j, OneWayProtocol& p);

}  // namespace xc
