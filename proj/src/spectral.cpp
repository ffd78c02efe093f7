#include "gapforge/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gapforge {

int Spectrum::cluster_size(int id) const {
    return static_cast<int>(std::count(cluster_id.begin(), cluster_id.end(), id));
}

Spectrum eigen_sym(const Eigen::MatrixXd& S, double cluster_tol) {
    if (S.rows() != S.cols())
        throw Error(errc::validation, "eigen_sym: matrix is not square");
    const double asym = (S - S.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10)
        throw Error(errc::validation,
                    "eigen_sym: input asymmetric by " + std::to_string(asym));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(S, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw Error(errc::numerical,
                    "eigen_sym: eigensolver failed to converge on a " +
                        std::to_string(S.rows()) + "x" + std::to_string(S.cols()) + " matrix");

    Spectrum spec;
    spec.cluster_tol = cluster_tol;
    const auto& raw = solver.eigenvalues();  // ascending
    spec.eigenvalues.assign(raw.data(), raw.data() + raw.size());
    std::reverse(spec.eigenvalues.begin(), spec.eigenvalues.end());

    spec.cluster_id.resize(spec.eigenvalues.size());
    int id = 0;
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
        if (i > 0 && spec.eigenvalues[i - 1] - spec.eigenvalues[i] >= cluster_tol) ++id;
        spec.cluster_id[i] = id;
    }
    return spec;
}

GapReport gap_report(const ParamVector& p, const PermTable& table, double cluster_tol) {
    const TransitionMatrix K = build_transition(p, table);
    const StationaryDistribution pi = stationary(p, table);
    const Eigen::MatrixXd S = symmetrized(K, pi);

    GapReport report;
    report.spectrum = eigen_sym(S, cluster_tol);
    const auto& eig = report.spectrum.eigenvalues;

    if (std::abs(eig[0] - 1.0) > 1e-10)
        throw Error(errc::numerical,
                    "top eigenvalue " + std::to_string(eig[0]) + " is not 1");
    if (eig.size() > 1 && report.spectrum.cluster_id[1] == report.spectrum.cluster_id[0])
        throw Error(errc::numerical,
                    "second eigenvalue clusters with 1; chain looks reducible");

    report.beta = eig.size() > 1 ? eig[1] : 0.0;
    report.lambda = 1.0 - report.beta;
    report.beta_multiplicity =
        eig.size() > 1 ? report.spectrum.cluster_size(report.spectrum.cluster_id[1]) : 0;
    report.inverse_gap = 1.0 / report.lambda;
    return report;
}

double unweighted_gap(int n) {
    if (n < 2) throw Error(errc::invalid_argument, "unweighted_gap requires n >= 2");
    return (1.0 - std::cos(std::numbers::pi / n)) / static_cast<double>(n - 1);
}

double n3_gap_closed(const ParamVector& p) {
    if (p.n() != 3)
        throw Error(errc::invalid_argument,
                    "n3_gap_closed requires n=3, got n=" + std::to_string(p.n()));
    const double term = p(1, 2) * p(2, 3) * p(3, 1) + p(3, 2) * p(2, 1) * p(1, 3);
    return 0.5 * (1.0 - std::sqrt(term));
}

double kth_largest(const Spectrum& spectrum, std::size_t k) {
    if (k < 1 || k > spectrum.size())
        throw Error(errc::invalid_argument,
                    "k=" + std::to_string(k) + " outside 1.." + std::to_string(spectrum.size()));
    return spectrum.eigenvalues[k - 1];
}

double pairing_defect(const Spectrum& spectrum) {
    const std::size_t N = spectrum.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        worst = std::max(worst,
                         std::abs(spectrum.eigenvalues[i] + spectrum.eigenvalues[N - 1 - i] - 1.0));
    return worst;
}

SimilarityCertificate similarity_certificate(const ParamVector& p, const PermTable& table) {
    const TransitionMatrix Kmat = build_transition(p, table);
    const StationaryDistribution pi = stationary(p, table);
    const auto& K = Kmat.entries;
    const auto N = K.rows();

    // C has one nonzero per row: C[x, rev(x)] = sign(x) * pi(rev(x)).
    Eigen::VectorXd c(N);
    std::vector<Eigen::Index> rev(static_cast<std::size_t>(N));
    for (Eigen::Index x = 0; x < N; ++x) {
        const auto rx = static_cast<Eigen::Index>(table.reverse_rank(static_cast<std::size_t>(x)));
        rev[static_cast<std::size_t>(x)] = rx;
        c[x] = static_cast<double>(table.sign(static_cast<std::size_t>(x))) * pi.probs[rx];
    }

    // R[x,y] = ((I-K)C)[x,y] - (CK)[x,y]
    //        = (I-K)[x, rev(y)] * c[rev(y)] - c[x] * K[rev(x), y]
    double frob2 = 0.0;
    for (Eigen::Index x = 0; x < N; ++x) {
        const auto rx = rev[static_cast<std::size_t>(x)];
        for (Eigen::Index y = 0; y < N; ++y) {
            const auto ry = rev[static_cast<std::size_t>(y)];
            const double ik = (x == ry ? 1.0 : 0.0) - K(x, ry);
            const double r = ik * c[ry] - c[x] * K(rx, y);
            frob2 += r * r;
        }
    }

    SimilarityCertificate cert;
    cert.residual = std::sqrt(frob2) / c.norm();
    cert.c_description = "C[x,y] = sign(x) * pi(reverse(x)) * [y == reverse(x)]";
    cert.passed = cert.residual <= 1e-8;
    cert.trace_defect = K.trace() - static_cast<double>(N) / 2.0;
    return cert;
}

}  // namespace gapforge
