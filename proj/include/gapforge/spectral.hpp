#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gapforge/chain.hpp"

namespace gapforge {

inline constexpr double kClusterTol = 1e-8;

struct Spectrum {
    std::vector<double> eigenvalues;  // sorted descending
    std::vector<int> cluster_id;      // per index, 0-based, nondecreasing
    double cluster_tol = kClusterTol;

    std::size_t size() const { return eigenvalues.size(); }
    int cluster_count() const { return eigenvalues.empty() ? 0 : cluster_id.back() + 1; }
    int cluster_size(int id) const;
};

struct GapReport {
    double lambda = 0.0;       // 1 - beta
    double beta = 0.0;         // second-largest eigenvalue
    int beta_multiplicity = 0;
    double inverse_gap = 0.0;  // 1/lambda
    Spectrum spectrum;
};

struct SimilarityCertificate {
    double residual = 0.0;  // ||(I-K)C - CK||_F / ||C||_F
    std::string c_description;
    bool passed = false;    // residual <= 1e-8
    double trace_defect = 0.0;  // trace(K) - N/2
};

// Full symmetric eigendecomposition (eigenvalues only), descending order,
// with greedy multiplicity clustering at cluster_tol.
Spectrum eigen_sym(const Eigen::MatrixXd& S, double cluster_tol = kClusterTol);

// Builds K, pi, S for p, eigendecomposes and reports the gap. Regularity is
// not required.
GapReport gap_report(const ParamVector& p, const PermTable& table,
                     double cluster_tol = kClusterTol);

// (1 - cos(pi/n)) / (n - 1), the closed-form gap of the unweighted chain.
double unweighted_gap(int n);

// Closed-form n=3 gap: (1 - sqrt(p12 p23 p31 + p32 p21 p13)) / 2.
double n3_gap_closed(const ParamVector& p);

// k-th entry of the descending eigenvalue list, 1-based, counting multiplicity.
double kth_largest(const Spectrum& spectrum, std::size_t k);

// max_i |lambda_i + lambda_{N+1-i} - 1|; zero when the spectrum pairs to 1.
double pairing_defect(const Spectrum& spectrum);

// Verifies the similarity of K and I-K through the conjugation
// C[x,y] = sign(x) * pi(reverse(x)) * [y == reverse(x)].
SimilarityCertificate similarity_certificate(const ParamVector& p, const PermTable& table);

}  // namespace gapforge
