#include "gapforge/chain.hpp"

#include <algorithm>
#include <cmath>

namespace gapforge {

namespace {

void require_same_n(int pn, const PermTable& table, const char* who) {
    if (pn != table.n())
        throw Error(errc::dimension_mismatch,
                    std::string(who) + ": parameter n=" + std::to_string(pn) +
                        " does not match table n=" + std::to_string(table.n()));
}

// Normalizes a vector of unnormalized log-masses with a max shift.
StationaryDistribution from_log_masses(std::vector<double> log_mass) {
    const std::size_t N = log_mass.size();
    const double shift = *std::max_element(log_mass.begin(), log_mass.end());
    double total = 0.0;
    Eigen::VectorXd probs(static_cast<Eigen::Index>(N));
    for (std::size_t x = 0; x < N; ++x) {
        probs[static_cast<Eigen::Index>(x)] = std::exp(log_mass[x] - shift);
        total += probs[static_cast<Eigen::Index>(x)];
    }
    probs /= total;
    StationaryDistribution out;
    out.probs = std::move(probs);
    out.z = std::exp(shift) * total;
    out.log_domain = true;
    return out;
}

StationaryDistribution from_masses(std::vector<double> mass) {
    const std::size_t N = mass.size();
    double total = 0.0;
    for (double m : mass) total += m;
    Eigen::VectorXd probs(static_cast<Eigen::Index>(N));
    for (std::size_t x = 0; x < N; ++x) probs[static_cast<Eigen::Index>(x)] = mass[x] / total;
    StationaryDistribution out;
    out.probs = std::move(probs);
    out.z = total;
    out.log_domain = false;
    return out;
}

}  // namespace

const char* chain_kind_name(ChainKind k) {
    switch (k) {
        case ChainKind::weighted_adjacent: return "weighted-adjacent";
        case ChainKind::ma1_classic:       return "ma1-classic";
        case ChainKind::move_to_front:     return "move-to-front";
    }
    return "unknown";
}

TransitionMatrix build_transition(const ParamVector& p, const PermTable& table) {
    require_same_n(p.n(), table, "build_transition");
    const int n = table.n();
    const auto N = static_cast<Eigen::Index>(table.size());
    const double inv = 1.0 / static_cast<double>(n - 1);

    TransitionMatrix K;
    K.n = n;
    K.kind = ChainKind::weighted_adjacent;
    K.entries = Eigen::MatrixXd::Zero(N, N);

    for (std::size_t x = 0; x < table.size(); ++x) {
        const Permutation& perm = table.perm(x);
        double off_mass = 0.0;
        for (int r = 2; r <= n; ++r) {
            const auto y = table.rank_of(adjacent_swap(perm, r));
            // move happens with probability p(x_r, x_{r-1})
            const double q = p(perm[static_cast<std::size_t>(r - 1)],
                               perm[static_cast<std::size_t>(r - 2)]) * inv;
            K.entries(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = q;
            off_mass += q;
        }
        K.entries(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) = 1.0 - off_mass;
    }
    return K;
}

StationaryDistribution stationary(const ParamVector& p, const PermTable& table) {
    require_same_n(p.n(), table, "stationary");
    const int n = table.n();

    double min_p = 1.0;
    for (double v : p.values()) min_p = std::min({min_p, v, 1.0 - v});
    const bool use_log = (n >= 6) || (min_p < 0.01);

    if (use_log) {
        std::vector<double> log_mass(table.size());
        for (std::size_t x = 0; x < table.size(); ++x) {
            const Permutation& perm = table.perm(x);
            double acc = 0.0;
            for (int r = 0; r < n; ++r)
                for (int s = r + 1; s < n; ++s)
                    acc += std::log(p(perm[static_cast<std::size_t>(r)],
                                      perm[static_cast<std::size_t>(s)]));
            log_mass[x] = acc;
        }
        return from_log_masses(std::move(log_mass));
    }

    std::vector<double> mass(table.size());
    for (std::size_t x = 0; x < table.size(); ++x) {
        const Permutation& perm = table.perm(x);
        double acc = 1.0;
        for (int r = 0; r < n; ++r)
            for (int s = r + 1; s < n; ++s)
                acc *= p(perm[static_cast<std::size_t>(r)], perm[static_cast<std::size_t>(s)]);
        mass[x] = acc;
    }
    return from_masses(std::move(mass));
}

StationaryDistribution hendricks_stationary(const WeightVector& w, const PermTable& table) {
    require_same_n(w.n(), table, "hendricks_stationary");
    const int n = table.n();
    const auto wn = w.normalized();

    double wmin = wn[0], wmax = wn[0];
    for (double v : wn) { wmin = std::min(wmin, v); wmax = std::max(wmax, v); }
    const bool use_log = (n >= 6) || (wmin / wmax < 0.01);

    if (use_log) {
        std::vector<double> log_mass(table.size());
        for (std::size_t x = 0; x < table.size(); ++x) {
            const Permutation& perm = table.perm(x);
            double acc = 0.0;
            for (int i = 0; i < n; ++i)
                acc += static_cast<double>(n - 1 - i) *
                       std::log(wn[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)] - 1)]);
            log_mass[x] = acc;
        }
        return from_log_masses(std::move(log_mass));
    }

    std::vector<double> mass(table.size());
    for (std::size_t x = 0; x < table.size(); ++x) {
        const Permutation& perm = table.perm(x);
        double acc = 1.0;
        for (int i = 0; i < n; ++i) {
            const double wi = wn[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)] - 1)];
            for (int e = 0; e < n - 1 - i; ++e) acc *= wi;
        }
        mass[x] = acc;
    }
    return from_masses(std::move(mass));
}

Eigen::MatrixXd symmetrized(const TransitionMatrix& K, const StationaryDistribution& pi) {
    if (K.entries.rows() != pi.probs.size())
        throw Error(errc::dimension_mismatch, "symmetrized: matrix and distribution sizes differ");
    const double residual = detailed_balance_residual(K, pi);
    if (residual > 1e-10)
        throw Error(errc::not_reversible,
                    "not reversible: detailed-balance residual " + std::to_string(residual) +
                        " exceeds 1e-10");

    const auto N = K.entries.rows();
    Eigen::VectorXd sqrt_pi(N);
    for (Eigen::Index x = 0; x < N; ++x) sqrt_pi[x] = std::sqrt(pi.probs[x]);
    Eigen::MatrixXd S(N, N);
    for (Eigen::Index x = 0; x < N; ++x)
        for (Eigen::Index y = 0; y < N; ++y)
            S(x, y) = sqrt_pi[x] * K.entries(x, y) / sqrt_pi[y];
    return S;
}

TransitionMatrix build_ma1_transition(const WeightVector& w, const PermTable& table) {
    require_same_n(w.n(), table, "build_ma1_transition");
    const int n = table.n();
    const auto wn = w.normalized();
    const auto N = static_cast<Eigen::Index>(table.size());

    TransitionMatrix M;
    M.n = n;
    M.kind = ChainKind::ma1_classic;
    M.entries = Eigen::MatrixXd::Zero(N, N);

    for (std::size_t x = 0; x < table.size(); ++x) {
        const Permutation& perm = table.perm(x);
        // front record requested: order unchanged
        M.entries(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) =
            wn[static_cast<std::size_t>(perm[0] - 1)];
        for (int i = 2; i <= n; ++i) {
            const auto y = table.rank_of(adjacent_swap(perm, i));
            M.entries(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) =
                wn[static_cast<std::size_t>(perm[static_cast<std::size_t>(i - 1)] - 1)];
        }
    }
    return M;
}

MtfChain build_mtf_transition(const WeightVector& w, const PermTable& table) {
    require_same_n(w.n(), table, "build_mtf_transition");
    const int n = table.n();
    const auto wn = w.normalized();
    const auto N = static_cast<Eigen::Index>(table.size());

    MtfChain chain;
    chain.matrix.n = n;
    chain.matrix.kind = ChainKind::move_to_front;
    chain.matrix.entries = Eigen::MatrixXd::Zero(N, N);
    auto& M = chain.matrix.entries;

    for (std::size_t x = 0; x < table.size(); ++x) {
        const Permutation& perm = table.perm(x);
        M(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) =
            wn[static_cast<std::size_t>(perm[0] - 1)];
        for (int i = 2; i <= n; ++i) {
            Permutation moved;
            moved.reserve(perm.size());
            moved.push_back(perm[static_cast<std::size_t>(i - 1)]);
            for (int k = 1; k <= n; ++k)
                if (k != i) moved.push_back(perm[static_cast<std::size_t>(k - 1)]);
            const auto y = table.rank_of(moved);
            M(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) +=
                wn[static_cast<std::size_t>(perm[static_cast<std::size_t>(i - 1)] - 1)];
        }
    }

    // Left fixed vector: solve (M^T - I) pi = 0 with a normalization row.
    Eigen::MatrixXd A = M.transpose() - Eigen::MatrixXd::Identity(N, N);
    A.row(N - 1).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(N);
    b[N - 1] = 1.0;
    Eigen::VectorXd pi = A.partialPivLu().solve(b);

    // Polish with power steps if the solve left a residual.
    double res = (M.transpose() * pi - pi).lpNorm<1>();
    for (int iter = 0; iter < 50 && res > 1e-13; ++iter) {
        pi = M.transpose() * pi;
        pi /= pi.sum();
        res = (M.transpose() * pi - pi).lpNorm<1>();
    }
    if (res > 1e-12)
        throw Error(errc::numerical,
                    "MTF stationary solve stalled at residual " + std::to_string(res));

    chain.pi.probs = std::move(pi);
    chain.pi.z = 1.0;
    chain.pi.log_domain = false;
    return chain;
}

double detailed_balance_residual(const TransitionMatrix& K, const StationaryDistribution& pi) {
    const auto N = K.entries.rows();
    double worst = 0.0;
    for (Eigen::Index x = 0; x < N; ++x) {
        for (Eigen::Index y = x + 1; y < N; ++y) {
            const double fwd = pi.probs[x] * K.entries(x, y);
            const double bwd = pi.probs[y] * K.entries(y, x);
            const double scale = std::max(fwd, bwd);
            if (scale > 0.0) worst = std::max(worst, std::abs(fwd - bwd) / scale);
        }
    }
    return worst;
}

double stationarity_residual(const TransitionMatrix& K, const StationaryDistribution& pi) {
    return (K.entries.transpose() * pi.probs - pi.probs).lpNorm<1>();
}

}  // namespace gapforge
