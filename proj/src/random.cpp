#include "gapforge/random.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace gapforge {

ParamVector random_param_vector(int n, Rng& rng, double lo, double hi) {
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (std::size_t k = 0; k < static_cast<std::size_t>(n) * (n - 1) / 2; ++k)
        values.push_back(rng.uniform(lo, hi));
    return ParamVector(n, std::move(values));
}

ParamVector random_regular_param_vector(int n, Rng& rng) {
    std::map<std::pair<int, int>, double> p;
    for (int width = 1; width < n; ++width) {
        for (int i = 1; i + width <= n; ++i) {
            const int j = i + width;
            const double lo =
                width == 1 ? 0.5 : std::max(p.at({i, j - 1}), p.at({i + 1, j}));
            const double hi = width == 1 ? 0.95 : 0.98;
            p[{i, j}] = rng.uniform(lo, hi);
        }
    }
    std::vector<double> values;
    for (auto [i, j] : pair_order(n)) values.push_back(p.at({i, j}));
    return ParamVector(n, std::move(values));
}

WeightVector random_nonincreasing_weights(int n, Rng& rng) {
    std::vector<double> w(static_cast<std::size_t>(n));
    for (double& v : w) v = rng.uniform(0.2, 1.0);
    std::sort(w.begin(), w.end(), std::greater<>());
    return WeightVector(std::move(w));
}

}  // namespace gapforge
