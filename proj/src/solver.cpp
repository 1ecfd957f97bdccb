#include "tlcr/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "tlcr/error.hpp"

namespace tlcr {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::vector<double> solve_locality_system(std::span<const double> test_feature, std::span<const double> candidates,
                                          std::span<const double> distances, double tau, double ridge_eps) {
    const auto k = static_cast<Eigen::Index>(distances.size());
    const auto dim = static_cast<Eigen::Index>(test_feature.size());
    if (k < 1) {
        throw InvalidInput("solve_weights: no candidates");
    }
    if (dim < 1 || candidates.size() != static_cast<std::size_t>(k * dim)) {
        throw InvalidInput("solve_weights: candidate matrix must be " + std::to_string(k) + " x " +
                           std::to_string(dim));
    }
    if (tau < 0.0 || ridge_eps < 0.0) {
        throw InvalidInput("solve_weights: tau and ridge_eps must be non-negative");
    }

    const Eigen::Map<const RowMatrix> atoms(candidates.data(), k, dim);
    const Eigen::Map<const Eigen::VectorXd> x(test_feature.data(), dim);

    // Columns of G are x - y_k.
    Eigen::MatrixXd g = (-atoms).transpose();
    g.colwise() += x;

    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(k, k);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(g.transpose());

    const double trace = gram.diagonal().sum();
    double ridge = ridge_eps * trace / static_cast<double>(k);
    if (ridge == 0.0) {
        ridge = ridge_eps;
    }
    for (Eigen::Index i = 0; i < k; ++i) {
        gram(i, i) += tau * distances[i] * distances[i] + ridge;
    }

    Eigen::LDLT<Eigen::MatrixXd, Eigen::Lower> ldlt(gram);
    if (ldlt.info() != Eigen::Success) {
        throw DegenerateSolution("locality system factorisation failed");
    }
    Eigen::VectorXd u = ldlt.solve(Eigen::VectorXd::Ones(k));
    if (ldlt.info() != Eigen::Success || !u.allFinite()) {
        throw DegenerateSolution("locality system solve failed");
    }

    // Iterative refinement with the residual 1 - (G^T G + diag) u evaluated
    // through G in extended precision. Rounding in the explicitly formed Gram
    // matrix otherwise costs about seven digits when tau = 0 and K > dim.
    std::vector<long double> gu(static_cast<std::size_t>(dim));
    Eigen::VectorXd residual(k);
    for (int step = 0; step < 2; ++step) {
        std::fill(gu.begin(), gu.end(), 0.0L);
        for (Eigen::Index j = 0; j < k; ++j) {
            const long double uj = u[j];
            for (Eigen::Index t = 0; t < dim; ++t) {
                gu[t] += (static_cast<long double>(x[t]) - atoms(j, t)) * uj;
            }
        }
        for (Eigen::Index j = 0; j < k; ++j) {
            long double au = (static_cast<long double>(tau) * distances[j] * distances[j] + ridge) * u[j];
            for (Eigen::Index t = 0; t < dim; ++t) {
                au += (static_cast<long double>(x[t]) - atoms(j, t)) * gu[t];
            }
            residual[j] = static_cast<double>(1.0L - au);
        }
        const Eigen::VectorXd correction = ldlt.solve(residual);
        if (!correction.allFinite()) {
            throw DegenerateSolution("locality system solve failed");
        }
        u += correction;
    }
    const double total = u.sum();
    if (!(std::abs(total) >= 1e-12)) {
        throw DegenerateSolution("locality solution sums to ~0; cannot rescale to one");
    }
    std::vector<double> w(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) {
        w[i] = u[i] / total;
    }
    return w;
}

} // namespace

std::vector<int> select_knn(std::span<const double> distances, int k) {
    if (distances.empty()) {
        throw InvalidInput("select_knn: empty distance list");
    }
    if (k < 1) {
        throw InvalidInput("select_knn: k must be >= 1");
    }
    for (double d : distances) {
        if (std::isnan(d)) {
            throw InvalidInput("select_knn: NaN distance");
        }
    }
    const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(k), distances.size());
    std::vector<int> order(distances.size());
    std::iota(order.begin(), order.end(), 0);
    const auto closer = [&](int a, int b) {
        return distances[a] < distances[b] || (distances[a] == distances[b] && a < b);
    };
    if (keep < order.size()) {
        std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(), closer);
    }
    order.resize(keep);
    std::sort(order.begin(), order.end(), closer);
    return order;
}

std::vector<double> solve_weights(std::span<const double> test_feature, std::span<const double> candidates,
                                  std::span<const double> distances, const SolverConfig& cfg) {
    return solve_locality_system(test_feature, candidates, distances, cfg.tau, cfg.ridge_eps);
}

std::vector<double> solve_weights_full(std::span<const double> test_feature, std::span<const double> candidates,
                                       std::span<const double> distances, double tau, double ridge_eps) {
    return solve_locality_system(test_feature, candidates, distances, tau, ridge_eps);
}

std::vector<double> predict_hr_patch(std::span<const double> coefficients, std::span<const double> patches,
                                     std::size_t patch_area) {
    if (patches.size() != coefficients.size() * patch_area) {
        throw InvalidInput("predict_hr_patch: weights and patches are not aligned");
    }
    std::vector<double> out(patch_area, 0.0);
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
        const double w = coefficients[k];
        const double* patch = patches.data() + k * patch_area;
        for (std::size_t i = 0; i < patch_area; ++i) {
            out[i] += w * patch[i];
        }
    }
    return out;
}

ContributionRatio contribution_ratio(std::span<const double> weights, std::span<const int> position_indices, int t) {
    if (t < 1) {
        throw InvalidInput("contribution_ratio: T must be >= 1");
    }
    if (weights.empty()) {
        throw InvalidInput("contribution_ratio: no weights");
    }
    const std::size_t top = std::min<std::size_t>(static_cast<std::size_t>(t), weights.size());
    std::vector<int> order(weights.size());
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(top), order.end(),
                      [&](int a, int b) {
                          const double wa = std::abs(weights[a]);
                          const double wb = std::abs(weights[b]);
                          return wa > wb || (wa == wb && a < b);
                      });
    std::vector<int> positions(position_indices.begin(), position_indices.end());
    std::sort(positions.begin(), positions.end());
    std::size_t hits = 0;
    for (std::size_t i = 0; i < top; ++i) {
        if (std::binary_search(positions.begin(), positions.end(), order[i])) {
            ++hits;
        }
    }
    ContributionRatio r;
    r.crpp = static_cast<double>(hits) / static_cast<double>(top);
    r.crcp = 1.0 - r.crpp;
    return r;
}

Representation represent(std::span<const double> test_feature, const ContextCandidateSet& candidates,
                         const SolverConfig& cfg) {
    Representation rep;
    const std::size_t n = candidates.size();
    rep.k_clamped = static_cast<std::size_t>(cfg.k) > n;
    rep.weights.indices = select_knn(candidates.distances(), cfg.k);
    const std::size_t k = rep.weights.indices.size();
    const std::size_t dim = static_cast<std::size_t>(candidates.feature_dim());

    std::vector<double> atoms(k * dim);
    std::vector<double> dist(k);
    for (std::size_t i = 0; i < k; ++i) {
        const int idx = rep.weights.indices[i];
        const auto row = candidates.feature(static_cast<std::size_t>(idx));
        std::copy(row.begin(), row.end(), atoms.begin() + static_cast<std::ptrdiff_t>(i * dim));
        dist[i] = candidates.distances()[idx];
    }
    try {
        rep.weights.coefficients = solve_weights(test_feature, atoms, dist, cfg);
    } catch (const DegenerateSolution&) {
        rep.fallback = true;
        rep.weights.coefficients.assign(k, 1.0 / static_cast<double>(k));
    }
    return rep;
}

} // namespace tlcr
