#pragma once

#include <span>
#include <vector>

#include "tlcr/patches.hpp"

namespace tlcr {

struct SolverConfig {
    /// Weight of the locality penalty tau * ||d .* w||^2.
    double tau = 0.04;
    /// Number of nearest candidates kept. Clamped to the candidate count.
    int k = 360;
    /// Relative diagonal stabiliser. The system receives
    /// ridge_eps * trace(G^T G) / K on its diagonal (ridge_eps itself when the
    /// trace is zero).
    double ridge_eps = 1e-8;
};

/// Sum-to-one coefficients over a subset of candidates.
struct RepresentationWeights {
    std::vector<int> indices;
    std::vector<double> coefficients;
};

/// Indices of the `k` smallest distances ordered by (distance, index). `k` is
/// clamped to `distances.size()`. Throws InvalidInput on an empty list, k < 1
/// or a NaN distance.
std::vector<int> select_knn(std::span<const double> distances, int k);

/// Closed-form locality-constrained weights.
///
/// `candidates` holds one feature row per atom (row-major, rows x dim). With
/// G = [x - y_1, ..., x - y_K] the routine solves
///     (G^T G + tau * diag(d)^2 + ridge * I) u = 1
/// and returns u / sum(u). Throws DegenerateSolution when the factorisation
/// fails, u is not finite, or |sum(u)| < 1e-12.
std::vector<double> solve_weights(std::span<const double> test_feature, std::span<const double> candidates,
                                  std::span<const double> distances, const SolverConfig& cfg);

/// Unthresholded variant over every candidate; identical algebra with K = N.
std::vector<double> solve_weights_full(std::span<const double> test_feature, std::span<const double> candidates,
                                       std::span<const double> distances, double tau, double ridge_eps = 1e-8);

/// sum_k coefficients[k] * patches[k], where `patches` is row-major
/// (coefficients.size() rows of `patch_area` reals).
std::vector<double> predict_hr_patch(std::span<const double> coefficients, std::span<const double> patches,
                                     std::size_t patch_area);

struct ContributionRatio {
    double crpp = 0.0;
    double crcp = 0.0;
};

/// Share of position patches among the T candidates with the largest
/// |coefficient| (ties by lower index). T is clamped to the candidate count.
ContributionRatio contribution_ratio(std::span<const double> weights, std::span<const int> position_indices, int t);

/// Result of representing one test feature over a candidate set.
struct Representation {
    RepresentationWeights weights;
    bool k_clamped = false;
    /// Uniform 1/K weights were substituted after a DegenerateSolution.
    bool fallback = false;
};

/// KNN selection followed by solve_weights, falling back to uniform weights
/// when the system is degenerate.
Representation represent(std::span<const double> test_feature, const ContextCandidateSet& candidates,
                         const SolverConfig& cfg);

} // namespace tlcr
