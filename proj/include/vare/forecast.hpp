#pragma once

#include "vare/core.hpp"

#include <span>
#include <vector>

namespace vare {

/// Eigen-decomposition of a symmetric matrix, eigenvalues in descending order.
struct SymmetricEigen {
    Vector values;
    Matrix vectors;  // column j pairs with values[j]
    int sweeps = 0;
};

/// Cyclic Jacobi rotations; stops once every off-diagonal magnitude is below `tolerance`.
SymmetricEigen jacobi_eigen(const Matrix& symmetric, double tolerance = 1e-12, int max_sweeps = 100);

/// Affine principal subspace of a set of decision vectors.
struct PcaBasis {
    Vector mean;
    Matrix components;   // n x k, orthonormal columns
    Vector eigenvalues;  // k retained, descending
    Vector spectrum;     // all n eigenvalues of the scatter matrix, descending

    [[nodiscard]] int rank() const { return static_cast<int>(components.cols()); }
    [[nodiscard]] int dimension() const { return static_cast<int>(mean.size()); }
};

constexpr double kDefaultVarianceThreshold = 0.80;

/// Scatter-matrix PCA keeping the smallest rank whose cumulative eigenvalue share reaches
/// `variance_threshold`. Components are sign-fixed so their largest-magnitude entry is positive.
PcaBasis fit_pca(std::span<const Vector> series, double variance_threshold = kDefaultVarianceThreshold);

Vector project(const PcaBasis& basis, const Vector& x);
Vector reconstruct(const PcaBasis& basis, const Vector& y);

/// x_t = intercept + sum_m lags[m-1] x_{t-m}
struct VarCoefficients {
    Vector intercept;
    std::vector<Matrix> lags;

    [[nodiscard]] int lag() const { return static_cast<int>(lags.size()); }
    [[nodiscard]] int dimension() const { return static_cast<int>(intercept.size()); }
};

constexpr double kDefaultRidge = 1e-6;

/// Ridge least squares over all regression rows of the series (oldest first). The intercept
/// is not penalized. Throws std::invalid_argument unless series.size() >= lag + 2.
VarCoefficients fit_var(std::span<const Vector> series, int lag, double ridge = kDefaultRidge);

/// `recent` holds exactly lag() vectors, newest first.
Vector forecast_one_step(const VarCoefficients& coeffs, std::span<const Vector> recent);

}  // namespace vare
