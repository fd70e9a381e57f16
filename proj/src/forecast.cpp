#include "vare/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace vare {

SymmetricEigen jacobi_eigen(const Matrix& symmetric, double tolerance, int max_sweeps) {
    if (symmetric.rows() != symmetric.cols())
        throw std::invalid_argument("jacobi_eigen: matrix is not square");
    const Eigen::Index n = symmetric.rows();
    Matrix a = 0.5 * (symmetric + symmetric.transpose());
    Matrix v = Matrix::Identity(n, n);

    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off < tolerance) break;

        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t;
                if (std::abs(tau) > 1e150) {
                    t = 0.5 / tau;
                } else {
                    t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });

    SymmetricEigen out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    out.sweeps = sweep;
    for (Eigen::Index j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]);
        out.vectors.col(j) = v.col(order[j]);
    }
    return out;
}

PcaBasis fit_pca(std::span<const Vector> series, double variance_threshold) {
    if (series.size() < 2) throw std::invalid_argument("fit_pca: need at least two samples");
    if (!(variance_threshold > 0.0 && variance_threshold <= 1.0))
        throw std::invalid_argument("fit_pca: variance threshold must lie in (0, 1]");
    const Eigen::Index n = series.front().size();
    for (const auto& s : series)
        if (s.size() != n) throw std::invalid_argument("fit_pca: samples differ in dimension");

    // Mean accumulated as offsets from the first sample, so identical samples give a zero scatter.
    const Vector& origin = series.front();
    Vector offset = Vector::Zero(n);
    for (const auto& s : series) offset += s - origin;
    const Vector mean = origin + offset / static_cast<double>(series.size());

    Matrix scatter = Matrix::Zero(n, n);
    for (const auto& s : series) {
        const Vector d = s - mean;
        scatter.noalias() += d * d.transpose();
    }

    auto eig = jacobi_eigen(scatter);
    Vector spectrum = eig.values.cwiseMax(0.0);
    const double total = spectrum.sum();

    Eigen::Index k = 1;
    if (total > 0.0) {
        double cumulative = 0.0;
        for (k = 0; k < n;) {
            cumulative += spectrum[k++];
            if (cumulative >= variance_threshold * total * (1.0 - 1e-12)) break;
        }
    }

    PcaBasis basis;
    basis.mean = mean;
    basis.spectrum = spectrum;
    basis.eigenvalues = spectrum.head(k);
    basis.components = eig.vectors.leftCols(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        Eigen::Index arg = 0;
        basis.components.col(j).cwiseAbs().maxCoeff(&arg);
        if (basis.components(arg, j) < 0.0) basis.components.col(j) *= -1.0;
    }
    return basis;
}

Vector project(const PcaBasis& basis, const Vector& x) {
    if (x.size() != basis.mean.size()) throw std::invalid_argument("project: dimension mismatch");
    return basis.components.transpose() * (x - basis.mean);
}

Vector reconstruct(const PcaBasis& basis, const Vector& y) {
    if (y.size() != basis.components.cols())
        throw std::invalid_argument("reconstruct: dimension mismatch");
    return basis.components * y + basis.mean;
}

VarCoefficients fit_var(std::span<const Vector> series, int lag, double ridge) {
    if (lag < 1) throw std::invalid_argument("fit_var: lag must be at least 1");
    const auto T = static_cast<Eigen::Index>(series.size());
    if (T < lag + 2) throw std::invalid_argument("fit_var: series shorter than lag + 2");
    const Eigen::Index k = series.front().size();
    for (const auto& s : series)
        if (s.size() != k) throw std::invalid_argument("fit_var: samples differ in dimension");

    const Eigen::Index rows = T - lag;
    const Eigen::Index cols = 1 + k * lag;
    Matrix design(rows, cols);
    Matrix response(rows, k);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Eigen::Index t = r + lag;
        design(r, 0) = 1.0;
        for (int m = 1; m <= lag; ++m)
            design.block(r, 1 + (m - 1) * k, 1, k) = series[t - m].transpose();
        response.row(r) = series[t].transpose();
    }

    Matrix gram = design.transpose() * design;
    for (Eigen::Index j = 1; j < cols; ++j) gram(j, j) += ridge;
    const Matrix weights = gram.ldlt().solve(design.transpose() * response);

    VarCoefficients coeffs;
    coeffs.intercept = weights.row(0).transpose();
    for (int m = 1; m <= lag; ++m)
        coeffs.lags.push_back(weights.block(1 + (m - 1) * k, 0, k, k).transpose());
    if (!coeffs.intercept.allFinite()) throw std::runtime_error("fit_var: non-finite coefficients");
    return coeffs;
}

Vector forecast_one_step(const VarCoefficients& coeffs, std::span<const Vector> recent) {
    if (static_cast<int>(recent.size()) != coeffs.lag())
        throw std::invalid_argument("forecast_one_step: expected exactly lag recent vectors");
    Vector next = coeffs.intercept;
    for (std::size_t m = 0; m < recent.size(); ++m) {
        if (recent[m].size() != coeffs.dimension())
            throw std::invalid_argument("forecast_one_step: dimension mismatch");
        next.noalias() += coeffs.lags[m] * recent[m];
    }
    return next;
}

}  // namespace vare
