#include "metriclust/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace metriclust::linalg {

namespace {

void require_square(const Matrix& m, const char* op) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument(std::string(op) + ": matrix must be square");
    }
}

// Returns false if a pivot falls to or below `floor`.
bool factor_lower(const Matrix& m, double floor, Matrix& lower) {
    const std::size_t n = m.rows();
    lower = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double diag = m(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= lower(j, k) * lower(j, k);
        if (!(diag > floor)) return false;
        const double ljj = std::sqrt(diag);
        lower(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = m(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= lower(i, k) * lower(j, k);
            lower(i, j) = s / ljj;
        }
    }
    return true;
}

void symmetrize(Matrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j) {
            const double avg = 0.5 * (m(i, j) + m(j, i));
            m(i, j) = avg;
            m(j, i) = avg;
        }
}

}  // namespace

Vector mean(const DataMatrix& points) {
    if (points.rows() == 0) throw data_error("empty point set");
    Vector mu(points.cols(), 0.0);
    for (std::size_t i = 0; i < points.rows(); ++i) {
        const auto row = points.row(i);
        for (std::size_t j = 0; j < mu.size(); ++j) mu[j] += row[j];
    }
    const double n = static_cast<double>(points.rows());
    for (double& v : mu) v /= n;
    return mu;
}

Matrix covariance(const DataMatrix& points) {
    if (points.rows() < 2) throw data_error("insufficient points for covariance");
    const Vector mu = mean(points);
    const std::size_t d = points.cols();
    Matrix cov(d, d);
    Vector centered(d);
    for (std::size_t i = 0; i < points.rows(); ++i) {
        const auto row = points.row(i);
        for (std::size_t j = 0; j < d; ++j) centered[j] = row[j] - mu[j];
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = a; b < d; ++b) cov(a, b) += centered[a] * centered[b];
    }
    const double denom = static_cast<double>(points.rows() - 1);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a; b < d; ++b) {
            cov(a, b) /= denom;
            cov(b, a) = cov(a, b);
        }
    return cov;
}

bool is_symmetric(const Matrix& m, double rel_tol) {
    if (m.rows() != m.cols()) return false;
    const double bound = rel_tol * max_abs(m);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (std::abs(m(i, j) - m(j, i)) > bound) return false;
    return true;
}

Matrix cholesky(const Matrix& m) {
    require_square(m, "cholesky");
    Matrix lower;
    if (!is_symmetric(m) || !factor_lower(m, 0.0, lower)) {
        throw numerical_error("matrix not positive definite");
    }
    return lower;
}

Matrix invert_spd(const Matrix& m, double rel_pivot_tol) {
    require_square(m, "invert_spd");
    const std::size_t n = m.rows();
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(m(i, i)));
    Matrix lower;
    if (n == 0 || !factor_lower(m, rel_pivot_tol * max_diag, lower)) {
        throw numerical_error("singular matrix");
    }

    // Invert the triangular factor by forward substitution, column by column.
    Matrix linv(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        linv(col, col) = 1.0 / lower(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            double s = 0.0;
            for (std::size_t k = col; k < i; ++k) s -= lower(i, k) * linv(k, col);
            linv(i, col) = s / lower(i, i);
        }
    }
    Matrix inv = linv.transposed() * linv;
    symmetrize(inv);
    return inv;
}

EigenDecomposition symmetric_eigen(const Matrix& m) {
    require_square(m, "symmetric_eigen");
    const std::size_t n = m.rows();
    Matrix a = m;
    symmetrize(a);
    Matrix v = Matrix::identity(n);

    constexpr int max_sweeps = 100;
    const double eps = std::numeric_limits<double>::epsilon();
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double sq = a(i, j) * a(i, j);
                total += sq;
                if (i != j) off += sq;
            }
        if (off == 0.0 || off <= eps * eps * total * 1e-4) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

    EigenDecomposition out{Vector(n), Matrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = order[k];
        out.values[k] = a(src, src);
        std::size_t pivot = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(v(i, src)) > std::abs(v(pivot, src))) pivot = i;
        const double sign = v(pivot, src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = sign * v(i, src);
    }
    return out;
}

double default_pinv_tolerance(std::size_t dim) {
    return static_cast<double>(std::max<std::size_t>(dim, 1)) *
           std::numeric_limits<double>::epsilon();
}

Matrix pseudo_inverse(const Matrix& m, double rel_tol) {
    require_square(m, "pseudo_inverse");
    if (!is_symmetric(m)) throw numerical_error("pseudo-inverse requires a symmetric matrix");
    const std::size_t n = m.rows();
    const auto eig = symmetric_eigen(m);
    double scale = 0.0;
    for (double l : eig.values) scale = std::max(scale, std::abs(l));
    const double cutoff = rel_tol * scale;

    Matrix pinv(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lambda = eig.values[k];
        if (!(std::abs(lambda) > cutoff)) continue;
        const double inv = 1.0 / lambda;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                pinv(i, j) += inv * eig.vectors(i, k) * eig.vectors(j, k);
    }
    symmetrize(pinv);
    return pinv;
}

Matrix pseudo_inverse(const Matrix& m) { return pseudo_inverse(m, default_pinv_tolerance(m.rows())); }

std::size_t numerical_rank(const Matrix& m, double rel_tol) {
    const auto eig = symmetric_eigen(m);
    double scale = 0.0;
    for (double l : eig.values) scale = std::max(scale, std::abs(l));
    std::size_t rank = 0;
    for (double l : eig.values)
        if (std::abs(l) > rel_tol * scale) ++rank;
    return rank;
}

}  // namespace metriclust::linalg
