#include <algorithm>
#include <cmath>

#include "metriclust/kernels.hpp"

namespace metriclust::kernels {

namespace {

void sq_euclidean_scalar(Columns pts, const double* center, double* out) {
    for (std::size_t i = 0; i < pts.n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < pts.d; ++j) {
            const double diff = pts.base[j * pts.stride + i] - center[j];
            acc += diff * diff;
        }
        out[i] = acc;
    }
}

void euclidean_scalar(Columns pts, const double* center, double* out) {
    sq_euclidean_scalar(pts, center, out);
    for (std::size_t i = 0; i < pts.n; ++i) out[i] = std::sqrt(out[i]);
}

void manhattan_scalar(Columns pts, const double* center, double* out) {
    for (std::size_t i = 0; i < pts.n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < pts.d; ++j) {
            acc += std::fabs(pts.base[j * pts.stride + i] - center[j]);
        }
        out[i] = acc;
    }
}

void chebyshev_scalar(Columns pts, const double* center, double* out) {
    for (std::size_t i = 0; i < pts.n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < pts.d; ++j) {
            acc = std::max(acc, std::fabs(pts.base[j * pts.stride + i] - center[j]));
        }
        out[i] = acc;
    }
}

void minkowski_scalar(Columns pts, const double* center, double p, double* out) {
    const double inv_p = 1.0 / p;
    for (std::size_t i = 0; i < pts.n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < pts.d; ++j) {
            acc += std::pow(std::fabs(pts.base[j * pts.stride + i] - center[j]), p);
        }
        out[i] = std::pow(acc, inv_p);
    }
}

void mahalanobis_sq_scalar(Columns pts, const double* center, const double* inv, double* out) {
    std::vector<double> diff(pts.d);
    for (std::size_t i = 0; i < pts.n; ++i) {
        for (std::size_t j = 0; j < pts.d; ++j) diff[j] = pts.base[j * pts.stride + i] - center[j];
        double acc = 0.0;
        for (std::size_t a = 0; a < pts.d; ++a) {
            double t = 0.0;
            for (std::size_t b = 0; b < pts.d; ++b) t += inv[a * pts.d + b] * diff[b];
            acc += diff[a] * t;
        }
        out[i] = acc;
    }
}

constexpr KernelTable kScalar{
    Isa::scalar,      sq_euclidean_scalar, euclidean_scalar,     manhattan_scalar,
    chebyshev_scalar, minkowski_scalar,    mahalanobis_sq_scalar,
};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace metriclust::kernels
