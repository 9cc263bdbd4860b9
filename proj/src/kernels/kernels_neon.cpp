#include "metriclust/kernels.hpp"

#if defined(__aarch64__)
#define METRICLUST_HAVE_NEON_TU 1
#include <arm_neon.h>
#endif

namespace metriclust::kernels::detail {

#if defined(METRICLUST_HAVE_NEON_TU)

namespace {

// Two points per register. Same per-lane operation order as the scalar
// reference; AArch64 always has Advanced SIMD so no runtime probe is needed.

constexpr std::size_t kLanes = 2;
constexpr std::size_t kMaxQuadDims = 32;

Columns tail_of(Columns pts, std::size_t start) {
    return {pts.base + start, pts.n - start, pts.d, pts.stride};
}

void sq_euclidean_neon(Columns pts, const double* center, double* out) {
    std::size_t i = 0;
    for (; i + kLanes <= pts.n; i += kLanes) {
        float64x2_t acc = vdupq_n_f64(0.0);
        for (std::size_t j = 0; j < pts.d; ++j) {
            const float64x2_t diff =
                vsubq_f64(vld1q_f64(pts.base + j * pts.stride + i), vdupq_n_f64(center[j]));
            acc = vaddq_f64(acc, vmulq_f64(diff, diff));
        }
        vst1q_f64(out + i, acc);
    }
    if (i < pts.n) scalar_table().sq_euclidean(tail_of(pts, i), center, out + i);
}

void euclidean_neon(Columns pts, const double* center, double* out) {
    std::size_t i = 0;
    for (; i + kLanes <= pts.n; i += kLanes) {
        float64x2_t acc = vdupq_n_f64(0.0);
        for (std::size_t j = 0; j < pts.d; ++j) {
            const float64x2_t diff =
                vsubq_f64(vld1q_f64(pts.base + j * pts.stride + i), vdupq_n_f64(center[j]));
            acc = vaddq_f64(acc, vmulq_f64(diff, diff));
        }
        vst1q_f64(out + i, vsqrtq_f64(acc));
    }
    if (i < pts.n) scalar_table().euclidean(tail_of(pts, i), center, out + i);
}

void manhattan_neon(Columns pts, const double* center, double* out) {
    std::size_t i = 0;
    for (; i + kLanes <= pts.n; i += kLanes) {
        float64x2_t acc = vdupq_n_f64(0.0);
        for (std::size_t j = 0; j < pts.d; ++j) {
            const float64x2_t diff =
                vsubq_f64(vld1q_f64(pts.base + j * pts.stride + i), vdupq_n_f64(center[j]));
            acc = vaddq_f64(acc, vabsq_f64(diff));
        }
        vst1q_f64(out + i, acc);
    }
    if (i < pts.n) scalar_table().manhattan(tail_of(pts, i), center, out + i);
}

void chebyshev_neon(Columns pts, const double* center, double* out) {
    std::size_t i = 0;
    for (; i + kLanes <= pts.n; i += kLanes) {
        float64x2_t acc = vdupq_n_f64(0.0);
        for (std::size_t j = 0; j < pts.d; ++j) {
            const float64x2_t diff =
                vsubq_f64(vld1q_f64(pts.base + j * pts.stride + i), vdupq_n_f64(center[j]));
            acc = vmaxq_f64(acc, vabsq_f64(diff));
        }
        vst1q_f64(out + i, acc);
    }
    if (i < pts.n) scalar_table().chebyshev(tail_of(pts, i), center, out + i);
}

void mahalanobis_sq_neon(Columns pts, const double* center, const double* inv, double* out) {
    if (pts.d > kMaxQuadDims) {
        scalar_table().mahalanobis_sq(pts, center, inv, out);
        return;
    }
    float64x2_t diff[kMaxQuadDims];
    std::size_t i = 0;
    for (; i + kLanes <= pts.n; i += kLanes) {
        for (std::size_t j = 0; j < pts.d; ++j) {
            diff[j] = vsubq_f64(vld1q_f64(pts.base + j * pts.stride + i), vdupq_n_f64(center[j]));
        }
        float64x2_t acc = vdupq_n_f64(0.0);
        for (std::size_t a = 0; a < pts.d; ++a) {
            float64x2_t t = vdupq_n_f64(0.0);
            for (std::size_t b = 0; b < pts.d; ++b) {
                t = vaddq_f64(t, vmulq_f64(vdupq_n_f64(inv[a * pts.d + b]), diff[b]));
            }
            acc = vaddq_f64(acc, vmulq_f64(diff[a], t));
        }
        vst1q_f64(out + i, acc);
    }
    if (i < pts.n) scalar_table().mahalanobis_sq(tail_of(pts, i), center, inv, out + i);
}

void minkowski_passthrough(Columns pts, const double* center, double p, double* out) {
    scalar_table().minkowski(pts, center, p, out);
}

constexpr KernelTable kNeon{
    Isa::neon,      sq_euclidean_neon,     euclidean_neon,      manhattan_neon,
    chebyshev_neon, minkowski_passthrough, mahalanobis_sq_neon,
};

}  // namespace

const KernelTable* neon_table() { return &kNeon; }

#else

const KernelTable* neon_table() { return nullptr; }

#endif

}  // namespace metriclust::kernels::detail
