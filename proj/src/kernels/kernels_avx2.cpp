#include "metriclust/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define METRICLUST_HAVE_AVX2_TU 1
#include <immintrin.h>
#endif

namespace metriclust::kernels::detail {

#if defined(METRICLUST_HAVE_AVX2_TU)

namespace {

// Lanes are points. Tails shorter than a register go through the scalar
// reference, which performs the same per-point operations.

constexpr std::size_t kLanes = 4;
constexpr std::size_t kMaxQuadDims = 32;

Columns tail_of(Columns pts, std::size_t start) {
    return {pts.base + start, pts.n - start, pts.d, pts.stride};
}

__attribute__((target("avx2"))) inline __m256d abs_pd(__m256d v) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

__attribute__((target("avx2"))) void sq_euclidean_avx2(Columns pts, const double* center,
                                                       double* out) {
    std::size_t i = 0;
    for (; i + kLanes <= pts.n; i += kLanes) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t j = 0; j < pts.d; ++j) {
            const __m256d x = _mm256_loadu_pd(pts.base + j * pts.stride + i);
            const __m256d diff = _mm256_sub_pd(x, _mm256_set1_pd(center[j]));
            acc = _mm256_add_pd(acc, _mm256_mul_pd(diff, diff));
        }
        _mm256_storeu_pd(out + i, acc);
    }
    if (i < pts.n) scalar_table().sq_euclidean(tail_of(pts, i), center, out + i);
}

__attribute__((target("avx2"))) void euclidean_avx2(Columns pts, const double* center,
                                                    double* out) {
    std::size_t i = 0;
    for (; i + kLanes <= pts.n; i += kLanes) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t j = 0; j < pts.d; ++j) {
            const __m256d x = _mm256_loadu_pd(pts.base + j * pts.stride + i);
            const __m256d diff = _mm256_sub_pd(x, _mm256_set1_pd(center[j]));
            acc = _mm256_add_pd(acc, _mm256_mul_pd(diff, diff));
        }
        _mm256_storeu_pd(out + i, _mm256_sqrt_pd(acc));
    }
    if (i < pts.n) scalar_table().euclidean(tail_of(pts, i), center, out + i);
}

__attribute__((target("avx2"))) void manhattan_avx2(Columns pts, const double* center,
                                                    double* out) {
    std::size_t i = 0;
    for (; i + kLanes <= pts.n; i += kLanes) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t j = 0; j < pts.d; ++j) {
            const __m256d x = _mm256_loadu_pd(pts.base + j * pts.stride + i);
            acc = _mm256_add_pd(acc, abs_pd(_mm256_sub_pd(x, _mm256_set1_pd(center[j]))));
        }
        _mm256_storeu_pd(out + i, acc);
    }
    if (i < pts.n) scalar_table().manhattan(tail_of(pts, i), center, out + i);
}

__attribute__((target("avx2"))) void chebyshev_avx2(Columns pts, const double* center,
                                                    double* out) {
    std::size_t i = 0;
    for (; i + kLanes <= pts.n; i += kLanes) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t j = 0; j < pts.d; ++j) {
            const __m256d x = _mm256_loadu_pd(pts.base + j * pts.stride + i);
            acc = _mm256_max_pd(abs_pd(_mm256_sub_pd(x, _mm256_set1_pd(center[j]))), acc);
        }
        _mm256_storeu_pd(out + i, acc);
    }
    if (i < pts.n) scalar_table().chebyshev(tail_of(pts, i), center, out + i);
}

__attribute__((target("avx2"))) void mahalanobis_sq_avx2(Columns pts, const double* center,
                                                         const double* inv, double* out) {
    if (pts.d > kMaxQuadDims) {
        scalar_table().mahalanobis_sq(pts, center, inv, out);
        return;
    }
    __m256d diff[kMaxQuadDims];
    std::size_t i = 0;
    for (; i + kLanes <= pts.n; i += kLanes) {
        for (std::size_t j = 0; j < pts.d; ++j) {
            const __m256d x = _mm256_loadu_pd(pts.base + j * pts.stride + i);
            diff[j] = _mm256_sub_pd(x, _mm256_set1_pd(center[j]));
        }
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t a = 0; a < pts.d; ++a) {
            __m256d t = _mm256_setzero_pd();
            for (std::size_t b = 0; b < pts.d; ++b) {
                t = _mm256_add_pd(t, _mm256_mul_pd(_mm256_set1_pd(inv[a * pts.d + b]), diff[b]));
            }
            acc = _mm256_add_pd(acc, _mm256_mul_pd(diff[a], t));
        }
        _mm256_storeu_pd(out + i, acc);
    }
    if (i < pts.n) scalar_table().mahalanobis_sq(tail_of(pts, i), center, inv, out + i);
}

void minkowski_passthrough(Columns pts, const double* center, double p, double* out) {
    // No vector pow; the scalar path is the AVX2 path too.
    scalar_table().minkowski(pts, center, p, out);
}

constexpr KernelTable kAvx2{
    Isa::avx2,      sq_euclidean_avx2,     euclidean_avx2,      manhattan_avx2,
    chebyshev_avx2, minkowski_passthrough, mahalanobis_sq_avx2,
};

}  // namespace

const KernelTable* avx2_table() { return &kAvx2; }

#else

const KernelTable* avx2_table() { return nullptr; }

#endif

}  // namespace metriclust::kernels::detail
