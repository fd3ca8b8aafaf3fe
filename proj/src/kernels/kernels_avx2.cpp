#include <immintrin.h>

#include <algorithm>
#include <limits>

#include "hminor/kernels.hpp"

namespace hminor::kernels {
namespace {

// Four vertices per iteration. Per lane, slot sums are accumulated in the
// same order as the scalar loop, so results match bit-for-bit.
void lazy_apply(const PaddedAdjacency& a, const double* x, double* y) {
    const std::size_t n = a.n;
    const double scale = 0.5 / static_cast<double>(a.slots);
    const __m256d vhalf = _mm256_set1_pd(0.5);
    const __m256d vscale = _mm256_set1_pd(scale);
    std::size_t v = 0;
    for (; v + 4 <= n; v += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t j = 0; j < a.slots; ++j) {
            __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(a.index.data() + j * n + v));
            acc = _mm256_add_pd(acc, _mm256_i32gather_pd(x, idx, 8));
        }
        __m256d out = _mm256_add_pd(_mm256_mul_pd(vhalf, _mm256_loadu_pd(x + v)), _mm256_mul_pd(vscale, acc));
        _mm256_storeu_pd(y + v, out);
    }
    for (; v < n; ++v) {
        double acc = 0.0;
        for (std::size_t j = 0; j < a.slots; ++j) acc += x[a.index[j * n + v]];
        y[v] = 0.5 * x[v] + scale * acc;
    }
}

void mask_multiply(double* x, const double* mask, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(mask + i)));
    for (; i < n; ++i) x[i] *= mask[i];
}

double horizontal_sum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

double dot(const double* x, const double* y, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
        acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4)));
    }
    double acc = horizontal_sum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

double sum(const double* x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
    }
    double acc = horizontal_sum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += x[i];
    return acc;
}

double sum_squares(const double* x, std::size_t n) { return dot(x, x, n); }

double max_value(const double* x, std::size_t n) {
    double best = -std::numeric_limits<double>::infinity();
    std::size_t i = 0;
    if (n >= 4) {
        __m256d vbest = _mm256_loadu_pd(x);
        for (i = 4; i + 4 <= n; i += 4) vbest = _mm256_max_pd(vbest, _mm256_loadu_pd(x + i));
        alignas(32) double lanes[4];
        _mm256_store_pd(lanes, vbest);
        best = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    }
    for (; i < n; ++i) best = std::max(best, x[i]);
    return best;
}

}  // namespace

const KernelTable& avx2_table_impl() noexcept {
    static const KernelTable table{"avx2", lazy_apply, mask_multiply, dot, sum, sum_squares, max_value};
    return table;
}

}  // namespace hminor::kernels
