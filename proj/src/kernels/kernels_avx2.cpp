// Built with -mavx2 only; never called unless the CPU reports AVX2.
#include "cmarket/kernels.hpp"

#include <immintrin.h>

#include <cstring>
#include <limits>

namespace cmarket::kernels {

namespace {

constexpr std::size_t lanes = 4;

inline __m256d unconsumed_mask(const std::uint8_t* consumed) {
    std::int32_t bytes;
    std::memcpy(&bytes, consumed, sizeof bytes);
    const __m256i flags = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(bytes));
    return _mm256_castsi256_pd(_mm256_cmpeq_epi64(flags, _mm256_setzero_si256()));
}

void score_opinions_avx2(double gamma, const double* pressure_num, double pressure_den, const double* liking,
                         const std::uint8_t* consumed, double* out, std::size_t m) {
    constexpr double excluded = -std::numeric_limits<double>::infinity();
    const double personal = 1.0 - gamma;
    const __m256d g = _mm256_set1_pd(gamma);
    const __m256d w = _mm256_set1_pd(personal);
    const __m256d den = _mm256_set1_pd(pressure_den);
    const __m256d neg_inf = _mm256_set1_pd(excluded);
    const bool isolated = pressure_den == 0.0;

    std::size_t a = 0;
    for (; a + lanes <= m; a += lanes) {
        const __m256d s = isolated ? _mm256_setzero_pd() : _mm256_div_pd(_mm256_loadu_pd(pressure_num + a), den);
        const __m256d o = _mm256_add_pd(_mm256_mul_pd(g, s), _mm256_mul_pd(w, _mm256_loadu_pd(liking + a)));
        _mm256_storeu_pd(out + a, _mm256_blendv_pd(neg_inf, o, unconsumed_mask(consumed + a)));
    }
    for (; a < m; ++a) {
        const double s = isolated ? 0.0 : pressure_num[a] / pressure_den;
        out[a] = consumed[a] ? excluded : gamma * s + personal * liking[a];
    }
}

MaxScan max_scan_avx2(const double* values, std::size_t m) {
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    __m256d vmax = _mm256_set1_pd(neg_inf);
    std::size_t a = 0;
    for (; a + lanes <= m; a += lanes) vmax = _mm256_max_pd(vmax, _mm256_loadu_pd(values + a));
    alignas(32) double lanes_max[lanes];
    _mm256_store_pd(lanes_max, vmax);
    double best = neg_inf;
    for (double v : lanes_max) best = v > best ? v : best;
    for (std::size_t t = a; t < m; ++t) best = values[t] > best ? values[t] : best;
    if (best == neg_inf) return {neg_inf, 0};

    const __m256d target = _mm256_set1_pd(best);
    std::size_t ties = 0;
    a = 0;
    for (; a + lanes <= m; a += lanes) {
        const int bits = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(values + a), target, _CMP_EQ_OQ));
        ties += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(bits)));
    }
    for (; a < m; ++a) ties += values[a] == best;
    return {best, ties};
}

void accumulate_avx2(double* acc, const double* row, std::size_t m) {
    std::size_t a = 0;
    for (; a + lanes <= m; a += lanes)
        _mm256_storeu_pd(acc + a, _mm256_add_pd(_mm256_loadu_pd(acc + a), _mm256_loadu_pd(row + a)));
    for (; a < m; ++a) acc[a] += row[a];
}

} // namespace

const KernelSet& avx2_impl() {
    static const KernelSet set{"avx2", &score_opinions_avx2, &max_scan_avx2, &accumulate_avx2};
    return set;
}

} // namespace cmarket::kernels
