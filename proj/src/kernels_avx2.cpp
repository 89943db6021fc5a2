#include <immintrin.h>

#include "spatlang/kernels.hpp"

// AVX2 variants of the per-tick kernels. Same IEEE operations as the
// scalar reference (add/sub/mul/min/max/sqrt, no FMA), so codes and
// distances are bit-identical.

namespace spatlang::kernels {

namespace {

inline __m256d abs_pd(__m256d v) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  return _mm256_andnot_pd(sign, v);
}

// Writes 4 small integer codes held as doubles.
inline void store_codes(__m256d codes, uint8_t* out) {
  alignas(32) double tmp[4];
  _mm256_store_pd(tmp, codes);
  out[0] = static_cast<uint8_t>(tmp[0]);
  out[1] = static_cast<uint8_t>(tmp[1]);
  out[2] = static_cast<uint8_t>(tmp[2]);
  out[3] = static_cast<uint8_t>(tmp[3]);
}

}  // namespace

void rcc5_codes_avx2(const double* axlo, const double* axhi, const double* aylo,
                     const double* ayhi, const double* bxlo, const double* bxhi,
                     const double* bylo, const double* byhi, size_t n, double eps,
                     uint8_t* out) {
  const __m256d veps = _mm256_set1_pd(eps);
  const __m256d veps2 = _mm256_set1_pd(2.0 * eps);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xlo_a = _mm256_loadu_pd(axlo + i), xhi_a = _mm256_loadu_pd(axhi + i);
    const __m256d ylo_a = _mm256_loadu_pd(aylo + i), yhi_a = _mm256_loadu_pd(ayhi + i);
    const __m256d xlo_b = _mm256_loadu_pd(bxlo + i), xhi_b = _mm256_loadu_pd(bxhi + i);
    const __m256d ylo_b = _mm256_loadu_pd(bylo + i), yhi_b = _mm256_loadu_pd(byhi + i);

    const __m256d eq = _mm256_and_pd(
        _mm256_and_pd(
            _mm256_cmp_pd(abs_pd(_mm256_sub_pd(xlo_a, xlo_b)), veps, _CMP_LE_OQ),
            _mm256_cmp_pd(abs_pd(_mm256_sub_pd(xhi_a, xhi_b)), veps, _CMP_LE_OQ)),
        _mm256_and_pd(
            _mm256_cmp_pd(abs_pd(_mm256_sub_pd(ylo_a, ylo_b)), veps, _CMP_LE_OQ),
            _mm256_cmp_pd(abs_pd(_mm256_sub_pd(yhi_a, yhi_b)), veps, _CMP_LE_OQ)));

    const __m256d a_in_b = _mm256_and_pd(
        _mm256_and_pd(
            _mm256_cmp_pd(xlo_a, _mm256_sub_pd(xlo_b, veps), _CMP_GE_OQ),
            _mm256_cmp_pd(xhi_a, _mm256_add_pd(xhi_b, veps), _CMP_LE_OQ)),
        _mm256_and_pd(
            _mm256_cmp_pd(ylo_a, _mm256_sub_pd(ylo_b, veps), _CMP_GE_OQ),
            _mm256_cmp_pd(yhi_a, _mm256_add_pd(yhi_b, veps), _CMP_LE_OQ)));

    const __m256d b_in_a = _mm256_and_pd(
        _mm256_and_pd(
            _mm256_cmp_pd(xlo_b, _mm256_sub_pd(xlo_a, veps), _CMP_GE_OQ),
            _mm256_cmp_pd(xhi_b, _mm256_add_pd(xhi_a, veps), _CMP_LE_OQ)),
        _mm256_and_pd(
            _mm256_cmp_pd(ylo_b, _mm256_sub_pd(ylo_a, veps), _CMP_GE_OQ),
            _mm256_cmp_pd(yhi_b, _mm256_add_pd(yhi_a, veps), _CMP_LE_OQ)));

    const __m256d ox = _mm256_sub_pd(_mm256_min_pd(xhi_a, xhi_b),
                                     _mm256_max_pd(xlo_a, xlo_b));
    const __m256d oy = _mm256_sub_pd(_mm256_min_pd(yhi_a, yhi_b),
                                     _mm256_max_pd(ylo_a, ylo_b));
    const __m256d dc = _mm256_or_pd(_mm256_cmp_pd(ox, veps2, _CMP_LE_OQ),
                                    _mm256_cmp_pd(oy, veps2, _CMP_LE_OQ));

    // Priority EQ > PP > PPi > DC > PO: blend in reverse order.
    __m256d code = _mm256_set1_pd(static_cast<double>(kRccPO));
    code = _mm256_blendv_pd(code, _mm256_set1_pd(kRccDC), dc);
    code = _mm256_blendv_pd(code, _mm256_set1_pd(kRccPPi), b_in_a);
    code = _mm256_blendv_pd(code, _mm256_set1_pd(kRccPP), a_in_b);
    code = _mm256_blendv_pd(code, _mm256_set1_pd(kRccEQ), eq);
    store_codes(code, out + i);
  }
  for (; i < n; ++i)
    out[i] = classify_rcc5(axlo[i], axhi[i], aylo[i], ayhi[i], bxlo[i], bxhi[i],
                           bylo[i], byhi[i], eps);
}

void axis_codes_avx2(const double* alo, const double* ahi, const double* blo,
                     const double* bhi, size_t n, double eps, uint8_t* out) {
  const __m256d veps = _mm256_set1_pd(eps);
  const __m256d half = _mm256_set1_pd(0.5);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d lo_a = _mm256_loadu_pd(alo + i), hi_a = _mm256_loadu_pd(ahi + i);
    const __m256d lo_b = _mm256_loadu_pd(blo + i), hi_b = _mm256_loadu_pd(bhi + i);

    const __m256d low = _mm256_cmp_pd(hi_a, _mm256_sub_pd(lo_b, veps), _CMP_LT_OQ);
    const __m256d high = _mm256_cmp_pd(lo_a, _mm256_add_pd(hi_b, veps), _CMP_GT_OQ);

    const __m256d a_in_b = _mm256_and_pd(
        _mm256_cmp_pd(lo_a, _mm256_sub_pd(lo_b, veps), _CMP_GE_OQ),
        _mm256_cmp_pd(hi_a, _mm256_add_pd(hi_b, veps), _CMP_LE_OQ));
    const __m256d b_in_a = _mm256_and_pd(
        _mm256_cmp_pd(lo_b, _mm256_sub_pd(lo_a, veps), _CMP_GE_OQ),
        _mm256_cmp_pd(hi_b, _mm256_add_pd(hi_a, veps), _CMP_LE_OQ));
    const __m256d contained = _mm256_or_pd(a_in_b, b_in_a);

    const __m256d ca = _mm256_mul_pd(_mm256_add_pd(lo_a, hi_a), half);
    const __m256d cb = _mm256_mul_pd(_mm256_add_pd(lo_b, hi_b), half);
    const __m256d along_low = _mm256_cmp_pd(ca, _mm256_sub_pd(cb, veps), _CMP_LT_OQ);
    const __m256d along_high = _mm256_cmp_pd(ca, _mm256_add_pd(cb, veps), _CMP_GT_OQ);

    __m256d within = _mm256_set1_pd(static_cast<double>(kAxisAligned));
    within = _mm256_blendv_pd(within, _mm256_set1_pd(kAxisAlongHigh), along_high);
    within = _mm256_blendv_pd(within, _mm256_set1_pd(kAxisAlongLow), along_low);

    const __m256d ovl_low = _mm256_cmp_pd(lo_a, lo_b, _CMP_LT_OQ);
    __m256d code = _mm256_blendv_pd(_mm256_set1_pd(kAxisOverlapsHigh),
                                    _mm256_set1_pd(kAxisOverlapsLow), ovl_low);
    code = _mm256_blendv_pd(code, within, contained);
    code = _mm256_blendv_pd(code, _mm256_set1_pd(kAxisHigh), high);
    code = _mm256_blendv_pd(code, _mm256_set1_pd(kAxisLow), low);
    store_codes(code, out + i);
  }
  for (; i < n; ++i) out[i] = classify_axis(alo[i], ahi[i], blo[i], bhi[i], eps);
}

void centroid_dist_avx2(const double* acx, const double* acy, const double* bcx,
                        const double* bcy, size_t n, double* out) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(acx + i), _mm256_loadu_pd(bcx + i));
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(acy + i), _mm256_loadu_pd(bcy + i));
    const __m256d sum = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(sum));
  }
  for (; i < n; ++i) {
    const double dx = acx[i] - bcx[i];
    const double dy = acy[i] - bcy[i];
    out[i] = std::sqrt(dx * dx + dy * dy);
  }
}

}  // namespace spatlang::kernels
