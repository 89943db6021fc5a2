#pragma once

#include <cmath>
#include <cstdint>
#include <cstddef>

namespace spatlang::kernels {

// Per-tick classification kernels behind the qualitative abstraction.
// The scalar versions are the reference semantics; the AVX2 variants are
// selected at runtime and must produce bit-identical codes (all
// arithmetic is plain IEEE add/sub/mul/sqrt, no FMA contraction).

// Code layout shared by scalar and SIMD paths.
enum : uint8_t { kRccDC = 0, kRccPO = 1, kRccPP = 2, kRccPPi = 3, kRccEQ = 4 };
enum : uint8_t {
  kAxisLow = 0,
  kAxisOverlapsLow = 1,
  kAxisAlongLow = 2,
  kAxisAligned = 3,
  kAxisOverlapsHigh = 4,
  kAxisAlongHigh = 5,
  kAxisHigh = 6,
};
enum : uint8_t { kMotionSteady = 0, kMotionApproaching = 1, kMotionReceding = 2 };

// Single-element reference classifiers.
inline uint8_t classify_rcc5(double axlo, double axhi, double aylo, double ayhi,
                             double bxlo, double bxhi, double bylo, double byhi,
                             double eps) {
  const bool eq = std::fabs(axlo - bxlo) <= eps && std::fabs(axhi - bxhi) <= eps &&
                  std::fabs(aylo - bylo) <= eps && std::fabs(ayhi - byhi) <= eps;
  if (eq) return kRccEQ;
  const bool a_in_b = axlo >= bxlo - eps && axhi <= bxhi + eps &&
                      aylo >= bylo - eps && ayhi <= byhi + eps;
  if (a_in_b) return kRccPP;
  const bool b_in_a = bxlo >= axlo - eps && bxhi <= axhi + eps &&
                      bylo >= aylo - eps && byhi <= ayhi + eps;
  if (b_in_a) return kRccPPi;
  const double ox = (axhi < bxhi ? axhi : bxhi) - (axlo > bxlo ? axlo : bxlo);
  const double oy = (ayhi < byhi ? ayhi : byhi) - (aylo > bylo ? aylo : bylo);
  if (ox <= 2.0 * eps || oy <= 2.0 * eps) return kRccDC;
  return kRccPO;
}

inline uint8_t classify_axis(double alo, double ahi, double blo, double bhi,
                             double eps) {
  if (ahi < blo - eps) return kAxisLow;
  if (alo > bhi + eps) return kAxisHigh;
  const bool a_in_b = alo >= blo - eps && ahi <= bhi + eps;
  const bool b_in_a = blo >= alo - eps && bhi <= ahi + eps;
  if (a_in_b || b_in_a) {
    const double ca = (alo + ahi) * 0.5;
    const double cb = (blo + bhi) * 0.5;
    if (ca < cb - eps) return kAxisAlongLow;
    if (ca > cb + eps) return kAxisAlongHigh;
    return kAxisAligned;
  }
  return alo < blo ? kAxisOverlapsLow : kAxisOverlapsHigh;
}

// Array kernels. All pointers refer to n-element arrays.
using Rcc5Fn = void (*)(const double* axlo, const double* axhi, const double* aylo,
                        const double* ayhi, const double* bxlo, const double* bxhi,
                        const double* bylo, const double* byhi, size_t n, double eps,
                        uint8_t* out);
using AxisFn = void (*)(const double* alo, const double* ahi, const double* blo,
                        const double* bhi, size_t n, double eps, uint8_t* out);
using DistFn = void (*)(const double* acx, const double* acy, const double* bcx,
                        const double* bcy, size_t n, double* out);

void rcc5_codes_scalar(const double* axlo, const double* axhi, const double* aylo,
                       const double* ayhi, const double* bxlo, const double* bxhi,
                       const double* bylo, const double* byhi, size_t n, double eps,
                       uint8_t* out);
void axis_codes_scalar(const double* alo, const double* ahi, const double* blo,
                       const double* bhi, size_t n, double eps, uint8_t* out);
void centroid_dist_scalar(const double* acx, const double* acy, const double* bcx,
                          const double* bcy, size_t n, double* out);

#if defined(SPATLANG_WITH_AVX2)
void rcc5_codes_avx2(const double* axlo, const double* axhi, const double* aylo,
                     const double* ayhi, const double* bxlo, const double* bxhi,
                     const double* bylo, const double* byhi, size_t n, double eps,
                     uint8_t* out);
void axis_codes_avx2(const double* alo, const double* ahi, const double* blo,
                     const double* bhi, size_t n, double eps, uint8_t* out);
void centroid_dist_avx2(const double* acx, const double* acy, const double* bcx,
                        const double* bcy, size_t n, double* out);
#endif

// Symmetric-window motion coding over a distance series; ticks whose
// window leaves the series are steady.
void motion_codes(const double* dist, size_t n, int window, double v_eps,
                  uint8_t* out);

struct Dispatch {
  Rcc5Fn rcc5;
  AxisFn axis;
  DistFn dist;
  const char* backend;
};

// Active kernel set: AVX2 when the CPU supports it, scalar otherwise.
// SPATLANG_FORCE_SCALAR=1 in the environment pins the scalar set.
const Dispatch& active_dispatch();
bool avx2_selected();

// Test hook: force the scalar kernels on/off for the current process.
void force_scalar(bool on);

}  // namespace spatlang::kernels
