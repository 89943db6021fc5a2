#include "spatlang/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace spatlang::kernels {

void rcc5_codes_scalar(const double* axlo, const double* axhi, const double* aylo,
                       const double* ayhi, const double* bxlo, const double* bxhi,
                       const double* bylo, const double* byhi, size_t n, double eps,
                       uint8_t* out) {
  for (size_t i = 0; i < n; ++i)
    out[i] = classify_rcc5(axlo[i], axhi[i], aylo[i], ayhi[i], bxlo[i], bxhi[i],
                           bylo[i], byhi[i], eps);
}

void axis_codes_scalar(const double* alo, const double* ahi, const double* blo,
                       const double* bhi, size_t n, double eps, uint8_t* out) {
  for (size_t i = 0; i < n; ++i)
    out[i] = classify_axis(alo[i], ahi[i], blo[i], bhi[i], eps);
}

void centroid_dist_scalar(const double* acx, const double* acy, const double* bcx,
                          const double* bcy, size_t n, double* out) {
  for (size_t i = 0; i < n; ++i) {
    const double dx = acx[i] - bcx[i];
    const double dy = acy[i] - bcy[i];
    out[i] = std::sqrt(dx * dx + dy * dy);
  }
}

void motion_codes(const double* dist, size_t n, int window, double v_eps,
                  uint8_t* out) {
  const int len = static_cast<int>(n);
  for (int t = 0; t < len; ++t) {
    if (t - window < 0 || t + window >= len) {
      out[t] = kMotionSteady;
      continue;
    }
    const double diff = dist[t + window] - dist[t - window];
    if (diff < -v_eps)
      out[t] = kMotionApproaching;
    else if (diff > v_eps)
      out[t] = kMotionReceding;
    else
      out[t] = kMotionSteady;
  }
}

namespace {

const Dispatch kScalar{rcc5_codes_scalar, axis_codes_scalar, centroid_dist_scalar,
                       "scalar"};

#if defined(SPATLANG_WITH_AVX2)
const Dispatch kAvx2{rcc5_codes_avx2, axis_codes_avx2, centroid_dist_avx2, "avx2"};

bool cpu_has_avx2() {
#if defined(__GNUC__) || defined(__clang__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}
#endif

std::atomic<bool> g_force_scalar{false};

bool env_forces_scalar() {
  const char* v = std::getenv("SPATLANG_FORCE_SCALAR");
  return v && v[0] == '1';
}

}  // namespace

const Dispatch& active_dispatch() {
#if defined(SPATLANG_WITH_AVX2)
  static const bool hw = cpu_has_avx2();
  static const bool env = env_forces_scalar();
  if (hw && !env && !g_force_scalar.load(std::memory_order_relaxed)) return kAvx2;
#endif
  return kScalar;
}

bool avx2_selected() { return active_dispatch().backend[0] == 'a'; }

void force_scalar(bool on) { g_force_scalar.store(on, std::memory_order_relaxed); }

}  // namespace spatlang::kernels
