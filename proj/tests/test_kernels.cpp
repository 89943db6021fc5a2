#include <vector>

#include "doctest.h"
#include "spatlang/common.hpp"
#include "spatlang/kernels.hpp"

using namespace spatlang;
namespace k = spatlang::kernels;

namespace {

struct RectArrays {
  std::vector<double> axlo, axhi, aylo, ayhi, bxlo, bxhi, bylo, byhi;

  RectArrays(size_t n, Rng& rng) {
    auto fill = [&](std::vector<double>& lo, std::vector<double>& hi) {
      lo.resize(n);
      hi.resize(n);
      for (size_t i = 0; i < n; ++i) {
        const double a = rng.uniform(-5.0, 5.0);
        const double b = a + rng.uniform(0.0, 4.0);
        lo[i] = a;
        hi[i] = b;
      }
    };
    fill(axlo, axhi);
    fill(aylo, ayhi);
    fill(bxlo, bxhi);
    fill(bylo, byhi);
  }
};

}  // namespace

#if defined(SPATLANG_WITH_AVX2)
TEST_CASE("scalar and simd rcc5 codes agree bit for bit") {
  if (!k::avx2_selected()) return;  // no SIMD variant on this host
  Rng rng(2024);
  for (size_t n : {size_t{1}, size_t{3}, size_t{4}, size_t{7}, size_t{64}, size_t{1001}}) {
    RectArrays r(n, rng);
    std::vector<uint8_t> scalar(n), simd(n);
    for (double eps : {0.0, 0.01, 0.3}) {
      k::rcc5_codes_scalar(r.axlo.data(), r.axhi.data(), r.aylo.data(), r.ayhi.data(),
                           r.bxlo.data(), r.bxhi.data(), r.bylo.data(), r.byhi.data(),
                           n, eps, scalar.data());
      k::rcc5_codes_avx2(r.axlo.data(), r.axhi.data(), r.aylo.data(), r.ayhi.data(),
                         r.bxlo.data(), r.bxhi.data(), r.bylo.data(), r.byhi.data(),
                         n, eps, simd.data());
      CHECK(scalar == simd);
    }
  }
}

TEST_CASE("scalar and simd axis codes agree bit for bit") {
  if (!k::avx2_selected()) return;
  Rng rng(77);
  for (size_t n : {size_t{1}, size_t{5}, size_t{256}, size_t{999}}) {
    RectArrays r(n, rng);
    std::vector<uint8_t> scalar(n), simd(n);
    for (double eps : {0.0, 0.01, 0.5}) {
      k::axis_codes_scalar(r.axlo.data(), r.axhi.data(), r.bxlo.data(), r.bxhi.data(),
                           n, eps, scalar.data());
      k::axis_codes_avx2(r.axlo.data(), r.axhi.data(), r.bxlo.data(), r.bxhi.data(),
                         n, eps, simd.data());
      CHECK(scalar == simd);
    }
  }
}

TEST_CASE("scalar and simd centroid distances agree bit for bit") {
  if (!k::avx2_selected()) return;
  Rng rng(15);
  for (size_t n : {size_t{2}, size_t{4}, size_t{130}, size_t{1000}}) {
    RectArrays r(n, rng);
    std::vector<double> scalar(n), simd(n);
    k::centroid_dist_scalar(r.axlo.data(), r.aylo.data(), r.bxlo.data(), r.bylo.data(),
                            n, scalar.data());
    k::centroid_dist_avx2(r.axlo.data(), r.aylo.data(), r.bxlo.data(), r.bylo.data(),
                          n, simd.data());
    CHECK(scalar == simd);
  }
}
#endif

TEST_CASE("runtime dispatch honors force_scalar") {
  const bool had_simd = k::avx2_selected();
  k::force_scalar(true);
  CHECK(std::string(k::active_dispatch().backend) == "scalar");
  k::force_scalar(false);
  CHECK(k::avx2_selected() == had_simd);
}

TEST_CASE("motion codes threshold the windowed distance difference") {
  // Distances shrink, hold, then grow.
  const std::vector<double> dist{5, 4, 3, 2, 2, 2, 3, 4, 5};
  std::vector<uint8_t> codes(dist.size());
  k::motion_codes(dist.data(), dist.size(), 2, 0.1, codes.data());
  CHECK(codes[0] == k::kMotionSteady);  // window leaves the series
  CHECK(codes[1] == k::kMotionSteady);
  CHECK(codes[2] == k::kMotionApproaching);
  CHECK(codes[3] == k::kMotionApproaching);
  CHECK(codes[4] == k::kMotionSteady);
  CHECK(codes[5] == k::kMotionReceding);
  CHECK(codes[6] == k::kMotionReceding);
  CHECK(codes[7] == k::kMotionSteady);
  CHECK(codes[8] == k::kMotionSteady);
}
