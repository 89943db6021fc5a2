#pragma once

#include <cstdint>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace spatlang {

// Outcome of an operation whose failure is a normal domain result
// (indiscriminable pair, unparseable utterance, ...) rather than a bug.
template <typename T>
class Fallible {
 public:
  static Fallible success(T value) {
    Fallible f;
    f.value_ = std::move(value);
    return f;
  }
  static Fallible failure(std::string reason) {
    Fallible f;
    f.error_ = std::move(reason);
    return f;
  }

  explicit operator bool() const { return value_.has_value(); }
  bool ok() const { return value_.has_value(); }
  const T& operator*() const { return *value_; }
  T& operator*() { return *value_; }
  const T* operator->() const { return &*value_; }
  T* operator->() { return &*value_; }
  const std::string& error() const { return error_; }

 private:
  std::optional<T> value_;
  std::string error_;
};

// splitmix64; pinned so that seeded runs reproduce across platforms and
// standard-library versions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, n)
  uint64_t below(uint64_t n) { return n ? next() % n : 0; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; one value per call, the pair's twin is discarded.
  double gaussian(double sigma) {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return sigma * std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  uint64_t state_;
};

}  // namespace spatlang
