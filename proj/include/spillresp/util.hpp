#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "spillresp/error.hpp"

namespace spillresp {

/// Dense row-major matrix of doubles with bounds-checked construction.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Deterministic uniform generator (xoshiro-free; splitmix64 + canonical doubles)
/// so sampled scenarios are byte-identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Shortest round-trippable decimal representation (used by all emitters so
/// repeated runs produce byte-identical files).
std::string fmt_double(double v);

/// FNV-1a 64-bit hash of a byte string, hex-encoded. Used for run manifests.
std::string fnv1a64_hex(const std::string& bytes);

double mean_of(const std::vector<double>& v);
double stddev_of(const std::vector<double>& v);  // sample std (n-1), 0 for n<2

}  // namespace spillresp
