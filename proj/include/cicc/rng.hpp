#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace cicc {

class Dist;

/// Deterministic random stream. All mappings from raw engine output to
/// doubles/integers are spelled out here instead of using the standard
/// distribution adaptors, whose output is implementation-defined; this keeps
/// results byte-identical across platforms and worker counts.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Stream for item `index` of a batch keyed by `seed`. Two invocations with
  /// the same (seed, index) produce identical streams, so work split across
  /// any number of workers yields the same per-index results.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index);

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1p-53;
  }

  /// Uniform on the open interval (0, 1).
  double open01() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1p-53;
  }

  /// Exponential(1) variate, strictly positive.
  double exponential();

  /// Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi);

  /// Index drawn from a finite distribution by inverse CDF.
  int sample(const Dist& dist);

  /// Symmetric Dirichlet(1) weights: normalized i.i.d. Exponential(1)
  /// variates. Full support with probability one.
  std::vector<double> dirichlet(int size);

 private:
  std::mt19937_64 gen_;
};

}  // namespace cicc
