#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cicc/code_types.hpp"
#include "cicc/prob.hpp"
#include "cicc/region.hpp"

namespace cicc {

/// Nested random codebook at blocklength n: cloud centers x2[k], u[k][i],
/// satellites v[k][i][j][s] and channel inputs x1[k][i][j][s][a], generated
/// i.i.d. per letter in that hierarchical order. Regenerating with the same
/// (design, sizes, n, seed) reproduces the arrays exactly.
class Codebook {
 public:
  Codebook(const InputDesign& design, const CodeSizes& sizes, int n, std::uint64_t seed);

  const CodeSizes& sizes() const { return sizes_; }
  int n() const { return n_; }
  std::uint64_t seed() const { return seed_; }
  const InputDesign& design() const { return design_; }

  std::span<const int> x2(long long k) const;
  std::span<const int> u(long long k, long long i) const;
  std::span<const int> v(long long k, long long i, long long j, long long s) const;
  std::span<const int> x1(long long k, long long i, long long j, long long s, long long a) const;

 private:
  InputDesign design_;
  CodeSizes sizes_;
  int n_;
  std::uint64_t seed_;
  std::vector<int> x2_, u_, v_, x1_;
};

Codebook gen_codebook(const InputDesign& design, const CodeSizes& sizes, int n,
                      std::uint64_t seed);

/// Per-letter log-likelihood-ratio tables for the four decoding sets,
/// derived from the design factors so they are defined for every symbol
/// combination (including mixed codeword tuples that the joint law never
/// produces). Zero numerators map to -inf, zero denominators under a
/// positive numerator to +inf.
class DecoderTables {
 public:
  DecoderTables(const InputDesign& design, const Channel& py, const Channel& pz);

  double llr0(int u, int x2, int z) const;              // cloud vs Z marginal
  double llr1(int u, int v, int x2, int y) const;       // satellite vs cloud
  double llr2(int u, int v, int x2, int y) const;       // satellite vs X2 level
  double llr3(int u, int v, int x2, int y) const;       // satellite vs Y marginal

  int u_size() const { return nu_; }
  int v_size() const { return nv_; }
  int x2_size() const { return nx2_; }

 private:
  int nu_, nv_, nx2_, ny_, nz_;
  std::vector<double> l0_, l1_, l2_, l3_;
};

enum class TSet { T0, T1, T2, T3 };

/// n-letter threshold test for one decoding set. For T0 pass (u, x2, z)
/// sequences; for T1..T3 pass (u, v, x2, y). A letter with zero numerator
/// puts the tuple outside the set for any finite threshold; a zero
/// denominator under positive numerator puts it inside.
bool t_membership(std::span<const int> useq, std::span<const int> vseq,
                  std::span<const int> x2seq, std::span<const int> out_seq,
                  const DecoderTables& tables, const Thresholds& th, TSet which);

/// Convenience overload building the ratio tables on the fly.
bool t_membership(std::span<const int> useq, std::span<const int> vseq,
                  std::span<const int> x2seq, std::span<const int> out_seq,
                  const InputDesign& design, const Channel& py, const Channel& pz,
                  const Thresholds& th, TSet which);

struct MessageIndex {
  long long k = 0, i = 0, j = 0, s = 0;
  friend bool operator==(const MessageIndex&, const MessageIndex&) = default;
};

/// Bob's decoder: the unique (k,i,j,s) whose tuple passes all three tests
/// while every other tuple fails at least one; nullopt when no index or
/// more than one qualifies.
std::optional<MessageIndex> bob_decode(std::span<const int> y_seq, const Codebook& cb,
                                       const DecoderTables& tables, const Thresholds& th);

/// Eve's indirect decoder: k is returned when some i puts (u_{ki}, x2_k, z)
/// into the cloud test and no other cloud index has any hit.
std::optional<long long> eve_decode(std::span<const int> z_seq, const Codebook& cb,
                                    const DecoderTables& tables, const Thresholds& th);

struct ExactMetrics {
  double perr_bob = 0.0;
  double perr_eve = 0.0;
  double leakage = 0.0;  // I(S; Z^n) for this codebook, nats
};

/// Exact decoding-error probabilities and exact secrecy leakage for one
/// codebook: full sums over messages, dummy values, and channel output
/// sequences. No sampling is involved.
ExactMetrics exact_metrics(const Codebook& cb, const Channel& py, const Channel& pz,
                           const DecoderTables& tables, const Thresholds& th);

struct ExperimentReport {
  CodeSizes sizes;
  Thresholds thresholds;
  int n = 1;
  double delta = 0.0;
  double slack_r1 = 0.0;  // decoding-split rate used for |I| (see experiment)
  std::vector<ExactMetrics> trials;
  double mean_bob = 0.0, se_bob = 0.0;
  double mean_eve = 0.0, se_eve = 0.0;
  double mean_leak = 0.0, se_leak = 0.0;
  double bound_bob = 0.0, bound_eve = 0.0, bound_leak = 0.0;
  double theta = 1.0, theta2 = 1.0;  // leakage-bound optimizers
};

/// Monte Carlo over independent codebooks at rates (rd, r0, r1, rs):
/// message-set sizes are floor(exp(n (rate +/- delta-offsets))), thresholds
/// are n (I - delta) for the matching information quantities, and the
/// per-codebook metrics are exact. The split rate r1s used for |I| is chosen
/// as the midpoint of its feasible interval given the rates (clamped below
/// by delta so |I| >= 1), or delta when the interval is empty.
ExperimentReport experiment(const InputDesign& design, const Channel& py, const Channel& pz,
                            const RateQuadruple& rates, double delta, int n, int codebooks,
                            std::uint64_t seed, int threads = 1);

}  // namespace cicc
