#pragma once

#include <cstdint>
#include <vector>

#include "cicc/prob.hpp"

namespace cicc {

/// One-shot superposition map for output-distribution simulation: m2 cloud
/// symbols v[i] drawn from P_V, then m1 channel inputs x[i][b] per cloud
/// drawn from P_{X|V}(.|v[i]). Reproducible from the seed.
struct ResolvabilityCode {
  int m1 = 1;
  int m2 = 1;
  std::vector<int> v;  // [m2]
  std::vector<int> x;  // [m2 * m1], row-major over (i, b)
  std::uint64_t seed = 0;

  int x_at(int i, int b) const { return x[static_cast<std::size_t>(i) * m1 + b]; }
};

ResolvabilityCode gen_map(const Dist& pv, const Channel& px_given_v, int m1, int m2,
                          std::uint64_t seed);

/// Output law of the map under a uniform seed: the equal-weight mixture of
/// the channel rows at every x[i][b].
Dist simulated_output(const ResolvabilityCode& code, const Channel& pz_given_x);

/// Exact D(simulated output || target output) where the target is the
/// response of the channel to px.
double divergence_to_target(const ResolvabilityCode& code, const Channel& pz_given_x,
                            const Dist& px);

/// Two-term upper bound on the expected divergence of a random map:
///   exp(psi(theta  | P_{Z|X}, P_{X|V}, P_V)) / (theta  m1^theta)
/// + exp(psi2(theta2))                        / (theta2 m2^theta2),
/// where psi2 is the unconditioned form
///   log sum_z ( sum_x P_X(x) P_{Z|X}(z|x)^(1+theta2) ) P_Z(z)^(-theta2).
double resolvability_bound(double theta, double theta2, int m1, int m2, const Dist& pv,
                           const Channel& px_given_v, const Channel& pz_given_x);

struct ResolvabilityOpt {
  double theta = 1.0;
  double theta2 = 1.0;
  double bound = 0.0;
};

/// Minimizes resolvability_bound over (0,1]^2 (separable, deterministic).
ResolvabilityOpt optimize_resolvability_bound(int m1, int m2, const Dist& pv,
                                              const Channel& px_given_v,
                                              const Channel& pz_given_x);

}  // namespace cicc
