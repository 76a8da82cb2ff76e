#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "cicc/code_types.hpp"
#include "cicc/prob.hpp"

namespace cicc {

/// Ingredients of the cumulant-style exponent
///
///   psi(theta) = log sum_w P(w) sum_z
///                  ( sum_x inner(x|w) outer(z|x,w)^(1+theta) )
///                  * denom(z|w)^(-theta),
///
/// where w ranges over the prior's cells, inner conditions on the listed
/// prior axes, outer conditions on prior axes and/or the inner output, and
/// denom(z|w) = sum_x inner(x|w) outer(z|x,w) is the inner-marginalized
/// channel. psi(0) = 0 and psi'(0) is the conditional mutual information
/// I(inner output; outer output | prior axes).
struct PsiSpec {
  Joint prior;                            // may have zero axes (unconditioned form)
  Channel inner;
  std::vector<std::string> inner_inputs;  // prior axis names feeding `inner`
  std::string inner_axis;                 // name of the inner output coordinate
  Channel outer;
  std::vector<std::string> outer_inputs;  // prior axes and/or inner_axis, in order
  std::string output_axis;                // name of the outer output coordinate
};

/// Evaluates psi(theta) for theta in (0, 1].
double psi(double theta, const PsiSpec& spec);

struct PsiDerivative {
  double finite_difference;  // one-sided second-order estimate of psi'(0)
  double mutual_info;        // the matching conditional mutual information
};

/// psi'(0) two ways: the forward second-order finite difference
/// (4 psi(h) - psi(2h)) / (2h) with h = 1e-4, and the conditional mutual
/// information it must equal. The two agree within 1e-6 relative error.
PsiDerivative psi_prime_at_zero(const PsiSpec& spec);

/// Exponent governing the dummy-randomness term of the leakage bound:
/// prior P_{UVX2}, inner P_{X1|V}, outer P_{Z|X1X2}.
PsiSpec dummy_rate_spec(const InputDesign& design, const Channel& pz);

/// Exponent governing the private-payload term: prior P_{UX2},
/// inner P_{V|UX2}, outer P_{Z|UVX2}.
PsiSpec private_rate_spec(const InputDesign& design, const Channel& pz);

/// Joint over (prior axes, inner output, outer output) induced by a spec;
/// used for the mutual-information side of psi_prime_at_zero.
Joint psi_spec_joint(const PsiSpec& spec);

/// Two-term upper bound on the expected secrecy leakage of a random
/// codebook at blocklength n:
///   exp(n psi(theta))   / (theta  * nA^theta)
/// + exp(n psi2(theta2)) / (theta2 * nJ^theta2),
/// using i.i.d. additivity (the n-letter psi is n times the single-letter
/// one). nA is the dummy-randomness alphabet size, nJ the private-payload
/// share.
double leakage_bound(double nA, double nJ, double theta, double theta2,
                     const InputDesign& design, const Channel& pz, int n);

struct ThetaOpt {
  double theta = 1.0;
  double theta2 = 1.0;
  double bound = 0.0;
};

/// Minimizes leakage_bound over (0,1]^2. The two terms are separable, so
/// each parameter is optimized by a deterministic grid-plus-golden-section
/// line search.
ThetaOpt optimize_theta(double nA, double nJ, const InputDesign& design, const Channel& pz,
                        int n);

/// Deterministic 1-D minimizer on (0,1]: coarse grid then golden-section
/// refinement around the best grid cell.
double minimize_on_unit_interval(const std::function<double(double)>& f, double* best_arg);

/// Union-bound decoding-error estimates at blocklength n:
///   bob = P(T1^c) + P(T2^c) + P(T3^c)
///         + J S e^{-a1} + I J S e^{-a2} + K I J S e^{-a3}
///   eve = P(T0^c) + K I e^{-a0}
/// with the set probabilities computed exactly on the n-fold product law.
std::pair<double, double> error_bounds(const CodeSizes& sizes, const Thresholds& th,
                                       const InputDesign& design, const Channel& py,
                                       const Channel& pz, int n);

}  // namespace cicc
