#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cicc/polytope.hpp"
#include "cicc/prob.hpp"

namespace cicc {

/// The eight information quantities driving every rate-region system, all in
/// nats. Chain rules tie them together: I(U,V,X2;Y) = I(U,X2;Y) + I(V;Y|U,X2)
/// and, through the input Markov chain, I(X1;Z|U,X2) = I(V;Z|U,X2) +
/// I(X1;Z|U,V,X2). Construction checks those identities within kIdentTol.
struct InfoVector {
  double iuxy;        // I(U,X2; Y)
  double iuxz;        // I(U,X2; Z)
  double iuvy_x2;     // I(U,V; Y | X2)
  double ivy_ux2;     // I(V; Y | U,X2)
  double ivz_ux2;     // I(V; Z | U,X2)
  double iuvxy;       // I(U,V,X2; Y)
  double ix1z_ux2;    // I(X1; Z | U,X2)
  double ix1z_uvx2;   // I(X1; Z | U,V,X2)
};

struct RateQuadruple {
  double rd = 0.0;  // dummy-randomness rate
  double r0 = 0.0;  // common rate
  double r1 = 0.0;  // private rate
  double rs = 0.0;  // confidential rate
};

/// Computes all eight quantities from the full joint of a design.
InfoVector info_vector(const InputDesign& design, const Channel& py, const Channel& pz);

/// Exact-rational images of the independent quantities. Derived constants
/// (I(U,V,X2;Y), I(X1;Z|U,X2)) are composed from these by the exact chain
/// rules above, so algebraically identical constants are identical rationals
/// across every system built from the same InfoVector.
struct RationalInfo {
  Rational iuxy, iuxz, iuvy_x2, ivy_ux2, ivz_ux2, ix1z_uvx2;

  Rational iuvxy() const { return iuxy + ivy_ux2; }
  Rational ix1z_ux2() const { return ivz_ux2 + ix1z_uvx2; }

  static RationalInfo from(const InfoVector& iv);
};

/// Full rate-region system over (rd, r0, r1, rs):
///   r0 <= min of the two common-rate bounds, r1 + rs and r0 + r1 + rs sum
///   bounds, the secrecy bound rs <= I(V;Y|U,X2) - I(V;Z|U,X2) kept exactly
///   as computed (a negative bound simply forbids rs >= 0), and the two
///   randomness lower bounds on rd and r1 + rd.
LinearSystem capacity_region(const InfoVector& iv);

/// Same system with the r1 + rd lower bound removed (private payload doubles
/// as dummy randomness).
LinearSystem relaxed_region(const InfoVector& iv);

/// Inner-bound system with the single decoding-split slack r1s, over
/// (rd, r0, r1, rs, r1s).
LinearSystem inner_bound_system(const InfoVector& iv);

/// Inner-bound system with all three slack variables (r1s, rds, rss), over
/// (rd, r0, r1, rs, r1s, rds, rss). Eliminating the slacks recovers
/// capacity_region; see verify_region_reduction.
LinearSystem full_slack_system(const InfoVector& iv);

/// No-randomness projection over (r0, r1, rs): the rd bounds drop out.
LinearSystem project_no_randomness(const InfoVector& iv);

/// True iff the quadruple lies in the system. The variables must start with
/// (rd, r0, r1, rs); any further variables are treated as existential slacks
/// and membership becomes exact-LP feasibility over them.
bool membership(const RateQuadruple& q, const LinearSystem& sys);

/// Cardinality caps sufficient for the full region.
int u_cardinality_cap(int x1_size, int x2_size);
int v_cardinality_cap(int x1_size, int x2_size);

/// Pseudorandom input designs with Dirichlet(1) factor rows, |U| and |V|
/// uniform on [1, cap]. Deterministic per (seed, index), independent of the
/// worker count.
std::vector<std::pair<InputDesign, InfoVector>> sample_designs(
    int x1_size, int x2_size, const Channel& py, const Channel& pz, int budget,
    std::uint64_t seed, int max_u = 0, int max_v = 0, int threads = 1);

/// A representative achievable corner: minimum dummy randomness, no common
/// rate, private rate equal to the satellite leakage I(V;Z|U,X2), and the
/// largest confidential rate the remaining constraints allow. Lies in
/// capacity_region whenever the secrecy bound is nonnegative.
RateQuadruple corner_point(const InfoVector& iv);

/// Report of the slack-elimination verification:
///  (i)  eliminating (r1s, rds, rss) from full_slack_system reproduces the
///       closed seven-inequality form (after exact redundancy pruning on
///       both sides);
///  (ii) the combined-rate inequality produced by the elimination is the
///       coefficient-(1,1) sum of the added common-rate bound and the
///       secrecy bound, and is redundant once that bound is added;
///  (iii) the eliminated-and-augmented system is equivalent to
///       capacity_region by mutual exact-LP implication.
struct ReductionReport {
  bool fm_matches = false;
  bool certificate_ok = false;
  bool equivalent_to_region = false;
  std::vector<std::size_t> stage_sizes;  // system size after each elimination
  std::string detail;

  bool all_ok() const { return fm_matches && certificate_ok && equivalent_to_region; }
};

ReductionReport verify_region_reduction(const InfoVector& iv);

}  // namespace cicc
