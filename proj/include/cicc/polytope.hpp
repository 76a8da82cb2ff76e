#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cicc/errors.hpp"

namespace cicc {

using Rational = boost::multiprecision::cpp_rational;

/// Nearest multiple of 1e-12, exact thereafter. This is the only place a
/// floating-point value enters the exact-arithmetic layer.
Rational to_rational(double x);
double to_double(const Rational& r);

/// One inequality: coeffs . vars <= rhs. `tag` records where it came from
/// and never affects comparisons.
struct Inequality {
  std::vector<Rational> coeffs;
  Rational rhs;
  std::string tag;
};

Inequality add_inequalities(const Inequality& a, const Inequality& b);

/// System of <=-inequalities over named variables. All arithmetic on systems
/// is exact; no floating-point operation happens after construction.
struct LinearSystem {
  std::vector<std::string> variables;
  std::vector<Inequality> inequalities;

  int var_index(const std::string& name) const;  // UnknownVariable if absent
  std::size_t size() const { return inequalities.size(); }
};

/// Scales every inequality by the positive rational that makes the variable
/// coefficients coprime integers, drops vacuous rows (0 <= nonnegative),
/// normalizes contradictions to 0 <= -1, removes exact duplicates, and sorts
/// deterministically. Idempotent.
LinearSystem canonicalize(const LinearSystem& sys);

/// True when the two canonical forms are identical ignoring tags.
bool same_canonical(const LinearSystem& a, const LinearSystem& b);

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpResult {
  LpStatus status;
  Rational value;  // meaningful only when Optimal
};

/// Exact rational simplex (Bland's rule): maximize objective . vars subject
/// to the system, variables unrestricted in sign.
LpResult maximize(const LinearSystem& sys, const std::vector<Rational>& objective);

bool feasible(const LinearSystem& sys);

/// True iff the system implies the inequality: the exact maximum of its
/// left-hand side subject to the system is <= its right-hand side.
/// Unbounded means not redundant; an infeasible system implies everything.
bool is_redundant(const LinearSystem& sys, const Inequality& ineq);

/// Removes inequalities implied by the rest, ascending over the canonical
/// order. Infeasible systems are returned canonicalized but unpruned, since
/// dropping rows could make them feasible.
LinearSystem remove_redundant(const LinearSystem& sys);

/// Fourier-Motzkin elimination of one variable: every upper bound paired
/// with every lower bound, rows not involving the variable carried over.
/// The result is canonicalized and pruned.
LinearSystem fm_eliminate(const LinearSystem& sys, const std::string& var);

/// Mutual implication: every inequality of each system is redundant with
/// respect to the other. Variable sets must coincide (order may differ).
bool equivalent(const LinearSystem& a, const LinearSystem& b);

/// Line-oriented text form, one inequality per line:
///   c1*v1 + c2*v2 + ... <= p/q
std::string to_text(const LinearSystem& sys);

}  // namespace cicc
