#include "cicc/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cicc {

using boost::multiprecision::cpp_int;

Rational to_rational(double x) {
  require(std::isfinite(x), ErrorKind::ShapeMismatch, "non-finite constant");
  const double scaled = std::nearbyint(x * 1e12);
  require(std::fabs(scaled) < 9.0e18, ErrorKind::TooLarge, "constant too large to rationalize");
  return Rational(static_cast<long long>(scaled), 1'000'000'000'000LL);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Inequality add_inequalities(const Inequality& a, const Inequality& b) {
  require(a.coeffs.size() == b.coeffs.size(), ErrorKind::DimensionMismatch,
          "adding inequalities of different widths");
  Inequality s;
  s.coeffs.resize(a.coeffs.size());
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) s.coeffs[i] = a.coeffs[i] + b.coeffs[i];
  s.rhs = a.rhs + b.rhs;
  s.tag = a.tag.empty() ? b.tag : a.tag;
  return s;
}

int LinearSystem::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < variables.size(); ++i)
    if (variables[i] == name) return static_cast<int>(i);
  fail(ErrorKind::UnknownVariable, "no variable named '" + name + "'");
}

namespace {

void check_width(const LinearSystem& sys) {
  for (const Inequality& iq : sys.inequalities)
    require(iq.coeffs.size() == sys.variables.size(), ErrorKind::DimensionMismatch,
            "coefficient count does not match variable count");
}

// Scale by the positive rational making variable coefficients coprime
// integers. An inequality direction only survives positive scaling, so the
// sign pattern is left as-is.
Inequality scaled(const Inequality& iq) {
  cpp_int den_lcm = 1;
  for (const Rational& c : iq.coeffs)
    den_lcm = lcm(den_lcm, denominator(c));
  cpp_int g = 0;
  for (const Rational& c : iq.coeffs)
    g = gcd(g, cpp_int(numerator(c) * (den_lcm / denominator(c))));
  if (g == 0) {
    // Constant row: normalize to 0 <= 0 or 0 <= -1.
    Inequality out = iq;
    out.rhs = iq.rhs < 0 ? Rational(-1) : Rational(0);
    return out;
  }
  const Rational scale(den_lcm, g);
  Inequality out;
  out.coeffs.resize(iq.coeffs.size());
  for (std::size_t i = 0; i < iq.coeffs.size(); ++i) out.coeffs[i] = iq.coeffs[i] * scale;
  out.rhs = iq.rhs * scale;
  out.tag = iq.tag;
  return out;
}

bool lex_less(const Inequality& a, const Inequality& b) {
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] != b.coeffs[i]) return a.coeffs[i] < b.coeffs[i];
  }
  return a.rhs < b.rhs;
}

bool same_row(const Inequality& a, const Inequality& b) {
  return a.coeffs == b.coeffs && a.rhs == b.rhs;
}

bool is_zero_row(const Inequality& iq) {
  for (const Rational& c : iq.coeffs)
    if (c != 0) return false;
  return true;
}

}  // namespace

LinearSystem canonicalize(const LinearSystem& sys) {
  check_width(sys);
  LinearSystem out;
  out.variables = sys.variables;
  for (const Inequality& iq : sys.inequalities) {
    Inequality s = scaled(iq);
    if (is_zero_row(s) && s.rhs >= 0) continue;  // vacuously true
    out.inequalities.push_back(std::move(s));
  }
  std::stable_sort(out.inequalities.begin(), out.inequalities.end(), lex_less);
  auto last = std::unique(out.inequalities.begin(), out.inequalities.end(), same_row);
  out.inequalities.erase(last, out.inequalities.end());
  return out;
}

bool same_canonical(const LinearSystem& a, const LinearSystem& b) {
  if (a.variables != b.variables) return false;
  const LinearSystem ca = canonicalize(a);
  const LinearSystem cb = canonicalize(b);
  if (ca.size() != cb.size()) return false;
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (!same_row(ca.inequalities[i], cb.inequalities[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Exact simplex. Free variables are split as x = x+ - x-; each row gets a
// slack; rows with negative right-hand sides get an artificial variable and
// a phase-1 objective drives them out. Bland's rule both for entering
// (smallest eligible column) and leaving (smallest basic column among
// minimum ratios) guarantees termination.
// ---------------------------------------------------------------------------

namespace {

class SimplexTableau {
 public:
  SimplexTableau(const LinearSystem& sys) {
    const std::size_t n = sys.variables.size();
    const std::size_t m = sys.inequalities.size();
    ncols_ = 2 * n + m;
    rows_.assign(m, std::vector<Rational>(ncols_, Rational(0)));
    rhs_.assign(m, Rational(0));
    basis_.assign(m, 0);
    first_artificial_ = ncols_;

    std::vector<std::size_t> negative_rows;
    for (std::size_t i = 0; i < m; ++i) {
      const Inequality& iq = sys.inequalities[i];
      for (std::size_t v = 0; v < n; ++v) {
        rows_[i][2 * v] = iq.coeffs[v];
        rows_[i][2 * v + 1] = -iq.coeffs[v];
      }
      rows_[i][2 * n + i] = 1;  // slack
      rhs_[i] = iq.rhs;
      basis_[i] = 2 * n + i;
      if (rhs_[i] < 0) negative_rows.push_back(i);
    }
    if (!negative_rows.empty()) {
      const std::size_t extra = negative_rows.size();
      for (auto& row : rows_) row.resize(ncols_ + extra, Rational(0));
      for (std::size_t k = 0; k < extra; ++k) {
        const std::size_t i = negative_rows[k];
        for (Rational& c : rows_[i]) c = -c;
        rhs_[i] = -rhs_[i];
        rows_[i][ncols_ + k] = 1;
        basis_[i] = ncols_ + k;
      }
      ncols_ += extra;
    }
  }

  bool needs_phase1() const { return first_artificial_ < ncols_; }

  // Returns false when the problem is infeasible.
  bool run_phase1() {
    std::vector<Rational> obj(ncols_, Rational(0));
    for (std::size_t c = first_artificial_; c < ncols_; ++c) obj[c] = -1;
    Rational z0 = 0;
    eliminate_basics(obj, z0);
    optimize(obj, z0);  // bounded above by zero, never unbounded
    if (z0 < 0) return false;
    drive_out_artificials();
    return true;
  }

  // Maximizes the structural objective; the objective vector is over the
  // original free variables.
  LpResult run_phase2(const std::vector<Rational>& objective) {
    std::vector<Rational> obj(ncols_, Rational(0));
    for (std::size_t v = 0; v < objective.size(); ++v) {
      obj[2 * v] = objective[v];
      obj[2 * v + 1] = -objective[v];
    }
    Rational z0 = 0;
    eliminate_basics(obj, z0);
    if (!optimize(obj, z0)) return {LpStatus::Unbounded, Rational(0)};
    return {LpStatus::Optimal, z0};
  }

 private:
  void pivot(std::size_t r, std::size_t c) {
    const Rational piv = rows_[r][c];
    for (Rational& x : rows_[r]) x /= piv;
    rhs_[r] /= piv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r) continue;
      const Rational f = rows_[i][c];
      if (f == 0) continue;
      for (std::size_t j = 0; j < ncols_; ++j) rows_[i][j] -= f * rows_[r][j];
      rhs_[i] -= f * rhs_[r];
    }
    basis_[r] = c;
  }

  void eliminate_basics(std::vector<Rational>& obj, Rational& z0) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational f = obj[basis_[i]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < ncols_; ++j) obj[j] -= f * rows_[i][j];
      z0 += f * rhs_[i];
    }
  }

  // Returns false on unboundedness. Artificial columns never enter: once an
  // artificial leaves the basis it is dead, and it starts basic.
  bool optimize(std::vector<Rational>& obj, Rational& z0) {
    const std::size_t limit = first_artificial_;
    for (;;) {
      std::size_t enter = ncols_;
      for (std::size_t c = 0; c < limit; ++c) {
        if (obj[c] > 0) {
          enter = c;
          break;
        }
      }
      if (enter == ncols_) return true;
      std::size_t leave = rows_.size();
      Rational best_ratio = 0;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i][enter] <= 0) continue;
        const Rational ratio = rhs_[i] / rows_[i][enter];
        if (leave == rows_.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == rows_.size()) return false;
      const Rational f = obj[enter];
      pivot(leave, enter);
      for (std::size_t j = 0; j < ncols_; ++j) obj[j] -= f * rows_[leave][j];
      z0 += f * rhs_[leave];
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] < first_artificial_) continue;
      std::size_t c = first_artificial_;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (rows_[i][j] != 0) {
          c = j;
          break;
        }
      }
      if (c < first_artificial_) pivot(i, c);
      // Otherwise the row reads 0 = 0 over structural columns; it can stay
      // with the artificial basic at level zero because artificial columns
      // are never allowed to re-enter.
    }
  }

  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> basis_;
  std::size_t ncols_;
  std::size_t first_artificial_;
};

}  // namespace

LpResult maximize(const LinearSystem& sys, const std::vector<Rational>& objective) {
  check_width(sys);
  require(objective.size() == sys.variables.size(), ErrorKind::DimensionMismatch,
          "objective width does not match variable count");
  SimplexTableau tableau(sys);
  if (tableau.needs_phase1() && !tableau.run_phase1())
    return {LpStatus::Infeasible, Rational(0)};
  return tableau.run_phase2(objective);
}

bool feasible(const LinearSystem& sys) {
  return maximize(sys, std::vector<Rational>(sys.variables.size(), Rational(0))).status !=
         LpStatus::Infeasible;
}

bool is_redundant(const LinearSystem& sys, const Inequality& ineq) {
  require(ineq.coeffs.size() == sys.variables.size(), ErrorKind::DimensionMismatch,
          "inequality width does not match variable count");
  const LpResult r = maximize(sys, ineq.coeffs);
  switch (r.status) {
    case LpStatus::Infeasible: return true;
    case LpStatus::Unbounded: return false;
    case LpStatus::Optimal: return r.value <= ineq.rhs;
  }
  return false;
}

LinearSystem remove_redundant(const LinearSystem& sys) {
  LinearSystem out = canonicalize(sys);
  if (!feasible(out)) return out;
  for (std::size_t i = 0; i < out.inequalities.size();) {
    LinearSystem rest = out;
    rest.inequalities.erase(rest.inequalities.begin() + static_cast<std::ptrdiff_t>(i));
    if (is_redundant(rest, out.inequalities[i])) {
      out = std::move(rest);
    } else {
      ++i;
    }
  }
  return out;
}

LinearSystem fm_eliminate(const LinearSystem& sys, const std::string& var) {
  check_width(sys);
  const int vi = sys.var_index(var);

  LinearSystem out;
  out.variables = sys.variables;
  out.variables.erase(out.variables.begin() + vi);

  auto strip = [&](const Inequality& iq) {
    Inequality r;
    r.coeffs = iq.coeffs;
    r.coeffs.erase(r.coeffs.begin() + vi);
    r.rhs = iq.rhs;
    r.tag = iq.tag;
    return r;
  };

  std::vector<const Inequality*> uppers, lowers;
  for (const Inequality& iq : sys.inequalities) {
    const Rational& c = iq.coeffs[static_cast<std::size_t>(vi)];
    if (c > 0) {
      uppers.push_back(&iq);
    } else if (c < 0) {
      lowers.push_back(&iq);
    } else {
      out.inequalities.push_back(strip(iq));
    }
  }
  for (const Inequality* u : uppers) {
    for (const Inequality* l : lowers) {
      const Rational cu = u->coeffs[static_cast<std::size_t>(vi)];
      const Rational cl = -l->coeffs[static_cast<std::size_t>(vi)];
      Inequality combo;
      combo.coeffs.resize(sys.variables.size());
      for (std::size_t k = 0; k < sys.variables.size(); ++k)
        combo.coeffs[k] = cl * u->coeffs[k] + cu * l->coeffs[k];
      combo.rhs = cl * u->rhs + cu * l->rhs;
      combo.tag = u->tag.empty() ? l->tag : u->tag;
      out.inequalities.push_back(strip(combo));
    }
  }
  return remove_redundant(out);
}

bool equivalent(const LinearSystem& a, const LinearSystem& b) {
  require(a.variables.size() == b.variables.size(), ErrorKind::VariableMismatch,
          "different variable counts");
  // Remap b's columns onto a's variable order.
  std::vector<int> map(b.variables.size());
  for (std::size_t i = 0; i < b.variables.size(); ++i) {
    bool found = false;
    for (std::size_t k = 0; k < a.variables.size(); ++k) {
      if (a.variables[k] == b.variables[i]) {
        map[i] = static_cast<int>(k);
        found = true;
        break;
      }
    }
    require(found, ErrorKind::VariableMismatch, "variable sets differ: '" + b.variables[i] + "'");
  }
  LinearSystem b2;
  b2.variables = a.variables;
  for (const Inequality& iq : b.inequalities) {
    Inequality r;
    r.coeffs.assign(a.variables.size(), Rational(0));
    for (std::size_t i = 0; i < iq.coeffs.size(); ++i)
      r.coeffs[static_cast<std::size_t>(map[i])] = iq.coeffs[i];
    r.rhs = iq.rhs;
    r.tag = iq.tag;
    b2.inequalities.push_back(std::move(r));
  }
  for (const Inequality& iq : b2.inequalities)
    if (!is_redundant(a, iq)) return false;
  for (const Inequality& iq : a.inequalities)
    if (!is_redundant(b2, iq)) return false;
  return true;
}

std::string to_text(const LinearSystem& sys) {
  check_width(sys);
  std::ostringstream os;
  for (const Inequality& iq : sys.inequalities) {
    bool first = true;
    for (std::size_t v = 0; v < sys.variables.size(); ++v) {
      if (iq.coeffs[v] == 0) continue;
      if (!first) os << " + ";
      os << iq.coeffs[v] << "*" << sys.variables[v];
      first = false;
    }
    if (first) os << "0";
    os << " <= " << iq.rhs << "\n";
  }
  return os.str();
}

}  // namespace cicc
