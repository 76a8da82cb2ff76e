#include "cicc/region.hpp"

#include <algorithm>
#include <cmath>

#include "cicc/parallel.hpp"
#include "cicc/rng.hpp"

namespace cicc {

namespace {

double clamp_info(double v, const char* what) {
  require(v >= -kIdentTol, ErrorKind::ShapeMismatch,
          std::string(what) + " came out negative beyond tolerance");
  return std::max(v, 0.0);
}

}  // namespace

InfoVector info_vector(const InputDesign& design, const Channel& py, const Channel& pz) {
  const Joint j = build_joint(design, py, pz);
  InfoVector iv;
  iv.iuxy = clamp_info(cond_mutual_info(j, {"U", "X2"}, {"Y"}), "I(U,X2;Y)");
  iv.iuxz = clamp_info(cond_mutual_info(j, {"U", "X2"}, {"Z"}), "I(U,X2;Z)");
  iv.iuvy_x2 = clamp_info(cond_mutual_info(j, {"U", "V"}, {"Y"}, {"X2"}), "I(U,V;Y|X2)");
  iv.ivy_ux2 = clamp_info(cond_mutual_info(j, {"V"}, {"Y"}, {"U", "X2"}), "I(V;Y|U,X2)");
  iv.ivz_ux2 = clamp_info(cond_mutual_info(j, {"V"}, {"Z"}, {"U", "X2"}), "I(V;Z|U,X2)");
  iv.iuvxy = clamp_info(cond_mutual_info(j, {"U", "V", "X2"}, {"Y"}), "I(U,V,X2;Y)");
  iv.ix1z_ux2 = clamp_info(cond_mutual_info(j, {"X1"}, {"Z"}, {"U", "X2"}), "I(X1;Z|U,X2)");
  iv.ix1z_uvx2 =
      clamp_info(cond_mutual_info(j, {"X1"}, {"Z"}, {"U", "V", "X2"}), "I(X1;Z|U,V,X2)");

  require(iv.iuvy_x2 >= iv.ivy_ux2 - kIdentTol, ErrorKind::ShapeMismatch,
          "chain rule violated: I(U,V;Y|X2) < I(V;Y|U,X2)");
  require(std::fabs(iv.iuvxy - (iv.iuxy + iv.ivy_ux2)) <= kIdentTol, ErrorKind::ShapeMismatch,
          "chain rule violated: I(U,V,X2;Y) != I(U,X2;Y) + I(V;Y|U,X2)");
  require(std::fabs(iv.ix1z_ux2 - (iv.ivz_ux2 + iv.ix1z_uvx2)) <= kIdentTol,
          ErrorKind::ShapeMismatch,
          "Markov identity violated: I(X1;Z|U,X2) != I(V;Z|U,X2) + I(X1;Z|U,V,X2)");
  return iv;
}

RationalInfo RationalInfo::from(const InfoVector& iv) {
  RationalInfo r;
  r.iuxy = to_rational(iv.iuxy);
  r.iuxz = to_rational(iv.iuxz);
  r.iuvy_x2 = to_rational(iv.iuvy_x2);
  r.ivy_ux2 = to_rational(iv.ivy_ux2);
  r.ivz_ux2 = to_rational(iv.ivz_ux2);
  r.ix1z_uvx2 = to_rational(iv.ix1z_uvx2);
  return r;
}

namespace {

// Little builder so the systems below read like the inequalities they are.
class SystemBuilder {
 public:
  explicit SystemBuilder(std::vector<std::string> vars) { sys_.variables = std::move(vars); }

  // terms: list of (variable name, coefficient).
  void leq(std::initializer_list<std::pair<const char*, int>> terms, Rational rhs,
           std::string tag) {
    Inequality iq;
    iq.coeffs.assign(sys_.variables.size(), Rational(0));
    for (const auto& [name, coef] : terms)
      iq.coeffs[static_cast<std::size_t>(sys_.var_index(name))] = coef;
    iq.rhs = std::move(rhs);
    iq.tag = std::move(tag);
    sys_.inequalities.push_back(std::move(iq));
  }

  void geq(std::initializer_list<std::pair<const char*, int>> terms, Rational rhs,
           std::string tag) {
    Inequality iq;
    iq.coeffs.assign(sys_.variables.size(), Rational(0));
    for (const auto& [name, coef] : terms)
      iq.coeffs[static_cast<std::size_t>(sys_.var_index(name))] = -coef;
    iq.rhs = -rhs;
    iq.tag = std::move(tag);
    sys_.inequalities.push_back(std::move(iq));
  }

  void nonneg(const char* name) { geq({{name, 1}}, Rational(0), std::string(name) + " >= 0"); }

  LinearSystem take() { return canonicalize(sys_); }

 private:
  LinearSystem sys_;
};

LinearSystem region_like(const InfoVector& iv, bool keep_r1_rd_bound) {
  const RationalInfo a = RationalInfo::from(iv);
  SystemBuilder b({"rd", "r0", "r1", "rs"});
  b.leq({{"r0", 1}}, a.iuxy, "R0 <= I(U,X2;Y)");
  b.leq({{"r0", 1}}, a.iuxz, "R0 <= I(U,X2;Z)");
  b.leq({{"r1", 1}, {"rs", 1}}, a.iuvy_x2, "R1+Rs <= I(U,V;Y|X2)");
  b.leq({{"r0", 1}, {"r1", 1}, {"rs", 1}}, a.iuvxy(), "R0+R1+Rs <= I(U,V,X2;Y)");
  b.leq({{"r0", 1}, {"r1", 1}, {"rs", 1}}, a.ivy_ux2 + a.iuxz,
        "R0+R1+Rs <= I(V;Y|U,X2)+I(U,X2;Z)");
  b.leq({{"rs", 1}}, a.ivy_ux2 - a.ivz_ux2, "Rs <= I(V;Y|U,X2)-I(V;Z|U,X2)");
  if (keep_r1_rd_bound)
    b.geq({{"r1", 1}, {"rd", 1}}, a.ix1z_ux2(), "R1+Rd >= I(X1;Z|U,X2)");
  b.geq({{"rd", 1}}, a.ix1z_uvx2, "Rd >= I(X1;Z|U,V,X2)");
  for (const char* v : {"rd", "r0", "r1", "rs"}) b.nonneg(v);
  return b.take();
}

}  // namespace

LinearSystem capacity_region(const InfoVector& iv) { return region_like(iv, true); }

LinearSystem relaxed_region(const InfoVector& iv) { return region_like(iv, false); }

LinearSystem inner_bound_system(const InfoVector& iv) {
  const RationalInfo a = RationalInfo::from(iv);
  SystemBuilder b({"rd", "r0", "r1", "rs", "r1s"});
  b.leq({{"r0", 1}, {"r1s", 1}}, a.iuxz, "R0+r1s <= I(U,X2;Z)");
  b.leq({{"r1", 1}, {"r1s", -1}, {"rs", 1}}, a.ivy_ux2, "R1-r1s+Rs <= I(V;Y|U,X2)");
  b.leq({{"r1", 1}, {"rs", 1}}, a.iuvy_x2, "R1+Rs <= I(U,V;Y|X2)");
  b.leq({{"r0", 1}, {"r1", 1}, {"rs", 1}}, a.iuvxy(), "R0+R1+Rs <= I(U,V,X2;Y)");
  b.geq({{"r1", 1}, {"r1s", -1}}, a.ivz_ux2, "R1-r1s >= I(V;Z|U,X2)");
  b.geq({{"rd", 1}}, a.ix1z_uvx2, "Rd >= I(X1;Z|U,V,X2)");
  for (const char* v : {"rd", "r0", "r1", "rs", "r1s"}) b.nonneg(v);
  return b.take();
}

LinearSystem full_slack_system(const InfoVector& iv) {
  const RationalInfo a = RationalInfo::from(iv);
  SystemBuilder b({"rd", "r0", "r1", "rs", "r1s", "rds", "rss"});
  b.leq({{"r0", 1}, {"r1s", 1}}, a.iuxz, "R0+r1s <= I(U,X2;Z)");
  b.leq({{"r1", 1}, {"r1s", -1}, {"rds", 1}, {"rs", 1}}, a.ivy_ux2,
        "R1-r1s+rds+Rs <= I(V;Y|U,X2)");
  b.leq({{"r1", 1}, {"rds", 1}, {"rs", 1}}, a.iuvy_x2, "R1+rds+Rs <= I(U,V;Y|X2)");
  b.leq({{"r0", 1}, {"r1", 1}, {"rds", 1}, {"rs", 1}}, a.iuvxy(),
        "R0+R1+rds+Rs <= I(U,V,X2;Y)");
  b.geq({{"r1", 1}, {"r1s", -1}, {"rss", -1}, {"rds", 1}}, a.ivz_ux2,
        "R1-r1s-rss+rds >= I(V;Z|U,X2)");
  b.geq({{"rd", 1}, {"rds", -1}}, a.ix1z_uvx2, "Rd-rds >= I(X1;Z|U,V,X2)");
  for (const char* v : {"rd", "r0", "r1", "rs", "r1s", "rds", "rss"}) b.nonneg(v);
  return b.take();
}

LinearSystem project_no_randomness(const InfoVector& iv) {
  const RationalInfo a = RationalInfo::from(iv);
  SystemBuilder b({"r0", "r1", "rs"});
  b.leq({{"r0", 1}}, a.iuxy, "R0 <= I(U,X2;Y)");
  b.leq({{"r0", 1}}, a.iuxz, "R0 <= I(U,X2;Z)");
  b.leq({{"r1", 1}, {"rs", 1}}, a.iuvy_x2, "R1+Rs <= I(U,V;Y|X2)");
  b.leq({{"r0", 1}, {"r1", 1}, {"rs", 1}}, a.iuvxy(), "R0+R1+Rs <= I(U,V,X2;Y)");
  b.leq({{"r0", 1}, {"r1", 1}, {"rs", 1}}, a.ivy_ux2 + a.iuxz,
        "R0+R1+Rs <= I(V;Y|U,X2)+I(U,X2;Z)");
  b.leq({{"rs", 1}}, a.ivy_ux2 - a.ivz_ux2, "Rs <= I(V;Y|U,X2)-I(V;Z|U,X2)");
  for (const char* v : {"r0", "r1", "rs"}) b.nonneg(v);
  return b.take();
}

bool membership(const RateQuadruple& q, const LinearSystem& sys) {
  static const std::vector<std::string> rate_vars{"rd", "r0", "r1", "rs"};
  require(sys.variables.size() >= 4, ErrorKind::VariableMismatch,
          "system must be over at least (rd, r0, r1, rs)");
  for (std::size_t i = 0; i < 4; ++i)
    require(sys.variables[i] == rate_vars[i], ErrorKind::VariableMismatch,
            "system variables must start with (rd, r0, r1, rs)");
  const Rational vals[4] = {to_rational(q.rd), to_rational(q.r0), to_rational(q.r1),
                            to_rational(q.rs)};
  if (sys.variables.size() == 4) {
    for (const Inequality& iq : sys.inequalities) {
      Rational lhs = 0;
      for (std::size_t i = 0; i < 4; ++i) lhs += iq.coeffs[i] * vals[i];
      if (lhs > iq.rhs) return false;
    }
    return true;
  }
  // Slack variables present: fix the rates, decide feasibility over the rest.
  LinearSystem reduced;
  reduced.variables.assign(sys.variables.begin() + 4, sys.variables.end());
  for (const Inequality& iq : sys.inequalities) {
    Inequality r;
    r.coeffs.assign(iq.coeffs.begin() + 4, iq.coeffs.end());
    r.rhs = iq.rhs;
    for (std::size_t i = 0; i < 4; ++i) r.rhs -= iq.coeffs[i] * vals[i];
    r.tag = iq.tag;
    reduced.inequalities.push_back(std::move(r));
  }
  return feasible(reduced);
}

int u_cardinality_cap(int x1_size, int x2_size) { return x1_size * x2_size + 3; }

int v_cardinality_cap(int x1_size, int x2_size) {
  const int p = x1_size * x2_size;
  return p * p + 4 * p + 3;
}

std::vector<std::pair<InputDesign, InfoVector>> sample_designs(
    int x1_size, int x2_size, const Channel& py, const Channel& pz, int budget,
    std::uint64_t seed, int max_u, int max_v, int threads) {
  require(budget >= 1, ErrorKind::BadBudget, "budget must be >= 1");
  require(py.in_sizes() == (std::vector<int>{x1_size, x2_size}), ErrorKind::ShapeMismatch,
          "P(Y|X1,X2) conditioning must be (X1, X2)");
  require(pz.in_sizes() == (std::vector<int>{x1_size, x2_size}), ErrorKind::ShapeMismatch,
          "P(Z|X1,X2) conditioning must be (X1, X2)");
  const int cap_u = u_cardinality_cap(x1_size, x2_size);
  const int cap_v = v_cardinality_cap(x1_size, x2_size);
  // Caps are only ever lowered: anything larger cannot enlarge the region.
  const int u_hi = max_u <= 0 ? cap_u : std::min(max_u, cap_u);
  const int v_hi = max_v <= 0 ? cap_v : std::min(max_v, cap_v);

  std::vector<std::pair<InputDesign, InfoVector>> out;
  out.reserve(static_cast<std::size_t>(budget));
  for (int i = 0; i < budget; ++i) {
    // Placeholder entries so workers can write results by index.
    out.emplace_back(
        InputDesign(Dist({1.0}), Channel::from_rows({1}, {{1.0}}),
                    Channel::from_rows({1, 1}, {{1.0}}), Channel::from_rows({1}, {{1.0}})),
        InfoVector{});
  }
  parallel_for_index(static_cast<std::size_t>(budget), threads, [&](std::size_t i) {
    Rng rng(Rng::derive(seed, i));
    const int nu = rng.uniform_int(1, u_hi);
    const int nv = rng.uniform_int(1, v_hi);
    Dist px2 = Dist(rng.dirichlet(x2_size));
    std::vector<Dist> u_rows;
    for (int x2 = 0; x2 < x2_size; ++x2) u_rows.emplace_back(rng.dirichlet(nu));
    std::vector<Dist> v_rows;
    for (int r = 0; r < nu * x2_size; ++r) v_rows.emplace_back(rng.dirichlet(nv));
    std::vector<Dist> x1_rows;
    for (int v = 0; v < nv; ++v) x1_rows.emplace_back(rng.dirichlet(x1_size));
    InputDesign design(std::move(px2), Channel({x2_size}, std::move(u_rows)),
                       Channel({nu, x2_size}, std::move(v_rows)),
                       Channel({nv}, std::move(x1_rows)));
    InfoVector iv = info_vector(design, py, pz);
    out[i] = {std::move(design), iv};
  });
  return out;
}

RateQuadruple corner_point(const InfoVector& iv) {
  RateQuadruple q;
  q.rd = iv.ix1z_uvx2;
  q.r0 = 0.0;
  q.r1 = iv.ivz_ux2;
  // Backed off by a few rounding grains so the point also passes the
  // exact-rational membership test, not just floating substitution.
  q.rs = std::max(0.0, std::min(iv.ivy_ux2 - iv.ivz_ux2, iv.iuvy_x2 - iv.ivz_ux2) - 1e-11);
  return q;
}

namespace {

// The closed form the slack elimination is expected to reproduce, written
// with the same rational constants the slack system uses.
LinearSystem eliminated_form(const InfoVector& iv) {
  const RationalInfo a = RationalInfo::from(iv);
  SystemBuilder b({"rd", "r0", "r1", "rs"});
  b.leq({{"r0", 1}}, a.iuxz, "R0 <= I(U,X2;Z)");
  b.leq({{"r0", 1}, {"rs", 1}}, a.iuxy + a.ivy_ux2 - a.ivz_ux2,
        "R0+Rs <= I(U,X2;Y)+I(V;Y|U,X2)-I(V;Z|U,X2)");
  b.leq({{"r1", 1}, {"rs", 1}}, a.iuvy_x2, "R1+Rs <= I(U,V;Y|X2)");
  b.leq({{"r0", 1}, {"r1", 1}, {"rs", 1}}, a.iuvxy(), "R0+R1+Rs <= I(U,V,X2;Y)");
  b.leq({{"r0", 1}, {"r1", 1}, {"rs", 1}}, a.ivy_ux2 + a.iuxz,
        "R0+R1+Rs <= I(V;Y|U,X2)+I(U,X2;Z)");
  b.leq({{"rs", 1}}, a.ivy_ux2 - a.ivz_ux2, "Rs <= I(V;Y|U,X2)-I(V;Z|U,X2)");
  b.geq({{"r1", 1}, {"rd", 1}}, a.ix1z_ux2(), "R1+Rd >= I(X1;Z|U,X2)");
  b.geq({{"rd", 1}}, a.ix1z_uvx2, "Rd >= I(X1;Z|U,V,X2)");
  for (const char* v : {"rd", "r0", "r1", "rs"}) b.nonneg(v);
  return b.take();
}

Inequality rate_inequality(std::initializer_list<std::pair<const char*, int>> terms,
                           Rational rhs, std::string tag) {
  static const std::vector<std::string> vars{"rd", "r0", "r1", "rs"};
  Inequality iq;
  iq.coeffs.assign(4, Rational(0));
  for (const auto& [name, coef] : terms) {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == name) iq.coeffs[i] = coef;
  }
  iq.rhs = std::move(rhs);
  iq.tag = std::move(tag);
  return iq;
}

}  // namespace

ReductionReport verify_region_reduction(const InfoVector& iv) {
  ReductionReport rep;
  const RationalInfo a = RationalInfo::from(iv);

  LinearSystem sys = full_slack_system(iv);
  for (const char* slack : {"r1s", "rds", "rss"}) {
    sys = fm_eliminate(sys, slack);
    rep.stage_sizes.push_back(sys.size());
  }

  const LinearSystem expected = remove_redundant(eliminated_form(iv));
  const LinearSystem got = remove_redundant(sys);
  if (same_canonical(got, expected)) {
    rep.fm_matches = true;
  } else if (!feasible(got) && !feasible(expected)) {
    // Both empty: representations of an empty region need not coincide.
    rep.fm_matches = true;
    rep.detail += "empty region, matched by equivalence; ";
  } else {
    rep.detail += "eliminated system differs from the closed form; ";
  }

  // Certificate: the combined-rate inequality equals 1*(common-rate bound)
  // + 1*(secrecy bound), and becomes redundant once the former is added.
  const Inequality added = rate_inequality({{"r0", 1}}, a.iuxy, "R0 <= I(U,X2;Y)");
  const Inequality security =
      rate_inequality({{"rs", 1}}, a.ivy_ux2 - a.ivz_ux2, "Rs <= I(V;Y|U,X2)-I(V;Z|U,X2)");
  const Inequality combined =
      rate_inequality({{"r0", 1}, {"rs", 1}}, a.iuxy + a.ivy_ux2 - a.ivz_ux2,
                      "R0+Rs <= I(U,X2;Y)+I(V;Y|U,X2)-I(V;Z|U,X2)");
  const Inequality sum = add_inequalities(added, security);
  const bool sum_matches = sum.coeffs == combined.coeffs && sum.rhs == combined.rhs;

  LinearSystem augmented_sans = eliminated_form(iv);
  std::erase_if(augmented_sans.inequalities, [&](const Inequality& iq) {
    return iq.coeffs == combined.coeffs && iq.rhs == combined.rhs;
  });
  augmented_sans.inequalities.push_back(added);
  const bool implied = is_redundant(augmented_sans, combined);
  rep.certificate_ok = sum_matches && implied;
  if (!rep.certificate_ok) rep.detail += "certificate failed; ";

  LinearSystem augmented = sys;
  augmented.inequalities.push_back(added);
  rep.equivalent_to_region = equivalent(canonicalize(augmented), capacity_region(iv));
  if (!rep.equivalent_to_region) rep.detail += "augmented system differs from the region; ";
  return rep;
}

}  // namespace cicc
