#include <cmath>

#include <doctest.h>

#include "cicc/exponents.hpp"
#include "cicc/region.hpp"
#include "cicc/rng.hpp"
#include "test_util.hpp"

using namespace cicc;
using test::thrown_kind;

namespace {

// Straight transcription of the exponent sum for the dummy-randomness spec,
// independent of the PsiSpec machinery.
double psi_oracle_dummy(double theta, const InputDesign& d, const Channel& pz) {
  double total = 0.0;
  for (int u = 0; u < d.u_size(); ++u)
    for (int v = 0; v < d.v_size(); ++v)
      for (int x2 = 0; x2 < d.x2_size(); ++x2) {
        const int ux2[] = {u, x2};
        const double pw =
            d.p_x2[x2] * d.p_u_given_x2.row(x2)[u] * d.p_v_given_ux2.row(ux2)[v];
        for (int z = 0; z < pz.out_size(); ++z) {
          double bracket = 0.0, denom = 0.0;
          for (int x1 = 0; x1 < d.x1_size(); ++x1) {
            const int x1x2[] = {x1, x2};
            const double w = d.p_x1_given_v.row(v)[x1];
            bracket += w * std::pow(pz.prob(x1x2, z), 1.0 + theta);
            denom += w * pz.prob(x1x2, z);
          }
          if (bracket > 0.0) total += pw * bracket * std::pow(denom, -theta);
        }
      }
  return std::log(total);
}

}  // namespace

TEST_CASE("psi") {
  Rng rng(61);
  const InputDesign d = test::random_design(rng, 2, 3, 2, 2);
  const Channel pz = test::random_channel(rng, 2, 2, 2);
  const PsiSpec spec = dummy_rate_spec(d, pz);

  SUBCASE("vanishes as theta -> 0+") {
    CHECK(std::fabs(psi(1e-9, spec)) < 1e-8);
  }

  SUBCASE("identical channel rows give zero for all theta") {
    const Channel flat = test::constant_channel(2, 2, {0.25, 0.75});
    const PsiSpec s = dummy_rate_spec(d, flat);
    for (double theta : {0.1, 0.5, 1.0})
      CHECK(psi(theta, s) == doctest::Approx(0.0).epsilon(1e-13));
  }

  SUBCASE("matches the direct-summation oracle at theta = 0.5") {
    CHECK(psi(0.5, spec) == doctest::Approx(psi_oracle_dummy(0.5, d, pz)).epsilon(1e-12));
  }

  SUBCASE("theta out of range") {
    CHECK(thrown_kind([&] { psi(0.0, spec); }) == ErrorKind::ThetaOutOfRange);
    CHECK(thrown_kind([&] { psi(1.5, spec); }) == ErrorKind::ThetaOutOfRange);
    CHECK(thrown_kind([&] { psi(-0.2, spec); }) == ErrorKind::ThetaOutOfRange);
  }

  SUBCASE("convex in theta (midpoint check on a grid)") {
    for (int k = 1; k + 2 <= 100; ++k) {
      const double a = k / 100.0, b = (k + 2) / 100.0;
      const double mid = psi((a + b) / 2.0, spec);
      CHECK(mid <= 0.5 * (psi(a, spec) + psi(b, spec)) + 1e-9);
    }
  }

  SUBCASE("psi(theta)/theta approaches psi'(0) from above") {
    const PsiDerivative pd = psi_prime_at_zero(spec);
    const double r3 = psi(1e-3, spec) / 1e-3;
    const double r2 = psi(1e-2, spec) / 1e-2;
    CHECK(r3 <= r2 + 1e-9);
    CHECK(std::fabs(r3 - pd.mutual_info) < 1e-2);
  }
}

TEST_CASE("psi_prime_at_zero identities") {
  Rng rng(67);

  SUBCASE("independent outer channel") {
    const InputDesign d = test::random_design(rng, 2, 2, 2, 2);
    const Channel flat = test::constant_channel(2, 2, {0.6, 0.4});
    const PsiDerivative pd = psi_prime_at_zero(dummy_rate_spec(d, flat));
    CHECK(std::fabs(pd.finite_difference) < 1e-9);
    CHECK(pd.mutual_info == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("dummy-rate spec derivative equals I(X1;Z|U,V,X2)") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      Rng r(seed);
      const InputDesign d = test::random_design(r, 2, 3, 2, 2);
      const Channel py = test::random_channel(r, 2, 2, 2);
      const Channel pz = test::random_channel(r, 2, 2, 2);
      const PsiDerivative pd = psi_prime_at_zero(dummy_rate_spec(d, pz));
      const InfoVector iv = info_vector(d, py, pz);
      CHECK(pd.mutual_info == doctest::Approx(iv.ix1z_uvx2).epsilon(1e-10));
      CHECK(std::fabs(pd.finite_difference - pd.mutual_info) <=
            1e-6 * std::max(1.0, pd.mutual_info));
    }
  }

  SUBCASE("private-rate spec derivative equals I(V;Z|U,X2)") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      Rng r(seed + 100);
      const InputDesign d = test::random_design(r, 2, 3, 2, 2);
      const Channel py = test::random_channel(r, 2, 2, 2);
      const Channel pz = test::random_channel(r, 2, 2, 2);
      const PsiDerivative pd = psi_prime_at_zero(private_rate_spec(d, pz));
      const InfoVector iv = info_vector(d, py, pz);
      CHECK(pd.mutual_info == doctest::Approx(iv.ivz_ux2).epsilon(1e-10));
      CHECK(std::fabs(pd.finite_difference - pd.mutual_info) <=
            1e-6 * std::max(1.0, pd.mutual_info));
    }
  }
}

TEST_CASE("n-letter additivity of psi") {
  Rng rng(71);
  const InputDesign d = test::random_design(rng, 2, 2, 2, 2);
  const Channel pz = test::random_channel(rng, 2, 2, 2);
  const PsiSpec base = dummy_rate_spec(d, pz);
  for (int n : {2, 3}) {
    PsiSpec ext{product_extension(base.prior, n),
                channel_power(base.inner, n),
                base.inner_inputs,
                base.inner_axis,
                channel_power(base.outer, n),
                base.outer_inputs,
                base.output_axis};
    for (double theta : {0.3, 1.0}) {
      CHECK(psi(theta, ext) == doctest::Approx(n * psi(theta, base)).epsilon(1e-9));
    }
  }
}

TEST_CASE("leakage_bound") {
  Rng rng(73);
  const InputDesign d = test::random_design(rng, 2, 2, 2, 2);
  const Channel pz = test::random_channel(rng, 2, 2, 2);

  SUBCASE("independent eavesdropper reduces to the pure size terms") {
    const Channel flat = test::constant_channel(2, 2, {0.5, 0.5});
    const double b = leakage_bound(4, 8, 0.5, 0.25, d, flat, 3);
    const double expect =
        1.0 / (0.5 * std::pow(4.0, 0.5)) + 1.0 / (0.25 * std::pow(8.0, 0.25));
    CHECK(b == doctest::Approx(expect).epsilon(1e-12));
  }

  SUBCASE("monotone decay in the set sizes") {
    double prev = leakage_bound(2, 2, 0.5, 0.5, d, pz, 1);
    for (double m : {4.0, 8.0, 16.0, 64.0}) {
      const double cur = leakage_bound(m, m, 0.5, 0.5, d, pz, 1);
      CHECK(cur < prev);
      prev = cur;
    }
  }

  SUBCASE("first term matches the direct formula") {
    const double theta = 0.5;
    const double term1 =
        std::exp(psi_oracle_dummy(theta, d, pz)) / (theta * std::pow(4.0, theta));
    const double with_flat_second =
        leakage_bound(4, 4, theta, 1.0, d, pz, 1) -
        std::exp(psi(1.0, private_rate_spec(d, pz))) / (1.0 * 4.0);
    CHECK(with_flat_second == doctest::Approx(term1).epsilon(1e-10));
  }

  SUBCASE("theta validation") {
    CHECK(thrown_kind([&] { leakage_bound(2, 2, 0.0, 0.5, d, pz, 1); }) ==
          ErrorKind::ThetaOutOfRange);
  }
}

TEST_CASE("optimize_theta") {
  Rng rng(79);
  const InputDesign d = test::random_design(rng, 2, 2, 2, 2);

  SUBCASE("independent eavesdropper: optimum at theta = 1") {
    const Channel flat = test::constant_channel(2, 2, {0.5, 0.5});
    const ThetaOpt opt = optimize_theta(8, 16, d, flat, 2);
    CHECK(opt.theta == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(opt.theta2 == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(opt.bound == doctest::Approx(1.0 / 8 + 1.0 / 16).epsilon(1e-9));
  }

  SUBCASE("never worse than a fixed interior point") {
    const Channel pz = test::random_channel(rng, 2, 2, 2);
    const ThetaOpt opt = optimize_theta(4, 4, d, pz, 2);
    CHECK(opt.bound <= leakage_bound(4, 4, 0.5, 0.5, d, pz, 2) + 1e-15);
  }

  SUBCASE("deterministic") {
    const Channel pz = test::random_channel(rng, 2, 2, 2);
    const ThetaOpt a = optimize_theta(4, 8, d, pz, 1);
    const ThetaOpt b = optimize_theta(4, 8, d, pz, 1);
    CHECK(a.theta == b.theta);
    CHECK(a.theta2 == b.theta2);
    CHECK(a.bound == b.bound);
  }
}

TEST_CASE("error_bounds") {
  Rng rng(83);
  const InputDesign d = test::random_design(rng, 2, 2, 2, 2);
  const Channel py = test::random_channel(rng, 2, 2, 2);
  const Channel pz = test::random_channel(rng, 2, 2, 2);
  const CodeSizes sizes{2, 1, 2, 2, 2};

  SUBCASE("huge thresholds leave only the tail terms") {
    const Thresholds th{1e6, 1e6, 1e6, 1e6};
    const auto [bob, eve] = error_bounds(sizes, th, d, py, pz, 1);
    // Sets are unreachable, so each tail is the full mass.
    CHECK(bob == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(eve == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("zero thresholds make the union terms whole message products") {
    const Thresholds th{0.0, 0.0, 0.0, 0.0};
    const auto [bob, eve] = error_bounds(sizes, th, d, py, pz, 1);
    const double js = 4.0, ijs = 4.0, kijs = 8.0, ki = 2.0;
    CHECK(bob >= js + ijs + kijs);
    CHECK(eve >= ki);
  }

  SUBCASE("matches an independent enumeration oracle at n = 2") {
    const InfoVector iv = info_vector(d, py, pz);
    const double delta = 0.1;
    const Thresholds th{2 * (iv.iuxz - delta), 2 * (iv.ivy_ux2 - delta),
                        2 * (iv.iuvy_x2 - delta), 2 * (iv.iuvxy - delta)};
    const auto [bob, eve] = error_bounds(sizes, th, d, py, pz, 2);

    // Oracle: enumerate all letter pairs directly from the joint.
    const Joint j = build_joint(d, py, pz);
    const Joint juvxy = j.marginal({"U", "V", "X2", "Y"});
    const Joint juvx = j.marginal({"U", "V", "X2"});
    const Joint jux = j.marginal({"U", "X2"});
    const Joint jx2 = j.marginal({"X2"});
    const Joint juxy = j.marginal({"U", "X2", "Y"});
    const Joint jx2y = j.marginal({"X2", "Y"});
    const Joint jy = j.marginal({"Y"});
    auto at = [](const Joint& m, std::initializer_list<int> idx) {
      std::size_t f = 0, k = 0;
      for (int i : idx) {
        f += m.stride(k) * static_cast<std::size_t>(i);
        ++k;
      }
      return m.value(f);
    };
    double t1 = 0, t2 = 0, t3 = 0;
    for (int u1 = 0; u1 < 2; ++u1)
      for (int v1 = 0; v1 < 2; ++v1)
        for (int a1 = 0; a1 < 2; ++a1)
          for (int y1 = 0; y1 < 2; ++y1)
            for (int u2 = 0; u2 < 2; ++u2)
              for (int v2 = 0; v2 < 2; ++v2)
                for (int a2 = 0; a2 < 2; ++a2)
                  for (int y2 = 0; y2 < 2; ++y2) {
                    const double p1 = at(juvxy, {u1, v1, a1, y1});
                    const double p2 = at(juvxy, {u2, v2, a2, y2});
                    const double p = p1 * p2;
                    if (p == 0.0) continue;
                    auto lr = [](double num, double den) { return std::log(num / den); };
                    const double c1 = lr(p1 / at(juvx, {u1, v1, a1}),
                                         at(juxy, {u1, a1, y1}) / at(jux, {u1, a1})) +
                                      lr(p2 / at(juvx, {u2, v2, a2}),
                                         at(juxy, {u2, a2, y2}) / at(jux, {u2, a2}));
                    const double c2 = lr(p1 / at(juvx, {u1, v1, a1}),
                                         at(jx2y, {a1, y1}) / at(jx2, {a1})) +
                                      lr(p2 / at(juvx, {u2, v2, a2}),
                                         at(jx2y, {a2, y2}) / at(jx2, {a2}));
                    const double c3 = lr(p1 / at(juvx, {u1, v1, a1}), at(jy, {y1})) +
                                      lr(p2 / at(juvx, {u2, v2, a2}), at(jy, {y2}));
                    if (c1 < th.alpha1) t1 += p;
                    if (c2 < th.alpha2) t2 += p;
                    if (c3 < th.alpha3) t3 += p;
                  }
    const double bob_oracle = t1 + t2 + t3 + 4.0 * std::exp(-th.alpha1) +
                              4.0 * std::exp(-th.alpha2) + 8.0 * std::exp(-th.alpha3);
    CHECK(bob == doctest::Approx(bob_oracle).epsilon(1e-10));
    CHECK(eve >= 0.0);
  }
}
