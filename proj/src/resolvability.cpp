#include "cicc/resolvability.hpp"

#include <cmath>

#include "cicc/exponents.hpp"
#include "cicc/rng.hpp"

namespace cicc {

namespace {

Dist channel_response(const Channel& pz_given_x, const Dist& px) {
  require(pz_given_x.in_sizes() == std::vector<int>{static_cast<int>(px.size())},
          ErrorKind::ShapeMismatch, "input law does not match the channel");
  std::vector<double> out(static_cast<std::size_t>(pz_given_x.out_size()), 0.0);
  for (std::size_t x = 0; x < px.size(); ++x) {
    if (px[x] == 0.0) continue;
    const Dist& row = pz_given_x.row(x);
    for (std::size_t z = 0; z < out.size(); ++z) out[z] += px[x] * row[z];
  }
  return Dist(std::move(out));
}

}  // namespace

ResolvabilityCode gen_map(const Dist& pv, const Channel& px_given_v, int m1, int m2,
                          std::uint64_t seed) {
  require(m1 >= 1 && m2 >= 1, ErrorKind::ShapeMismatch, "map sizes must be >= 1");
  require(px_given_v.in_sizes() == std::vector<int>{static_cast<int>(pv.size())},
          ErrorKind::ShapeMismatch, "P(X|V) conditioning must be V");
  ResolvabilityCode code;
  code.m1 = m1;
  code.m2 = m2;
  code.seed = seed;
  Rng rng(seed);
  code.v.resize(static_cast<std::size_t>(m2));
  for (int i = 0; i < m2; ++i) code.v[static_cast<std::size_t>(i)] = rng.sample(pv);
  code.x.resize(static_cast<std::size_t>(m2) * m1);
  for (int i = 0; i < m2; ++i) {
    const Dist& row = px_given_v.row(static_cast<std::size_t>(code.v[i]));
    for (int b = 0; b < m1; ++b)
      code.x[static_cast<std::size_t>(i) * m1 + b] = rng.sample(row);
  }
  return code;
}

Dist simulated_output(const ResolvabilityCode& code, const Channel& pz_given_x) {
  require(static_cast<int>(code.v.size()) == code.m2 &&
              code.x.size() == static_cast<std::size_t>(code.m1) * code.m2,
          ErrorKind::ShapeMismatch, "map arrays do not match its sizes");
  std::vector<double> out(static_cast<std::size_t>(pz_given_x.out_size()), 0.0);
  const double w = 1.0 / (static_cast<double>(code.m1) * code.m2);
  for (int i = 0; i < code.m2; ++i)
    for (int b = 0; b < code.m1; ++b) {
      const Dist& row = pz_given_x.row(static_cast<std::size_t>(code.x_at(i, b)));
      for (std::size_t z = 0; z < out.size(); ++z) out[z] += w * row[z];
    }
  return Dist(std::move(out));
}

double divergence_to_target(const ResolvabilityCode& code, const Channel& pz_given_x,
                            const Dist& px) {
  return kl(simulated_output(code, pz_given_x), channel_response(pz_given_x, px));
}

namespace {

PsiSpec cloud_term_spec(const Dist& pv, const Channel& px_given_v, const Channel& pz_given_x) {
  return PsiSpec{Joint({{"V", static_cast<int>(pv.size())}}, pv.weights()),
                 px_given_v,
                 {"V"},
                 "X",
                 pz_given_x,
                 {"X"},
                 "Z"};
}

// Unconditioned second term: the prior collapses to a scalar and the inner
// channel's single row is the X marginal.
PsiSpec marginal_term_spec(const Dist& pv, const Channel& px_given_v,
                           const Channel& pz_given_x) {
  std::vector<double> px(static_cast<std::size_t>(px_given_v.out_size()), 0.0);
  for (std::size_t v = 0; v < pv.size(); ++v) {
    const Dist& row = px_given_v.row(v);
    for (std::size_t x = 0; x < px.size(); ++x) px[x] += pv[v] * row[x];
  }
  return PsiSpec{Joint::scalar(),
                 Channel({}, {Dist(std::move(px))}),
                 {},
                 "X",
                 pz_given_x,
                 {"X"},
                 "Z"};
}

double bound_term(double size, double theta, double psi_value) {
  return std::exp(psi_value - theta * std::log(size)) / theta;
}

}  // namespace

double resolvability_bound(double theta, double theta2, int m1, int m2, const Dist& pv,
                           const Channel& px_given_v, const Channel& pz_given_x) {
  require(m1 >= 1 && m2 >= 1, ErrorKind::ShapeMismatch, "map sizes must be >= 1");
  const double p1 = psi(theta, cloud_term_spec(pv, px_given_v, pz_given_x));
  const double p2 = psi(theta2, marginal_term_spec(pv, px_given_v, pz_given_x));
  return bound_term(m1, theta, p1) + bound_term(m2, theta2, p2);
}

ResolvabilityOpt optimize_resolvability_bound(int m1, int m2, const Dist& pv,
                                              const Channel& px_given_v,
                                              const Channel& pz_given_x) {
  const PsiSpec s1 = cloud_term_spec(pv, px_given_v, pz_given_x);
  const PsiSpec s2 = marginal_term_spec(pv, px_given_v, pz_given_x);
  ResolvabilityOpt opt;
  const double b1 = minimize_on_unit_interval(
      [&](double t) { return bound_term(m1, t, psi(t, s1)); }, &opt.theta);
  const double b2 = minimize_on_unit_interval(
      [&](double t) { return bound_term(m2, t, psi(t, s2)); }, &opt.theta2);
  opt.bound = b1 + b2;
  return opt;
}

}  // namespace cicc
