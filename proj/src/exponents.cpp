#include "cicc/exponents.hpp"

#include <cmath>

namespace cicc {

namespace {

// Resolves, for every prior cell, the flat row index into a channel whose
// conditioning tuple is drawn from named prior axes plus optionally the
// inner output. Returns per-axis multipliers so row = sum_i mult[i] *
// cell_index[i] (+ inner_mult * x when the inner axis participates).
struct RowResolver {
  std::vector<std::size_t> prior_mult;  // one per prior axis
  std::size_t inner_mult = 0;

  RowResolver(const Joint& prior, const std::vector<std::string>& inputs,
              const std::vector<int>& in_sizes, const std::string& inner_axis,
              int inner_size) {
    require(inputs.size() == in_sizes.size(), ErrorKind::ShapeMismatch,
            "channel conditioning arity does not match its input list");
    prior_mult.assign(prior.axis_count(), 0);
    std::size_t mult = 1;
    for (std::size_t i = inputs.size(); i-- > 0;) {
      if (inputs[i] == inner_axis) {
        require(in_sizes[i] == inner_size, ErrorKind::ShapeMismatch,
                "inner output alphabet mismatch");
        inner_mult = mult;
      } else {
        const int ax = prior.axis_index(inputs[i]);
        require(prior.axes()[ax].size == in_sizes[i], ErrorKind::ShapeMismatch,
                "conditioning alphabet mismatch on '" + inputs[i] + "'");
        prior_mult[static_cast<std::size_t>(ax)] += mult;
      }
      mult *= static_cast<std::size_t>(in_sizes[i]);
    }
  }

  std::size_t base_row(const std::vector<int>& cell) const {
    std::size_t r = 0;
    for (std::size_t i = 0; i < cell.size(); ++i)
      r += prior_mult[i] * static_cast<std::size_t>(cell[i]);
    return r;
  }
};

struct PsiEvaluator {
  const PsiSpec& spec;
  RowResolver inner_rows;
  RowResolver outer_rows;

  explicit PsiEvaluator(const PsiSpec& s)
      : spec(s),
        inner_rows(s.prior, s.inner_inputs, s.inner.in_sizes(), /*inner_axis=*/"",
                   /*inner_size=*/-1),
        outer_rows(s.prior, s.outer_inputs, s.outer.in_sizes(), s.inner_axis,
                   s.inner.out_size()) {}

  double evaluate(double theta) const {
    const Joint& prior = spec.prior;
    const int nx = spec.inner.out_size();
    const int nz = spec.outer.out_size();
    double total = 0.0;
    std::vector<int> cell(prior.axis_count(), 0);
    for (std::size_t flat = 0; flat < prior.cell_count(); ++flat) {
      const double pw = prior.value(flat);
      if (pw > 0.0) {
        const Dist& in_row = spec.inner.row(inner_rows.base_row(cell));
        const std::size_t out_base = outer_rows.base_row(cell);
        double cell_sum = 0.0;
        for (int z = 0; z < nz; ++z) {
          double denom = 0.0, bracket = 0.0;
          for (int x = 0; x < nx; ++x) {
            const double px = in_row[x];
            if (px == 0.0) continue;
            const double w =
                spec.outer.row(out_base + outer_rows.inner_mult * static_cast<std::size_t>(x))[z];
            denom += px * w;
            bracket += px * std::pow(w, 1.0 + theta);
          }
          if (bracket == 0.0) continue;
          require(denom > 0.0, ErrorKind::SupportViolation,
                  "marginal channel vanishes where the mixture has mass");
          cell_sum += bracket * std::pow(denom, -theta);
        }
        total += pw * cell_sum;
      }
      for (std::size_t a = prior.axis_count(); a-- > 0;) {
        if (++cell[a] < prior.axes()[a].size) break;
        cell[a] = 0;
        if (a == 0) break;
      }
    }
    return std::log(total);
  }
};

void check_theta(double theta) {
  require(theta > 0.0 && theta <= 1.0, ErrorKind::ThetaOutOfRange,
          "theta must lie in (0, 1]");
}

}  // namespace

double psi(double theta, const PsiSpec& spec) {
  check_theta(theta);
  return PsiEvaluator(spec).evaluate(theta);
}

PsiDerivative psi_prime_at_zero(const PsiSpec& spec) {
  const PsiEvaluator eval(spec);
  const double h = 1e-4;
  const double fd = (4.0 * eval.evaluate(h) - eval.evaluate(2.0 * h)) / (2.0 * h);

  const Joint j = psi_spec_joint(spec);
  std::vector<std::string> cond;
  for (const Axis& a : spec.prior.axes()) cond.push_back(a.name);
  const double mi = cond_mutual_info(j, {spec.inner_axis}, {spec.output_axis}, cond);
  return {fd, mi};
}

Joint psi_spec_joint(const PsiSpec& spec) {
  const RowResolver inner_rows(spec.prior, spec.inner_inputs, spec.inner.in_sizes(), "", -1);
  const RowResolver outer_rows(spec.prior, spec.outer_inputs, spec.outer.in_sizes(),
                               spec.inner_axis, spec.inner.out_size());
  std::vector<Axis> axes = spec.prior.axes();
  axes.push_back({spec.inner_axis, spec.inner.out_size()});
  axes.push_back({spec.output_axis, spec.outer.out_size()});
  std::vector<double> table;
  table.reserve(spec.prior.cell_count() * static_cast<std::size_t>(spec.inner.out_size()) *
                static_cast<std::size_t>(spec.outer.out_size()));
  std::vector<int> cell(spec.prior.axis_count(), 0);
  for (std::size_t flat = 0; flat < spec.prior.cell_count(); ++flat) {
    const double pw = spec.prior.value(flat);
    const Dist& in_row = spec.inner.row(inner_rows.base_row(cell));
    const std::size_t out_base = outer_rows.base_row(cell);
    for (int x = 0; x < spec.inner.out_size(); ++x) {
      const Dist& out_row =
          spec.outer.row(out_base + outer_rows.inner_mult * static_cast<std::size_t>(x));
      for (int z = 0; z < spec.outer.out_size(); ++z)
        table.push_back(pw * in_row[x] * out_row[z]);
    }
    for (std::size_t a = spec.prior.axis_count(); a-- > 0;) {
      if (++cell[a] < spec.prior.axes()[a].size) break;
      cell[a] = 0;
      if (a == 0) break;
    }
  }
  return Joint(std::move(axes), std::move(table));
}

PsiSpec dummy_rate_spec(const InputDesign& design, const Channel& pz) {
  const int nu = design.u_size(), nv = design.v_size(), nx2 = design.x2_size();
  std::vector<double> table;
  table.reserve(static_cast<std::size_t>(nu) * nv * nx2);
  for (int u = 0; u < nu; ++u)
    for (int v = 0; v < nv; ++v)
      for (int x2 = 0; x2 < nx2; ++x2) {
        const int ux2[] = {u, x2};
        table.push_back(design.p_x2[x2] * design.p_u_given_x2.row(x2)[u] *
                        design.p_v_given_ux2.row(ux2)[v]);
      }
  PsiSpec spec{Joint({{"U", nu}, {"V", nv}, {"X2", nx2}}, std::move(table)),
               design.p_x1_given_v,
               {"V"},
               "X1",
               pz,
               {"X1", "X2"},
               "Z"};
  return spec;
}

PsiSpec private_rate_spec(const InputDesign& design, const Channel& pz) {
  const int nu = design.u_size(), nv = design.v_size(), nx2 = design.x2_size();
  const int nx1 = design.x1_size(), nz = pz.out_size();
  std::vector<double> prior;
  prior.reserve(static_cast<std::size_t>(nu) * nx2);
  for (int u = 0; u < nu; ++u)
    for (int x2 = 0; x2 < nx2; ++x2)
      prior.push_back(design.p_x2[x2] * design.p_u_given_x2.row(x2)[u]);

  // P(Z | U,V,X2) = sum_x1 P(X1|V) P(Z|X1,X2); the cloud index is inert but
  // kept so the spec mirrors the conditioning it represents.
  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(nu) * nv * nx2);
  for (int u = 0; u < nu; ++u)
    for (int v = 0; v < nv; ++v)
      for (int x2 = 0; x2 < nx2; ++x2) {
        std::vector<double> row(nz, 0.0);
        for (int x1 = 0; x1 < nx1; ++x1) {
          const int x1x2[] = {x1, x2};
          const double w = design.p_x1_given_v.row(v)[x1];
          for (int z = 0; z < nz; ++z) row[z] += w * pz.row(x1x2)[z];
        }
        rows.push_back(std::move(row));
      }
  PsiSpec spec{Joint({{"U", nu}, {"X2", nx2}}, std::move(prior)),
               design.p_v_given_ux2,
               {"U", "X2"},
               "V",
               Channel::from_rows({nu, nv, nx2}, rows),
               {"U", "V", "X2"},
               "Z"};
  return spec;
}

namespace {

double bound_term(double size, double theta, double psi_value, int n) {
  return std::exp(static_cast<double>(n) * psi_value - theta * std::log(size)) / theta;
}

}  // namespace

double leakage_bound(double nA, double nJ, double theta, double theta2,
                     const InputDesign& design, const Channel& pz, int n) {
  check_theta(theta);
  check_theta(theta2);
  require(nA >= 1.0 && nJ >= 1.0, ErrorKind::ShapeMismatch, "set sizes must be >= 1");
  const double p1 = psi(theta, dummy_rate_spec(design, pz));
  const double p2 = psi(theta2, private_rate_spec(design, pz));
  return bound_term(nA, theta, p1, n) + bound_term(nJ, theta2, p2, n);
}

double minimize_on_unit_interval(const std::function<double(double)>& f, double* best_arg) {
  constexpr int kGrid = 100;
  double best_x = 1.0;
  double best_f = f(1.0);
  for (int k = 1; k < kGrid; ++k) {
    const double x = static_cast<double>(k) / kGrid;
    const double fx = f(x);
    if (fx < best_f) {
      best_f = fx;
      best_x = x;
    }
  }
  // Golden-section pass on the bracketing cell.
  double lo = std::max(best_x - 1.0 / kGrid, 1e-9);
  double hi = std::min(best_x + 1.0 / kGrid, 1.0);
  const double inv_phi = 0.6180339887498949;
  double a = hi - inv_phi * (hi - lo);
  double b = lo + inv_phi * (hi - lo);
  double fa = f(a), fb = f(b);
  for (int it = 0; it < 80; ++it) {
    if (fa <= fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = f(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = f(b);
    }
  }
  const double mid = fa <= fb ? a : b;
  const double fmid = std::min(fa, fb);
  if (fmid < best_f) {
    best_f = fmid;
    best_x = mid;
  }
  if (best_arg != nullptr) *best_arg = best_x;
  return best_f;
}

ThetaOpt optimize_theta(double nA, double nJ, const InputDesign& design, const Channel& pz,
                        int n) {
  require(nA >= 1.0 && nJ >= 1.0, ErrorKind::ShapeMismatch, "set sizes must be >= 1");
  ThetaOpt opt;
  // The bound is a sum of one term per parameter; optimize each separately.
  const PsiSpec s1 = dummy_rate_spec(design, pz);
  const PsiSpec s2 = private_rate_spec(design, pz);
  const PsiEvaluator ev1(s1), ev2(s2);
  const double b1 = minimize_on_unit_interval(
      [&](double t) { return bound_term(nA, t, ev1.evaluate(t), n); }, &opt.theta);
  const double b2 = minimize_on_unit_interval(
      [&](double t) { return bound_term(nJ, t, ev2.evaluate(t), n); }, &opt.theta2);
  opt.bound = b1 + b2;
  return opt;
}

namespace {

// Exact accumulation of the complement probabilities of threshold sets whose
// log ratio is additive over letters: enumerate every n-tuple of base cells,
// carrying the product probability and the running log-ratio sums.
struct TailAccumulator {
  const std::vector<double>& prob;                 // base cell probabilities
  const std::vector<std::vector<double>>& llrs;    // per-set per-cell log ratios
  const std::vector<double>& alphas;               // per-set thresholds
  int n;
  std::vector<double> tail;                        // out: P(sum llr_k < alpha_k)

  void run() {
    tail.assign(llrs.size(), 0.0);
    std::vector<double> sums(llrs.size(), 0.0);
    recurse(0, 1.0, sums);
  }

  void recurse(int depth, double p, std::vector<double>& sums) {
    if (p == 0.0) return;
    if (depth == n) {
      for (std::size_t k = 0; k < llrs.size(); ++k)
        if (sums[k] < alphas[k]) tail[k] += p;
      return;
    }
    for (std::size_t c = 0; c < prob.size(); ++c) {
      if (prob[c] == 0.0) continue;
      for (std::size_t k = 0; k < llrs.size(); ++k) sums[k] += llrs[k][c];
      recurse(depth + 1, p * prob[c], sums);
      for (std::size_t k = 0; k < llrs.size(); ++k) sums[k] -= llrs[k][c];
    }
  }
};

}  // namespace

std::pair<double, double> error_bounds(const CodeSizes& sizes, const Thresholds& th,
                                       const InputDesign& design, const Channel& py,
                                       const Channel& pz, int n) {
  require(sizes.k >= 1 && sizes.i >= 1 && sizes.j >= 1 && sizes.s >= 1 && sizes.a >= 1,
          ErrorKind::ShapeMismatch, "all set sizes must be >= 1");
  require(n >= 1, ErrorKind::ShapeMismatch, "blocklength must be >= 1");
  const Joint j = build_joint(design, py, pz);

  // Decoding-set tails over (U, V, X2, Y).
  const Joint juvxy = j.marginal({"U", "V", "X2", "Y"});
  const Joint juvx = j.marginal({"U", "V", "X2"});
  const Joint jux = j.marginal({"U", "X2"});
  const Joint jx = j.marginal({"X2"});
  const Joint juxy = j.marginal({"U", "X2", "Y"});
  const Joint jxy = j.marginal({"X2", "Y"});
  const Joint jy = j.marginal({"Y"});

  const int nu = design.u_size(), nv = design.v_size(), nx2 = design.x2_size();
  const int ny = py.out_size(), nz = pz.out_size();
  std::size_t cells = static_cast<std::size_t>(nu) * nv * nx2 * ny;
  double pow_check = 1.0;
  for (int t = 0; t < n; ++t) {
    pow_check *= static_cast<double>(cells);
    require(pow_check <= static_cast<double>(kMaxTableCells), ErrorKind::TooLarge,
            "tail enumeration exceeds the cell cap");
  }

  std::vector<double> prob(cells), l1(cells), l2(cells), l3(cells);
  std::size_t c = 0;
  for (int u = 0; u < nu; ++u)
    for (int v = 0; v < nv; ++v)
      for (int x2 = 0; x2 < nx2; ++x2)
        for (int y = 0; y < ny; ++y, ++c) {
          const std::size_t uvx = (static_cast<std::size_t>(u) * nv + v) * nx2 + x2;
          const std::size_t ux = static_cast<std::size_t>(u) * nx2 + x2;
          const double p_uvxy = juvxy.value(c);
          prob[c] = p_uvxy;
          if (p_uvxy == 0.0) {
            l1[c] = l2[c] = l3[c] = 0.0;  // value irrelevant: cell carries no mass
            continue;
          }
          const double y_uvx = p_uvxy / juvx.value(uvx);
          const double y_ux = juxy.value(ux * ny + y) / jux.value(ux);
          const double y_x = jxy.value(static_cast<std::size_t>(x2) * ny + y) / jx.value(x2);
          const double y_m = jy.value(y);
          l1[c] = std::log(y_uvx / y_ux);
          l2[c] = std::log(y_uvx / y_x);
          l3[c] = std::log(y_uvx / y_m);
        }

  std::vector<std::vector<double>> llrs{l1, l2, l3};
  std::vector<double> alphas{th.alpha1, th.alpha2, th.alpha3};
  TailAccumulator bob_tails{prob, llrs, alphas, n, {}};
  bob_tails.run();

  // Eve's tail over (U, X2, Z).
  const Joint juxz = j.marginal({"U", "X2", "Z"});
  const Joint jz = j.marginal({"Z"});
  const std::size_t zcells = static_cast<std::size_t>(nu) * nx2 * nz;
  std::vector<double> zprob(zcells), l0(zcells);
  c = 0;
  for (int u = 0; u < nu; ++u)
    for (int x2 = 0; x2 < nx2; ++x2)
      for (int z = 0; z < nz; ++z, ++c) {
        const std::size_t ux = static_cast<std::size_t>(u) * nx2 + x2;
        const double p = juxz.value(c);
        zprob[c] = p;
        l0[c] = p == 0.0 ? 0.0 : std::log(p / jux.value(ux) / jz.value(z));
      }
  std::vector<std::vector<double>> zllrs{l0};
  std::vector<double> zalphas{th.alpha0};
  TailAccumulator eve_tails{zprob, zllrs, zalphas, n, {}};
  eve_tails.run();

  const double js = static_cast<double>(sizes.j) * static_cast<double>(sizes.s);
  const double ijs = static_cast<double>(sizes.i) * js;
  const double kijs = static_cast<double>(sizes.k) * ijs;
  const double ki = static_cast<double>(sizes.k) * static_cast<double>(sizes.i);
  const double bob = bob_tails.tail[0] + bob_tails.tail[1] + bob_tails.tail[2] +
                     js * std::exp(-th.alpha1) + ijs * std::exp(-th.alpha2) +
                     kijs * std::exp(-th.alpha3);
  const double eve = eve_tails.tail[0] + ki * std::exp(-th.alpha0);
  return {bob, eve};
}

}  // namespace cicc
