#include "cicc/cli.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cicc/codec.hpp"
#include "cicc/csv.hpp"
#include "cicc/exponents.hpp"
#include "cicc/parallel.hpp"
#include "cicc/polytope.hpp"
#include "cicc/prob.hpp"
#include "cicc/region.hpp"
#include "cicc/resolvability.hpp"
#include "cicc/rng.hpp"
#include "cicc/specfile.hpp"

namespace cicc {

namespace {

namespace fs = std::filesystem;

struct CommonOpts {
  std::string spec_path;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  int threads = 1;
  bool bits = false;
};

// Display scale for rate/information columns; psi values and probabilities
// are never converted.
double unit(const CommonOpts& c) { return c.bits ? 1.0 / std::numbers::ln2 : 1.0; }

fs::path ensure_out_dir(const CommonOpts& c) {
  fs::path dir(c.out_dir);
  fs::create_directories(dir);
  return dir;
}

ProblemSpec load_spec(const CommonOpts& c) {
  require(!c.spec_path.empty(), ErrorKind::ParseError, "--spec is required for this command");
  ProblemSpec spec = parse_spec(c.spec_path);
  if (c.bits) {
    // Rates and rate offsets in the file follow the display unit.
    if (spec.rates) {
      spec.rates->rd *= std::numbers::ln2;
      spec.rates->r0 *= std::numbers::ln2;
      spec.rates->r1 *= std::numbers::ln2;
      spec.rates->rs *= std::numbers::ln2;
    }
    if (spec.delta) *spec.delta *= std::numbers::ln2;
  }
  return spec;
}

// Explicit flags beat spec-file values, which beat built-in defaults.
struct Override {
  bool n = false, delta = false, seed = false;
};

int resolve_n(const ProblemSpec& spec, int flag_n, bool flag_given) {
  if (flag_given) return flag_n;
  return spec.n.value_or(flag_n);
}

double resolve_delta(const CommonOpts& c, const ProblemSpec& spec, double flag_delta,
                     bool flag_given) {
  const double flag_nats = c.bits ? flag_delta * std::numbers::ln2 : flag_delta;
  if (flag_given) return flag_nats;
  return spec.delta.value_or(flag_nats);  // spec value already in nats
}

std::uint64_t resolve_seed(const CommonOpts& c, const ProblemSpec& spec, bool flag_given) {
  if (flag_given) return c.seed;
  return spec.seed.value_or(c.seed);
}

Channel random_channel(Rng& rng, int x1, int x2, int out) {
  std::vector<std::vector<double>> rows;
  for (int r = 0; r < x1 * x2; ++r) rows.push_back(rng.dirichlet(out));
  return Channel::from_rows({x1, x2}, rows);
}

// --- region ---------------------------------------------------------------

// A sampled point is a hull vertex iff it cannot be written as a convex
// combination of the other sampled points; decided by exact LP feasibility.
std::vector<bool> hull_vertices(const std::vector<RateQuadruple>& pts,
                                const std::vector<bool>& valid) {
  const std::size_t m = pts.size();
  std::vector<std::vector<Rational>> coords(m, std::vector<Rational>(4));
  for (std::size_t i = 0; i < m; ++i) {
    coords[i][0] = to_rational(pts[i].rd);
    coords[i][1] = to_rational(pts[i].r0);
    coords[i][2] = to_rational(pts[i].r1);
    coords[i][3] = to_rational(pts[i].rs);
  }
  std::vector<bool> vertex(m, false);
  for (std::size_t p = 0; p < m; ++p) {
    if (!valid[p]) continue;
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < m; ++i)
      if (i != p && valid[i]) others.push_back(i);
    if (others.empty()) {
      vertex[p] = true;
      continue;
    }
    LinearSystem sys;
    for (std::size_t i = 0; i < others.size(); ++i)
      sys.variables.push_back("l" + std::to_string(i));
    auto add_eq = [&](const std::vector<Rational>& coef, const Rational& rhs) {
      Inequality up{coef, rhs, ""};
      Inequality dn;
      dn.coeffs.reserve(coef.size());
      for (const Rational& c : coef) dn.coeffs.push_back(-c);
      dn.rhs = -rhs;
      sys.inequalities.push_back(std::move(up));
      sys.inequalities.push_back(std::move(dn));
    };
    add_eq(std::vector<Rational>(others.size(), Rational(1)), Rational(1));
    for (int d = 0; d < 4; ++d) {
      std::vector<Rational> coef(others.size());
      for (std::size_t i = 0; i < others.size(); ++i) coef[i] = coords[others[i]][d];
      add_eq(coef, coords[p][d]);
    }
    for (std::size_t i = 0; i < others.size(); ++i) {
      Inequality nn;
      nn.coeffs.assign(others.size(), Rational(0));
      nn.coeffs[i] = -1;
      nn.rhs = 0;
      sys.inequalities.push_back(std::move(nn));
    }
    vertex[p] = !feasible(sys);
  }
  return vertex;
}

int cmd_region(const CommonOpts& c, int instances, int max_u, int max_v) {
  const ProblemSpec spec = load_spec(c);
  const fs::path dir = ensure_out_dir(c);
  const double s = unit(c);

  const auto designs = sample_designs(spec.x1_size, spec.x2_size, spec.py, spec.pz, instances,
                                      c.seed, max_u, max_v, c.threads);
  std::vector<RateQuadruple> pts;
  std::vector<bool> member;
  for (const auto& [design, iv] : designs) {
    const RateQuadruple q = corner_point(iv);
    pts.push_back(q);
    member.push_back(membership(q, capacity_region(iv)));
  }
  const std::vector<bool> vertex = hull_vertices(pts, member);

  CsvWriter points(dir / "region_points.csv");
  points.row({"index", "u_size", "v_size", "iuxy", "iuxz", "iuvy_x2", "ivy_ux2", "ivz_ux2",
              "iuvxy", "ix1z_ux2", "ix1z_uvx2", "rd", "r0", "r1", "rs", "member",
              "hull_vertex"});
  for (std::size_t i = 0; i < designs.size(); ++i) {
    const InfoVector& iv = designs[i].second;
    points.row({std::to_string(i), std::to_string(designs[i].first.u_size()),
                std::to_string(designs[i].first.v_size()), csv_number(s * iv.iuxy),
                csv_number(s * iv.iuxz), csv_number(s * iv.iuvy_x2), csv_number(s * iv.ivy_ux2),
                csv_number(s * iv.ivz_ux2), csv_number(s * iv.iuvxy),
                csv_number(s * iv.ix1z_ux2), csv_number(s * iv.ix1z_uvx2),
                csv_number(s * pts[i].rd), csv_number(s * pts[i].r0), csv_number(s * pts[i].r1),
                csv_number(s * pts[i].rs), member[i] ? "1" : "0", vertex[i] ? "1" : "0"});
  }

  std::ofstream systems(dir / "systems.txt", std::ios::binary);
  for (std::size_t i = 0; i < designs.size(); ++i) {
    systems << "design " << i << "\n"
            << to_text(capacity_region(designs[i].second)) << "\n";
  }
  std::cout << "region: wrote " << designs.size() << " sampled designs to " << dir.string()
            << "\n";
  return 0;
}

// --- fm-verify --------------------------------------------------------------

int cmd_fm_verify(const CommonOpts& c, int instances) {
  const fs::path dir = ensure_out_dir(c);
  std::optional<ProblemSpec> spec;
  if (!c.spec_path.empty()) spec = parse_spec(c.spec_path);

  struct Row {
    int u_size = 0, v_size = 0;
    ReductionReport rep;
  };
  std::vector<Row> rows(static_cast<std::size_t>(instances));
  parallel_for_index(static_cast<std::size_t>(instances), c.threads, [&](std::size_t i) {
    InfoVector iv;
    int us = 0, vs = 0;
    if (spec) {
      auto d = sample_designs(spec->x1_size, spec->x2_size, spec->py, spec->pz, 1,
                              Rng::derive(c.seed, i));
      iv = d.front().second;
      us = d.front().first.u_size();
      vs = d.front().first.v_size();
    } else {
      // Fresh binary channels per instance for broader coverage.
      Rng rng(Rng::derive(c.seed ^ 0x9e3779b97f4a7c15ull, i));
      const Channel py = random_channel(rng, 2, 2, 2);
      const Channel pz = random_channel(rng, 2, 2, 2);
      auto d = sample_designs(2, 2, py, pz, 1, Rng::derive(c.seed, i));
      iv = d.front().second;
      us = d.front().first.u_size();
      vs = d.front().first.v_size();
    }
    rows[i] = {us, vs, verify_region_reduction(iv)};
  });

  CsvWriter csv(dir / "fm_verify.csv");
  csv.row({"instance", "u_size", "v_size", "stage1", "stage2", "stage3", "fm_match",
           "certificate", "equivalent", "pass", "detail"});
  int passed = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ReductionReport& r = rows[i].rep;
    if (r.all_ok()) ++passed;
    csv.row({std::to_string(i), std::to_string(rows[i].u_size), std::to_string(rows[i].v_size),
             std::to_string(r.stage_sizes.size() > 0 ? r.stage_sizes[0] : 0),
             std::to_string(r.stage_sizes.size() > 1 ? r.stage_sizes[1] : 0),
             std::to_string(r.stage_sizes.size() > 2 ? r.stage_sizes[2] : 0),
             r.fm_matches ? "1" : "0", r.certificate_ok ? "1" : "0",
             r.equivalent_to_region ? "1" : "0", r.all_ok() ? "1" : "0", r.detail});
  }
  std::cout << "fm-verify: " << passed << "/" << instances << " instances passed\n";
  return passed == instances ? 0 : 1;
}

// --- exponent ---------------------------------------------------------------

int cmd_exponent(const CommonOpts& c, int n, double delta, const Override& given) {
  const ProblemSpec spec = load_spec(c);
  require(spec.design.has_value(), ErrorKind::DimensionError,
          "exponent needs an explicit design in the spec file");
  const fs::path dir = ensure_out_dir(c);
  const InputDesign& design = *spec.design;
  const int nn = resolve_n(spec, n, given.n);
  const double dd = resolve_delta(c, spec, delta, given.delta);

  const PsiSpec s1 = dummy_rate_spec(design, spec.pz);
  const PsiSpec s2 = private_rate_spec(design, spec.pz);
  CsvWriter curve(dir / "psi_curve.csv");
  curve.row({"theta", "psi_dummy", "psi_private"});
  for (int k = 1; k <= 100; ++k) {
    const double theta = static_cast<double>(k) / 100.0;
    curve.row({csv_number(theta), csv_number(psi(theta, s1)), csv_number(psi(theta, s2))});
  }

  const double su = unit(c);
  CsvWriter prime(dir / "psi_prime.csv");
  prime.row({"spec", "finite_difference", "mutual_info"});
  const PsiDerivative d1 = psi_prime_at_zero(s1);
  const PsiDerivative d2 = psi_prime_at_zero(s2);
  prime.row({"dummy", csv_number(su * d1.finite_difference), csv_number(su * d1.mutual_info)});
  prime.row({"private", csv_number(su * d2.finite_difference), csv_number(su * d2.mutual_info)});

  // Bound table over the blocklength; needs target rates for the size floors.
  if (spec.rates) {
    CsvWriter bounds(dir / "bound_vs_n.csv");
    bounds.row({"n", "k", "i", "j", "s", "a", "bob_bound", "eve_bound", "leakage_bound",
                "theta", "theta2"});
    for (int bn = 1; bn <= nn; ++bn) {
      try {
        const ExperimentReport rep =
            experiment(design, spec.py, spec.pz, *spec.rates, dd, bn, 1, c.seed, 1);
        bounds.row({std::to_string(bn), std::to_string(rep.sizes.k),
                    std::to_string(rep.sizes.i), std::to_string(rep.sizes.j),
                    std::to_string(rep.sizes.s), std::to_string(rep.sizes.a),
                    csv_number(rep.bound_bob), csv_number(rep.bound_eve),
                    csv_number(su * rep.bound_leak), csv_number(rep.theta),
                    csv_number(rep.theta2)});
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::EmptyMessageSet) throw;
        bounds.row({std::to_string(bn), "0", "0", "0", "0", "0", "", "", "", "", ""});
      }
    }
  }
  std::cout << "exponent: wrote psi curves" << (spec.rates ? " and bound tables" : "")
            << " to " << dir.string() << "\n";
  return 0;
}

// --- simulate ---------------------------------------------------------------

int cmd_simulate(const CommonOpts& c, int n, double delta, int codebooks,
                 const Override& given) {
  const ProblemSpec spec = load_spec(c);
  require(spec.design.has_value(), ErrorKind::DimensionError,
          "simulate needs an explicit design in the spec file");
  require(spec.rates.has_value(), ErrorKind::DimensionError,
          "simulate needs a rates line in the spec file");
  const fs::path dir = ensure_out_dir(c);
  const int nn = resolve_n(spec, n, given.n);
  const double dd = resolve_delta(c, spec, delta, given.delta);
  const std::uint64_t seed = resolve_seed(c, spec, given.seed);
  const double su = unit(c);

  const ExperimentReport rep = experiment(*spec.design, spec.py, spec.pz, *spec.rates, dd, nn,
                                          codebooks, seed, c.threads);

  CsvWriter trials(dir / "simulate_trials.csv");
  trials.row({"trial", "perr_bob", "perr_eve", "leakage"});
  for (std::size_t t = 0; t < rep.trials.size(); ++t)
    trials.row({std::to_string(t), csv_number(rep.trials[t].perr_bob),
                csv_number(rep.trials[t].perr_eve), csv_number(su * rep.trials[t].leakage)});

  CsvWriter summary(dir / "simulate_summary.csv");
  summary.row({"n", "delta", "slack_r1", "k", "i", "j", "s", "a", "alpha0", "alpha1", "alpha2",
               "alpha3", "mean_bob", "se_bob", "bound_bob", "mean_eve", "se_eve", "bound_eve",
               "mean_leak", "se_leak", "bound_leak", "theta", "theta2"});
  summary.row({std::to_string(rep.n), csv_number(rep.delta), csv_number(su * rep.slack_r1),
               std::to_string(rep.sizes.k), std::to_string(rep.sizes.i),
               std::to_string(rep.sizes.j), std::to_string(rep.sizes.s),
               std::to_string(rep.sizes.a), csv_number(rep.thresholds.alpha0),
               csv_number(rep.thresholds.alpha1), csv_number(rep.thresholds.alpha2),
               csv_number(rep.thresholds.alpha3), csv_number(rep.mean_bob),
               csv_number(rep.se_bob), csv_number(rep.bound_bob), csv_number(rep.mean_eve),
               csv_number(rep.se_eve), csv_number(rep.bound_eve), csv_number(su * rep.mean_leak),
               csv_number(su * rep.se_leak), csv_number(su * rep.bound_leak),
               csv_number(rep.theta), csv_number(rep.theta2)});
  std::cout << "simulate: " << codebooks << " codebooks at n=" << rep.n << ", sizes ("
            << rep.sizes.k << "," << rep.sizes.i << "," << rep.sizes.j << "," << rep.sizes.s
            << "," << rep.sizes.a << ")\n";
  return 0;
}

// --- resolve ----------------------------------------------------------------

int cmd_resolve(const CommonOpts& c, int m1, int m2, int instances,
                std::optional<double> fixed_theta, std::optional<double> fixed_theta2) {
  const fs::path dir = ensure_out_dir(c);
  const double su = unit(c);

  std::optional<Dist> pv;
  std::optional<Channel> pxv, pzx;
  if (!c.spec_path.empty()) {
    const ProblemSpec spec = parse_spec(c.spec_path);
    require(spec.design.has_value(), ErrorKind::DimensionError,
            "resolve with --spec needs an explicit design");
    require(spec.x2_size == 1, ErrorKind::DimensionError,
            "resolve with --spec needs |X2| = 1 so the eavesdropper channel has a single input");
    const InputDesign& d = *spec.design;
    std::vector<double> pv_w(static_cast<std::size_t>(d.v_size()), 0.0);
    for (int x2 = 0; x2 < d.x2_size(); ++x2)
      for (int u = 0; u < d.u_size(); ++u) {
        const int ux2[] = {u, x2};
        const double w = d.p_x2[x2] * d.p_u_given_x2.row(x2)[u];
        for (int v = 0; v < d.v_size(); ++v) pv_w[v] += w * d.p_v_given_ux2.row(ux2)[v];
      }
    pv = Dist(std::move(pv_w));
    pxv = d.p_x1_given_v;
    std::vector<std::vector<double>> rows;
    for (int x1 = 0; x1 < spec.x1_size; ++x1) {
      const int x1x2[] = {x1, 0};
      rows.push_back(spec.pz.row(x1x2).weights());
    }
    pzx = Channel::from_rows({spec.x1_size}, rows);
  } else {
    // Default binary instance drawn from the seed.
    Rng rng(Rng::derive(c.seed, 0));
    pv = Dist(rng.dirichlet(2));
    pxv = Channel::from_rows({2}, {rng.dirichlet(2), rng.dirichlet(2)});
    pzx = Channel::from_rows({2}, {rng.dirichlet(2), rng.dirichlet(2)});
  }

  // Target input law: the V-average of P(X|V).
  std::vector<double> px_w(static_cast<std::size_t>(pxv->out_size()), 0.0);
  for (std::size_t v = 0; v < pv->size(); ++v)
    for (int x = 0; x < pxv->out_size(); ++x) px_w[x] += (*pv)[v] * pxv->row(v)[x];
  const Dist px(px_w);

  std::vector<double> divs(static_cast<std::size_t>(instances), 0.0);
  parallel_for_index(static_cast<std::size_t>(instances), c.threads, [&](std::size_t t) {
    const ResolvabilityCode code = gen_map(*pv, *pxv, m1, m2, Rng::derive(c.seed, 1 + t));
    divs[t] = divergence_to_target(code, *pzx, px);
  });

  double mean = 0.0;
  for (double d : divs) mean += d;
  mean /= static_cast<double>(instances);
  double se = 0.0;
  if (instances > 1) {
    double ss = 0.0;
    for (double d : divs) ss += (d - mean) * (d - mean);
    se = std::sqrt(ss / (instances - 1)) / std::sqrt(static_cast<double>(instances));
  }
  ResolvabilityOpt opt;
  if (fixed_theta || fixed_theta2) {
    opt.theta = fixed_theta.value_or(0.5);
    opt.theta2 = fixed_theta2.value_or(0.5);
    opt.bound = resolvability_bound(opt.theta, opt.theta2, m1, m2, *pv, *pxv, *pzx);
  } else {
    opt = optimize_resolvability_bound(m1, m2, *pv, *pxv, *pzx);
  }

  CsvWriter trials(dir / "resolve_trials.csv");
  trials.row({"trial", "divergence"});
  for (std::size_t t = 0; t < divs.size(); ++t)
    trials.row({std::to_string(t), csv_number(su * divs[t])});
  CsvWriter summary(dir / "resolve_summary.csv");
  summary.row({"m1", "m2", "trials", "mean_divergence", "se", "theta", "theta2", "bound"});
  summary.row({std::to_string(m1), std::to_string(m2), std::to_string(instances),
               csv_number(su * mean), csv_number(su * se), csv_number(opt.theta),
               csv_number(opt.theta2), csv_number(su * opt.bound)});
  std::cout << "resolve: mean divergence " << csv_number(su * mean) << " over " << instances
            << " maps, bound " << csv_number(su * opt.bound) << "\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Rate-region and coding workbench for the cognitive interference channel "
               "with confidential messages under a dummy-randomness constraint"};
  app.require_subcommand(1);

  CommonOpts common;
  int instances = 32;
  int codebooks = 100;
  int n = 1;
  double delta = 0.05;
  int max_u = 0, max_v = 0;
  int m1 = 2, m2 = 2;
  double theta = 0.5, theta2 = 0.5;

  const auto add_common = [&](CLI::App* sub, bool spec_required) {
    auto* opt = sub->add_option("--spec", common.spec_path, "problem spec file");
    if (spec_required) opt->required();
    sub->add_option("--out", common.out_dir, "output directory (default: out)");
    sub->add_option("--seed", common.seed, "random seed");
    sub->add_option("--threads", common.threads, "worker count (results are independent of it)");
    sub->add_flag("--bits", common.bits,
                  "read and report rates/information in bits instead of nats");
  };

  auto* region = app.add_subcommand(
      "region", "sample input designs, emit region corner points, hull labels, and systems");
  add_common(region, true);
  region->add_option("--instances", instances, "number of sampled designs");
  region->add_option("--max-u", max_u, "cap on |U| (only lowers the sufficient cap)");
  region->add_option("--max-v", max_v, "cap on |V| (only lowers the sufficient cap)");
  region->footer(
      "Writes region_points.csv (index, u_size, v_size, the eight information\n"
      "quantities, corner point rd/r0/r1/rs, member flag, hull_vertex flag) and\n"
      "systems.txt (the inequality system of every sampled design).");

  auto* fm = app.add_subcommand(
      "fm-verify", "verify the slack-elimination reduction on random instances");
  add_common(fm, false);
  fm->add_option("--instances", instances, "number of random instances");
  fm->footer(
      "Writes fm_verify.csv (instance, u_size, v_size, system sizes after each of\n"
      "the three eliminations, fm_match / certificate / equivalent verdicts, pass,\n"
      "detail). Without --spec each instance draws fresh binary channels.");

  auto* expo = app.add_subcommand(
      "exponent", "psi curves, derivative checks, and bound tables for a fixed design");
  add_common(expo, true);
  expo->add_option("--n", n, "largest blocklength for the bound table");
  expo->add_option("--delta", delta, "rate offset used in size floors and thresholds");
  expo->footer(
      "Writes psi_curve.csv (theta, psi_dummy, psi_private), psi_prime.csv (spec,\n"
      "finite_difference, mutual_info), and, when the spec carries rates,\n"
      "bound_vs_n.csv (n, message-set sizes, bob/eve/leakage bounds, theta, theta2).");

  auto* sim = app.add_subcommand(
      "simulate", "exact finite-blocklength simulation of the superposition code");
  add_common(sim, true);
  sim->add_option("--n", n, "blocklength");
  sim->add_option("--delta", delta, "rate offset used in size floors and thresholds");
  sim->add_option("--codebooks", codebooks, "number of independent codebooks");
  sim->footer(
      "Writes simulate_trials.csv (trial, perr_bob, perr_eve, leakage) and\n"
      "simulate_summary.csv (n, delta, slack_r1, sizes k/i/j/s/a, thresholds\n"
      "alpha0..alpha3, means, standard errors, bounds, theta, theta2).");

  auto* res = app.add_subcommand(
      "resolve", "one-shot output-distribution simulation trials and their bound");
  add_common(res, false);
  res->footer(
      "Writes resolve_trials.csv (trial, divergence) and resolve_summary.csv\n"
      "(m1, m2, trials, mean_divergence, se, theta, theta2, bound).");
  res->add_option("--m1", m1, "inner map size");
  res->add_option("--m2", m2, "outer (cloud) map size");
  res->add_option("--instances", instances, "number of random maps");
  auto* theta_opt =
      res->add_option("--theta", theta, "evaluate the bound at this theta instead of optimizing");
  auto* theta2_opt =
      res->add_option("--theta2", theta2, "evaluate the bound at this theta2 instead of optimizing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (region->parsed()) return cmd_region(common, instances, max_u, max_v);
    if (fm->parsed()) return cmd_fm_verify(common, instances);
    if (expo->parsed()) return cmd_exponent(common, n, delta);
    if (sim->parsed()) return cmd_simulate(common, n, delta, codebooks);
    if (res->parsed())
      return cmd_resolve(common, m1, m2, instances,
                         theta_opt->count() ? std::optional<double>(theta) : std::nullopt,
                         theta2_opt->count() ? std::optional<double>(theta2) : std::nullopt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace cicc
