// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. argv[1] must be the path to the cicc command-line tool
// (used by the determinism criterion).

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cicc/codec.hpp"
#include "cicc/exponents.hpp"
#include "cicc/polytope.hpp"
#include "cicc/prob.hpp"
#include "cicc/region.hpp"
#include "cicc/resolvability.hpp"
#include "cicc/rng.hpp"

namespace fs = std::filesystem;
using namespace cicc;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

Channel random_channel(Rng& rng, int x1, int x2, int out) {
  std::vector<Dist> rows;
  for (int i = 0; i < x1 * x2; ++i) rows.emplace_back(rng.dirichlet(out));
  return Channel({x1, x2}, std::move(rows));
}

InputDesign random_design(Rng& rng, int u, int v, int x1, int x2) {
  Dist px2(rng.dirichlet(x2));
  std::vector<Dist> urows, vrows, x1rows;
  for (int i = 0; i < x2; ++i) urows.emplace_back(rng.dirichlet(u));
  for (int i = 0; i < u * x2; ++i) vrows.emplace_back(rng.dirichlet(v));
  for (int i = 0; i < v; ++i) x1rows.emplace_back(rng.dirichlet(x1));
  return InputDesign(std::move(px2), Channel({x2}, std::move(urows)),
                     Channel({u, x2}, std::move(vrows)), Channel({v}, std::move(x1rows)));
}

// 1. The finite-difference derivative of both exponent specs matches the
//    corresponding conditional mutual information within 1e-6 relative error,
//    over 100 seeded random binary/ternary designs.
Outcome criterion_psi_derivative() {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(Rng::derive(1000, seed));
    const int x1 = seed % 2 == 0 ? 2 : 3;
    const int x2 = seed % 4 < 2 ? 2 : 3;
    const int zs = seed % 3 == 0 ? 3 : 2;
    const Channel pz = random_channel(rng, x1, x2, zs);
    const InputDesign d =
        random_design(rng, 1 + static_cast<int>(seed % 3), 2 + static_cast<int>(seed % 2),
                      x1, x2);
    const PsiDerivative pd1 = psi_prime_at_zero(dummy_rate_spec(d, pz));
    const PsiDerivative pd2 = psi_prime_at_zero(private_rate_spec(d, pz));
    const double tol1 = 1e-6 * std::max(1.0, pd1.mutual_info);
    const double tol2 = 1e-6 * std::max(1.0, pd2.mutual_info);
    if (std::fabs(pd1.finite_difference - pd1.mutual_info) > tol1)
      return {false, "dummy-rate spec mismatch at seed " + std::to_string(seed)};
    if (std::fabs(pd2.finite_difference - pd2.mutual_info) > tol2)
      return {false, "private-rate spec mismatch at seed " + std::to_string(seed)};
    ++checked;
  }
  return {true, std::to_string(checked) + "/100 designs matched both identities"};
}

// 2. Eliminating the three slack variables reproduces the closed-form
//    system: certificate plus exact-LP equivalence on 200 seeded instances.
Outcome criterion_fm_reduction() {
  int passed = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(Rng::derive(2000, seed));
    const Channel py = random_channel(rng, 2, 2, 2);
    const Channel pz = random_channel(rng, 2, 2, 2);
    const InputDesign d = random_design(rng, 1 + static_cast<int>(seed % 4),
                                        1 + static_cast<int>(seed % 6), 2, 2);
    const ReductionReport rep = verify_region_reduction(info_vector(d, py, pz));
    if (!rep.all_ok())
      return {false, "instance " + std::to_string(seed) + " failed: " + rep.detail};
    ++passed;
  }
  return {true, std::to_string(passed) + "/200 instances passed all three verdicts"};
}

// 3. On a binary instance with sizes (2,1,2,2,2) and n in {1,2}, the sample
//    means of the exact metrics over 600 codebooks sit under the matching
//    non-asymptotic bounds plus three standard errors.
Outcome criterion_nonasymptotic_bounds() {
  // Informative main channel (Y nearly reveals the input pair) and a mildly
  // leaky eavesdropper channel, so none of the three metrics is degenerate.
  const Channel py = Channel::from_rows({2, 2}, {{0.94, 0.02, 0.02, 0.02},
                                                 {0.02, 0.94, 0.02, 0.02},
                                                 {0.02, 0.02, 0.94, 0.02},
                                                 {0.02, 0.02, 0.02, 0.94}});
  const Channel pz = Channel::from_rows(
      {2, 2}, {{0.6, 0.4}, {0.55, 0.45}, {0.5, 0.5}, {0.45, 0.55}});
  const InputDesign d(Dist({0.5, 0.5}), Channel::from_rows({2}, {{0.9, 0.1}, {0.1, 0.9}}),
                      Channel::from_rows({2, 2}, {{0.9, 0.1}, {0.9, 0.1}, {0.1, 0.9}, {0.1, 0.9}}),
                      Channel::from_rows({2}, {{0.95, 0.05}, {0.05, 0.95}}));
  const InfoVector iv = info_vector(d, py, pz);
  const CodeSizes sizes{2, 1, 2, 2, 2};
  const double delta = 0.1;
  const int trials = 600;
  const DecoderTables tables(d, py, pz);

  std::ostringstream detail;
  for (int n = 1; n <= 2; ++n) {
    const Thresholds th{n * (iv.iuxz - delta), n * (iv.ivy_ux2 - delta),
                        n * (iv.iuvy_x2 - delta), n * (iv.iuvxy - delta)};
    std::vector<ExactMetrics> ms(trials);
    for (int t = 0; t < trials; ++t) {
      const Codebook cb(d, sizes, n, Rng::derive(3100 + n, t));
      ms[static_cast<std::size_t>(t)] = exact_metrics(cb, py, pz, tables, th);
    }
    const auto stats = [&](auto pick) {
      double mean = 0.0;
      for (const auto& m : ms) mean += pick(m);
      mean /= trials;
      double ss = 0.0;
      for (const auto& m : ms) ss += (pick(m) - mean) * (pick(m) - mean);
      const double se = std::sqrt(ss / (trials - 1)) / std::sqrt(double(trials));
      return std::pair<double, double>(mean, se);
    };
    const auto [mb, sb] = stats([](const ExactMetrics& m) { return m.perr_bob; });
    const auto [me, se_] = stats([](const ExactMetrics& m) { return m.perr_eve; });
    const auto [ml, sl] = stats([](const ExactMetrics& m) { return m.leakage; });
    const auto [bb, be] = error_bounds(sizes, th, d, py, pz, n);
    const ThetaOpt opt = optimize_theta(2.0, 2.0, d, pz, n);
    if (mb > bb + 3 * sb)
      return {false, "bob mean exceeds the bound at n=" + std::to_string(n)};
    if (me > be + 3 * se_)
      return {false, "eve mean exceeds the bound at n=" + std::to_string(n)};
    if (ml > opt.bound + 3 * sl)
      return {false, "leakage mean exceeds the bound at n=" + std::to_string(n)};
    detail << "n=" << n << " leak " << ml << "<=" << opt.bound << " bob " << mb << "<=" << bb
           << " eve " << me << "<=" << be << "; ";
  }
  return {true, detail.str() + std::to_string(trials) + " codebooks each"};
}

// 4. One-shot resolvability: the mean exact divergence over 1000 random maps
//    stays under the optimized bound plus three standard errors for
//    (m1, m2) in {(2,2), (4,4), (8,8)}, and decreases along that sequence.
Outcome criterion_resolvability() {
  Rng rng(Rng::derive(4000, 0));
  const Dist pv(rng.dirichlet(2));
  std::vector<Dist> pxv_rows{Dist(rng.dirichlet(2)), Dist(rng.dirichlet(2))};
  const Channel pxv({2}, pxv_rows);
  std::vector<Dist> pzx_rows{Dist(rng.dirichlet(2)), Dist(rng.dirichlet(2))};
  const Channel pzx({2}, pzx_rows);
  std::vector<double> px_w(2, 0.0);
  for (int v = 0; v < 2; ++v)
    for (int x = 0; x < 2; ++x) px_w[x] += pv[v] * pxv.row(v)[x];
  const Dist px(px_w);

  const int trials = 1000;
  double prev_mean = -1.0;
  std::ostringstream detail;
  for (int m : {2, 4, 8}) {
    std::vector<double> divs(trials);
    for (int t = 0; t < trials; ++t) {
      const ResolvabilityCode code = gen_map(pv, pxv, m, m, Rng::derive(4100 + m, t));
      divs[static_cast<std::size_t>(t)] = divergence_to_target(code, pzx, px);
    }
    double mean = 0.0;
    for (double v : divs) mean += v;
    mean /= trials;
    double ss = 0.0;
    for (double v : divs) ss += (v - mean) * (v - mean);
    const double se = std::sqrt(ss / (trials - 1)) / std::sqrt(double(trials));
    const ResolvabilityOpt opt = optimize_resolvability_bound(m, m, pv, pxv, pzx);
    if (mean > opt.bound + 3 * se)
      return {false, "mean divergence exceeds the bound at m=" + std::to_string(m)};
    if (prev_mean >= 0.0 && mean >= prev_mean)
      return {false, "mean divergence did not decrease at m=" + std::to_string(m)};
    prev_mean = mean;
    detail << "m=" << m << " mean " << mean << " bound " << opt.bound << "; ";
  }
  return {true, detail.str()};
}

// 5. Blind eavesdropper: the secrecy bound collapses to I(V;Y|U,X2), the
//    randomness lower bounds collapse to zero, the origin-with-free-rd
//    point is feasible, and the simulated leakage is exactly zero.
Outcome criterion_degenerate_eavesdropper() {
  Rng rng(Rng::derive(5000, 0));
  const Channel py = random_channel(rng, 2, 2, 2);
  std::vector<Dist> zrows;
  for (int i = 0; i < 4; ++i) zrows.emplace_back(std::vector<double>{0.35, 0.65});
  const Channel pz({2, 2}, zrows);

  const auto designs = sample_designs(2, 2, py, pz, 40, 5001);
  for (std::size_t i = 0; i < designs.size(); ++i) {
    const InfoVector& iv = designs[i].second;
    if (std::fabs((iv.ivy_ux2 - iv.ivz_ux2) - iv.ivy_ux2) > 1e-10)
      return {false, "secrecy bound moved at design " + std::to_string(i)};
    if (std::fabs(iv.ix1z_uvx2) > 1e-10 || std::fabs(iv.ix1z_ux2) > 1e-10)
      return {false, "randomness bound nonzero at design " + std::to_string(i)};
    if (!membership(RateQuadruple{0.0, 0.0, 0.0, 0.0}, capacity_region(iv)))
      return {false, "zero-randomness point infeasible at design " + std::to_string(i)};
  }

  const InputDesign& d = designs.front().first;
  const DecoderTables tables(d, py, pz);
  const Thresholds th{0.0, 0.0, 0.0, 0.0};
  for (std::uint64_t t = 0; t < 50; ++t) {
    const Codebook cb(d, CodeSizes{2, 1, 2, 2, 2}, 2, Rng::derive(5002, t));
    const ExactMetrics m = exact_metrics(cb, py, pz, tables, th);
    if (m.leakage != 0.0)
      return {false, "nonzero leakage at codebook " + std::to_string(t)};
  }
  return {true, "40 designs degenerate as required; 50 codebooks leak exactly zero"};
}

// 6. The sum identity holds to 1e-10 on 1000 random joints over paired
//    binary sequences of length up to 3.
Outcome criterion_sum_identity() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(Rng::derive(6000, seed));
    const int n = 1 + static_cast<int>(seed % 3);
    std::vector<Axis> axes;
    std::vector<std::string> y_axes, z_axes;
    for (int t = 0; t < n; ++t) {
      y_axes.push_back("Y" + std::to_string(t));
      axes.push_back({y_axes.back(), 2});
    }
    for (int t = 0; t < n; ++t) {
      z_axes.push_back("Z" + std::to_string(t));
      axes.push_back({z_axes.back(), 2});
    }
    std::size_t cells = 1;
    for (const Axis& a : axes) cells *= static_cast<std::size_t>(a.size);
    const Joint j(axes, rng.dirichlet(static_cast<int>(cells)));
    const auto [lhs, rhs] = csiszar_sum_check(j, y_axes, z_axes);
    worst = std::max(worst, std::fabs(lhs - rhs));
    if (std::fabs(lhs - rhs) > 1e-10)
      return {false, "identity violated at seed " + std::to_string(seed)};
  }
  std::ostringstream detail;
  detail << "1000 joints, worst deviation " << worst;
  return {true, detail.str()};
}

// 7. The no-randomness projection equals the eliminated system exactly, and
//    the relaxed region contains the full one, on 100 random instances.
Outcome criterion_region_variants() {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(Rng::derive(7000, seed));
    const Channel py = random_channel(rng, 2, 2, 2);
    const Channel pz = random_channel(rng, 2, 2, 2);
    const InputDesign d = random_design(rng, 1 + static_cast<int>(seed % 3),
                                        1 + static_cast<int>(seed % 5), 2, 2);
    const InfoVector iv = info_vector(d, py, pz);
    const LinearSystem region = capacity_region(iv);
    if (!equivalent(project_no_randomness(iv), fm_eliminate(region, "rd")))
      return {false, "projection mismatch at seed " + std::to_string(seed)};
    for (const Inequality& iq : relaxed_region(iv).inequalities)
      if (!is_redundant(region, iq))
        return {false, "containment failed at seed " + std::to_string(seed)};
  }
  return {true, "100/100 instances"};
}

// 8. Every subcommand, run twice with identical flags and seed and with a
//    different worker count, produces byte-identical output files.
Outcome criterion_cli_determinism(const std::string& tool) {
  const fs::path dir = fs::temp_directory_path() / "cicc_acceptance_cli";
  fs::remove_all(dir);
  fs::create_directories(dir);

  const fs::path spec = dir / "problem.spec";
  {
    std::ofstream out(spec, std::ios::binary);
    out << "sizes x1=2 x2=2 y=2 z=2\n"
           "Y:\n0.9 0.1\n0.7 0.3\n0.2 0.8\n0.4 0.6\n"
           "Z:\n0.6 0.4\n0.5 0.5\n0.45 0.55\n0.3 0.7\n"
           "design u=2 v=2\n"
           "X2:\n0.5 0.5\n"
           "U|X2:\n0.6 0.4\n0.3 0.7\n"
           "V|UX2:\n0.5 0.5\n0.2 0.8\n0.7 0.3\n0.4 0.6\n"
           "X1|V:\n0.8 0.2\n0.25 0.75\n"
           "rates rd=0.4 r0=0.3 r1=0.5 rs=0.3\n"
           "delta 0.06\n";
  }

  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  const auto run = [&](const std::string& args) {
    const std::string cmd = tool + " " + args + " >/dev/null 2>&1";
    return std::system(cmd.c_str());
  };

  struct Case {
    std::string name;
    std::string args;
    std::vector<std::string> files;
    bool threaded;
  };
  const std::string sp = " --spec " + spec.string();
  const std::vector<Case> cases{
      {"region", sp + " --seed 7 --instances 8 --max-u 3 --max-v 4",
       {"region_points.csv", "systems.txt"}, true},
      {"fm-verify", " --seed 3 --instances 6", {"fm_verify.csv"}, true},
      {"exponent", sp + " --n 2", {"psi_curve.csv", "psi_prime.csv", "bound_vs_n.csv"},
       false},
      {"simulate", sp + " --codebooks 6 --n 1 --seed 9",
       {"simulate_trials.csv", "simulate_summary.csv"}, true},
      {"resolve", " --seed 5 --instances 40 --m1 2 --m2 4",
       {"resolve_trials.csv", "resolve_summary.csv"}, true},
  };

  for (const Case& c : cases) {
    const fs::path out_a = dir / (c.name + "_a");
    const fs::path out_b = dir / (c.name + "_b");
    const fs::path out_t = dir / (c.name + "_t");
    if (run(c.name + c.args + " --out " + out_a.string()) != 0)
      return {false, c.name + " exited nonzero"};
    if (run(c.name + c.args + " --out " + out_b.string()) != 0)
      return {false, c.name + " exited nonzero on the repeat run"};
    std::vector<fs::path> outs{out_b};
    if (c.threaded) {
      if (run(c.name + c.args + " --threads 4 --out " + out_t.string()) != 0)
        return {false, c.name + " exited nonzero with --threads 4"};
      outs.push_back(out_t);
    }
    for (const std::string& f : c.files)
      for (const fs::path& other : outs)
        if (slurp(out_a / f) != slurp(other / f))
          return {false, c.name + ": " + f + " differs between runs"};
  }
  return {true, "5 subcommands byte-identical across repeats and worker counts"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cicc_acceptance <path-to-cicc-tool>\n";
    return 2;
  }
  const std::string tool = argv[1];

  int failures = 0;
  const auto report = [&](int number, const std::string& name, const Outcome& o,
                          double seconds) {
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << number << ": " << name << " ["
              << seconds << "s] " << o.detail << "\n";
    if (!o.pass) ++failures;
  };
  const auto timed = [&](int number, const std::string& name, auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, "unhandled exception"};
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(number, name, o, seconds);
  };

  timed(1, "exponent derivative identities", criterion_psi_derivative);
  timed(2, "slack elimination reduction", criterion_fm_reduction);
  timed(3, "non-asymptotic bounds hold empirically", criterion_nonasymptotic_bounds);
  timed(4, "resolvability bound", criterion_resolvability);
  timed(5, "degenerate eavesdropper sanity", criterion_degenerate_eavesdropper);
  timed(6, "sum identity", criterion_sum_identity);
  timed(7, "region variant consistency", criterion_region_variants);
  timed(8, "command-line determinism", [&] { return criterion_cli_determinism(tool); });

  if (failures != 0) std::cout << failures << " criterion(s) failed\n";
  return failures == 0 ? 0 : 1;
}
