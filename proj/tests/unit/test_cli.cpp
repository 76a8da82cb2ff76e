#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "cicc/cli.hpp"
#include "cicc/specfile.hpp"
#include "test_util.hpp"

using namespace cicc;
using test::thrown_kind;

namespace {

namespace fs = std::filesystem;

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"cicc"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("cicc_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* kBasicSpec = R"(# binary test channels
sizes x1=2 x2=2 y=2 z=2
Y:
0.9 0.1
0.7 0.3
0.2 0.8
0.4 0.6
Z:
0.6 0.4
0.5 0.5
0.45 0.55
0.3 0.7
)";

const char* kDesignBlock = R"(design u=2 v=2
X2:
0.5 0.5
U|X2:
0.6 0.4
0.3 0.7
V|UX2:
0.5 0.5
0.2 0.8
0.7 0.3
0.4 0.6
X1|V:
0.8 0.2
0.25 0.75
rates rd=0.4 r0=0.3 r1=0.5 rs=0.3
delta 0.06
)";

fs::path write_spec(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "problem.spec";
  std::ofstream out(p, std::ios::binary);
  out << text;
  return p;
}

}  // namespace

TEST_CASE("parse_spec") {
  SUBCASE("minimal identity-style file") {
    const char* text =
        "sizes x1=2 x2=1 y=2 z=2\n"
        "Y:\n1 0\n0 1\nZ:\n1 0\n0 1\n";
    const ProblemSpec spec = parse_spec_text(text, "mini");
    CHECK(spec.x1_size == 2);
    CHECK(spec.x2_size == 1);
    CHECK(spec.py.prob(std::vector<int>{0, 0}, 0) == 1.0);
    CHECK(spec.py.prob(std::vector<int>{1, 0}, 1) == 1.0);
    CHECK(!spec.design.has_value());
  }

  SUBCASE("row summing to 0.9 names the row") {
    const char* text =
        "sizes x1=2 x2=1 y=2 z=2\n"
        "Y:\n1 0\n0.6 0.3\nZ:\n1 0\n0 1\n";
    bool caught = false;
    try {
      parse_spec_text(text, "bad");
    } catch (const Error& e) {
      caught = true;
      CHECK(e.kind() == ErrorKind::StochasticityError);
      CHECK(std::string(e.what()).find("row 1 of table Y") != std::string::npos);
    }
    CHECK(caught);
  }

  SUBCASE("missing Z table") {
    const char* text = "sizes x1=2 x2=1 y=2 z=2\nY:\n1 0\n0 1\n";
    CHECK(thrown_kind([&] { parse_spec_text(text, "noz"); }) == ErrorKind::DimensionError);
  }

  SUBCASE("full file with design and parameters") {
    const ProblemSpec spec =
        parse_spec_text(std::string(kBasicSpec) + kDesignBlock + "n 2\nseed 11\n", "full");
    REQUIRE(spec.design.has_value());
    CHECK(spec.design->u_size() == 2);
    REQUIRE(spec.rates.has_value());
    CHECK(spec.rates->rd == 0.4);
    CHECK(spec.delta == 0.06);
    CHECK(spec.n == 2);
    CHECK(spec.seed == 11);
  }

  SUBCASE("tables before sizes are rejected") {
    CHECK(thrown_kind([&] { parse_spec_text("Y:\n1 0\n", "early"); }) ==
          ErrorKind::ParseError);
  }

  SUBCASE("trailing garbage in a row is rejected") {
    const char* text = "sizes x1=1 x2=1 y=2 z=2\nY:\n0.5 0.5 oops\nZ:\n0.5 0.5\n";
    CHECK(thrown_kind([&] { parse_spec_text(text, "junk"); }) == ErrorKind::ParseError);
  }
}

TEST_CASE("cli validation paths") {
  const fs::path dir = fresh_dir("validation");

  SUBCASE("missing spec file") {
    CHECK(run({"region", "--spec", (dir / "nope.spec").string(),
               "--out", (dir / "out").string()}) == 1);
  }

  SUBCASE("simulate without a design") {
    const fs::path spec = write_spec(dir, kBasicSpec);
    CHECK(run({"simulate", "--spec", spec.string(), "--out", (dir / "out").string()}) == 1);
  }

  SUBCASE("simulate with rates that empty a message set") {
    const fs::path spec = write_spec(
        dir, std::string(kBasicSpec) + kDesignBlock + "rates rd=0 r0=0 r1=0 rs=0\n");
    CHECK(run({"simulate", "--spec", spec.string(), "--out", (dir / "out").string(),
               "--codebooks", "2"}) == 1);
  }

  SUBCASE("unknown subcommand") {
    CHECK(run({"frobnicate"}) == 1);
  }
}

TEST_CASE("cli runs and determinism") {
  const fs::path dir = fresh_dir("runs");
  const fs::path spec = write_spec(dir, std::string(kBasicSpec) + kDesignBlock);

  SUBCASE("fm-verify passes and reports") {
    const fs::path out = dir / "fm";
    CHECK(run({"fm-verify", "--instances", "6", "--seed", "3",
               "--out", out.string()}) == 0);
    const std::string csv = slurp(out / "fm_verify.csv");
    CHECK(csv.find("instance,") == 0);
    CHECK(csv.find("\r") == std::string::npos);  // LF endings
  }

  SUBCASE("region output is byte-identical across runs and worker counts") {
    const fs::path out1 = dir / "r1";
    const fs::path out2 = dir / "r2";
    const fs::path out4 = dir / "r4";
    for (const auto& [out, threads] :
         std::vector<std::pair<fs::path, const char*>>{{out1, "1"}, {out2, "1"}, {out4, "4"}}) {
      CHECK(run({"region", "--spec", spec.string(), "--out", out.string(), "--seed", "7",
                 "--instances", "10", "--max-u", "3", "--max-v", "4", "--threads",
                 threads}) == 0);
    }
    CHECK(slurp(out1 / "region_points.csv") == slurp(out2 / "region_points.csv"));
    CHECK(slurp(out1 / "region_points.csv") == slurp(out4 / "region_points.csv"));
    CHECK(slurp(out1 / "systems.txt") == slurp(out4 / "systems.txt"));
  }

  SUBCASE("simulate writes trials and summary") {
    const fs::path out = dir / "sim";
    CHECK(run({"simulate", "--spec", spec.string(), "--out", out.string(), "--codebooks",
               "4", "--n", "1", "--seed", "5"}) == 0);
    const std::string trials = slurp(out / "simulate_trials.csv");
    CHECK(trials.find("trial,perr_bob,perr_eve,leakage") == 0);
    // Header plus four rows.
    CHECK(std::count(trials.begin(), trials.end(), '\n') == 5);
    const std::string summary = slurp(out / "simulate_summary.csv");
    CHECK(summary.find("mean_bob") != std::string::npos);
  }

  SUBCASE("resolve runs with defaults and with fixed theta") {
    const fs::path out = dir / "res";
    CHECK(run({"resolve", "--out", out.string(), "--instances", "50", "--m1", "2", "--m2",
               "2", "--seed", "3"}) == 0);
    const std::string summary = slurp(out / "resolve_summary.csv");
    CHECK(summary.find("mean_divergence") != std::string::npos);
    const fs::path out2 = dir / "res_fixed";
    CHECK(run({"resolve", "--out", out2.string(), "--instances", "10", "--theta", "0.5",
               "--theta2", "0.5", "--seed", "3"}) == 0);
  }

  SUBCASE("exponent writes the curve files") {
    const fs::path out = dir / "exp";
    CHECK(run({"exponent", "--spec", spec.string(), "--out", out.string(), "--n", "3"}) == 0);
    const std::string curve = slurp(out / "psi_curve.csv");
    CHECK(curve.find("theta,psi_dummy,psi_private") == 0);
    CHECK(std::count(curve.begin(), curve.end(), '\n') == 101);
    const std::string prime = slurp(out / "psi_prime.csv");
    CHECK(prime.find("finite_difference") != std::string::npos);
  }

  SUBCASE("bits flag rescales reported rates") {
    const fs::path out_n = dir / "nats";
    const fs::path out_b = dir / "bits";
    CHECK(run({"region", "--spec", spec.string(), "--out", out_n.string(), "--seed", "2",
               "--instances", "3", "--max-u", "2", "--max-v", "2"}) == 0);
    CHECK(run({"region", "--spec", spec.string(), "--out", out_b.string(), "--seed", "2",
               "--instances", "3", "--max-u", "2", "--max-v", "2", "--bits"}) == 0);
    CHECK(slurp(out_n / "region_points.csv") != slurp(out_b / "region_points.csv"));
  }
}
