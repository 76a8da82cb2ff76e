#include "cicc/rng.hpp"

#include <cmath>

#include "cicc/prob.hpp"

namespace cicc {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t index) {
  // splitmix64-style mixing of the pair; avalanche on both words.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  return mix64(mix64(z) + 0x9e3779b97f4a7c15ull);
}

double Rng::exponential() { return -std::log(open01()); }

int Rng::uniform_int(int lo, int hi) {
  const int span = hi - lo + 1;
  int v = lo + static_cast<int>(uniform01() * span);
  return v > hi ? hi : v;
}

int Rng::sample(const Dist& dist) {
  const double u = uniform01();
  double acc = 0.0;
  const std::size_t n = dist.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    acc += dist[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(n - 1);
}

std::vector<double> Rng::dirichlet(int size) {
  std::vector<double> w(size);
  double sum = 0.0;
  for (double& x : w) {
    x = exponential();
    sum += x;
  }
  for (double& x : w) x /= sum;
  return w;
}

}  // namespace cicc
