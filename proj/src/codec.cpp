#include "cicc/codec.hpp"

#include <cmath>
#include <limits>

#include "cicc/exponents.hpp"
#include "cicc/parallel.hpp"
#include "cicc/rng.hpp"

namespace cicc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

long long checked_product(std::initializer_list<long long> xs, long long cap) {
  long long p = 1;
  for (long long x : xs) {
    require(x >= 1, ErrorKind::ShapeMismatch, "set sizes must be >= 1");
    require(p <= cap / x, ErrorKind::TooLarge, "codebook too large to enumerate");
    p *= x;
  }
  return p;
}

double ratio_log(double num, double den) {
  if (num == 0.0) return -kInf;
  if (den == 0.0) return kInf;
  return std::log(num / den);
}

// Sum of per-letter log ratios with the convention that any -inf letter
// dominates (the tuple cannot occur under the numerator law).
double llr_sum(std::span<const double> letters) {
  double sum = 0.0;
  bool plus_inf = false;
  for (double l : letters) {
    if (l == -kInf) return -kInf;
    if (l == kInf) {
      plus_inf = true;
      continue;
    }
    sum += l;
  }
  return plus_inf ? kInf : sum;
}

}  // namespace

Codebook::Codebook(const InputDesign& design, const CodeSizes& sizes, int n, std::uint64_t seed)
    : design_(design), sizes_(sizes), n_(n), seed_(seed) {
  require(n >= 1, ErrorKind::ShapeMismatch, "blocklength must be >= 1");
  const long long total = checked_product({sizes.k, sizes.i, sizes.j, sizes.s, sizes.a, n},
                                          static_cast<long long>(kMaxTableCells));
  (void)total;
  Rng rng(seed);
  const auto draw = [&](const Dist& d) { return rng.sample(d); };

  x2_.resize(static_cast<std::size_t>(sizes.k) * n_);
  for (long long k = 0; k < sizes.k; ++k)
    for (int t = 0; t < n_; ++t) x2_[static_cast<std::size_t>(k) * n_ + t] = draw(design_.p_x2);

  u_.resize(static_cast<std::size_t>(sizes.k) * sizes.i * n_);
  for (long long k = 0; k < sizes.k; ++k)
    for (long long i = 0; i < sizes.i; ++i)
      for (int t = 0; t < n_; ++t)
        u_[(static_cast<std::size_t>(k) * sizes.i + i) * n_ + t] =
            draw(design_.p_u_given_x2.row(static_cast<std::size_t>(x2(k)[t])));

  v_.resize(static_cast<std::size_t>(sizes.k) * sizes.i * sizes.j * sizes.s * n_);
  for (long long k = 0; k < sizes.k; ++k)
    for (long long i = 0; i < sizes.i; ++i)
      for (long long j = 0; j < sizes.j; ++j)
        for (long long s = 0; s < sizes.s; ++s)
          for (int t = 0; t < n_; ++t) {
            const int cond[] = {u(k, i)[t], x2(k)[t]};
            const std::size_t idx =
                (((static_cast<std::size_t>(k) * sizes.i + i) * sizes.j + j) * sizes.s + s) * n_ +
                t;
            v_[idx] = draw(design_.p_v_given_ux2.row(cond));
          }

  x1_.resize(static_cast<std::size_t>(sizes.k) * sizes.i * sizes.j * sizes.s * sizes.a * n_);
  for (long long k = 0; k < sizes.k; ++k)
    for (long long i = 0; i < sizes.i; ++i)
      for (long long j = 0; j < sizes.j; ++j)
        for (long long s = 0; s < sizes.s; ++s)
          for (long long a = 0; a < sizes.a; ++a)
            for (int t = 0; t < n_; ++t) {
              const std::size_t idx =
                  ((((static_cast<std::size_t>(k) * sizes.i + i) * sizes.j + j) * sizes.s + s) *
                       sizes.a +
                   a) *
                      n_ +
                  t;
              x1_[idx] = draw(design_.p_x1_given_v.row(static_cast<std::size_t>(v(k, i, j, s)[t])));
            }
}

std::span<const int> Codebook::x2(long long k) const {
  return {x2_.data() + static_cast<std::size_t>(k) * n_, static_cast<std::size_t>(n_)};
}
std::span<const int> Codebook::u(long long k, long long i) const {
  return {u_.data() + (static_cast<std::size_t>(k) * sizes_.i + i) * n_,
          static_cast<std::size_t>(n_)};
}
std::span<const int> Codebook::v(long long k, long long i, long long j, long long s) const {
  const std::size_t idx =
      ((static_cast<std::size_t>(k) * sizes_.i + i) * sizes_.j + j) * sizes_.s + s;
  return {v_.data() + idx * n_, static_cast<std::size_t>(n_)};
}
std::span<const int> Codebook::x1(long long k, long long i, long long j, long long s,
                                  long long a) const {
  const std::size_t idx =
      (((static_cast<std::size_t>(k) * sizes_.i + i) * sizes_.j + j) * sizes_.s + s) * sizes_.a +
      a;
  return {x1_.data() + idx * n_, static_cast<std::size_t>(n_)};
}

Codebook gen_codebook(const InputDesign& design, const CodeSizes& sizes, int n,
                      std::uint64_t seed) {
  return Codebook(design, sizes, n, seed);
}

DecoderTables::DecoderTables(const InputDesign& design, const Channel& py, const Channel& pz) {
  nu_ = design.u_size();
  nv_ = design.v_size();
  nx2_ = design.x2_size();
  ny_ = py.out_size();
  nz_ = pz.out_size();
  const int nx1 = design.x1_size();
  require(py.in_sizes() == (std::vector<int>{nx1, nx2_}), ErrorKind::ShapeMismatch,
          "P(Y|X1,X2) conditioning must be (X1, X2)");
  require(pz.in_sizes() == (std::vector<int>{nx1, nx2_}), ErrorKind::ShapeMismatch,
          "P(Z|X1,X2) conditioning must be (X1, X2)");

  // Derived channels from the design factors; the cloud index is inert in
  // P(.|V,X2) by the Markov chain.
  std::vector<double> y_vx2(static_cast<std::size_t>(nv_) * nx2_ * ny_, 0.0);
  std::vector<double> z_vx2(static_cast<std::size_t>(nv_) * nx2_ * nz_, 0.0);
  for (int v = 0; v < nv_; ++v)
    for (int x2 = 0; x2 < nx2_; ++x2)
      for (int x1 = 0; x1 < nx1; ++x1) {
        const double w = design.p_x1_given_v.row(v)[x1];
        if (w == 0.0) continue;
        const int x1x2[] = {x1, x2};
        const Dist& ry = py.row(x1x2);
        const Dist& rz = pz.row(x1x2);
        for (int y = 0; y < ny_; ++y)
          y_vx2[(static_cast<std::size_t>(v) * nx2_ + x2) * ny_ + y] += w * ry[y];
        for (int z = 0; z < nz_; ++z)
          z_vx2[(static_cast<std::size_t>(v) * nx2_ + x2) * nz_ + z] += w * rz[z];
      }

  std::vector<double> y_ux2(static_cast<std::size_t>(nu_) * nx2_ * ny_, 0.0);
  std::vector<double> z_ux2(static_cast<std::size_t>(nu_) * nx2_ * nz_, 0.0);
  for (int u = 0; u < nu_; ++u)
    for (int x2 = 0; x2 < nx2_; ++x2) {
      const int ux2[] = {u, x2};
      const Dist& rv = design.p_v_given_ux2.row(ux2);
      for (int v = 0; v < nv_; ++v) {
        if (rv[v] == 0.0) continue;
        for (int y = 0; y < ny_; ++y)
          y_ux2[(static_cast<std::size_t>(u) * nx2_ + x2) * ny_ + y] +=
              rv[v] * y_vx2[(static_cast<std::size_t>(v) * nx2_ + x2) * ny_ + y];
        for (int z = 0; z < nz_; ++z)
          z_ux2[(static_cast<std::size_t>(u) * nx2_ + x2) * nz_ + z] +=
              rv[v] * z_vx2[(static_cast<std::size_t>(v) * nx2_ + x2) * nz_ + z];
      }
    }

  std::vector<double> y_x2(static_cast<std::size_t>(nx2_) * ny_, 0.0);
  for (int x2 = 0; x2 < nx2_; ++x2)
    for (int u = 0; u < nu_; ++u) {
      const double w = design.p_u_given_x2.row(x2)[u];
      if (w == 0.0) continue;
      for (int y = 0; y < ny_; ++y)
        y_x2[static_cast<std::size_t>(x2) * ny_ + y] +=
            w * y_ux2[(static_cast<std::size_t>(u) * nx2_ + x2) * ny_ + y];
    }

  std::vector<double> y_m(ny_, 0.0);
  std::vector<double> z_m(nz_, 0.0);
  for (int x2 = 0; x2 < nx2_; ++x2) {
    const double w = design.p_x2[x2];
    if (w == 0.0) continue;
    for (int y = 0; y < ny_; ++y) y_m[y] += w * y_x2[static_cast<std::size_t>(x2) * ny_ + y];
    for (int u = 0; u < nu_; ++u) {
      const double wu = w * design.p_u_given_x2.row(x2)[u];
      for (int z = 0; z < nz_; ++z)
        z_m[z] += wu * z_ux2[(static_cast<std::size_t>(u) * nx2_ + x2) * nz_ + z];
    }
  }

  l0_.resize(static_cast<std::size_t>(nu_) * nx2_ * nz_);
  for (int u = 0; u < nu_; ++u)
    for (int x2 = 0; x2 < nx2_; ++x2)
      for (int z = 0; z < nz_; ++z)
        l0_[(static_cast<std::size_t>(u) * nx2_ + x2) * nz_ + z] =
            ratio_log(z_ux2[(static_cast<std::size_t>(u) * nx2_ + x2) * nz_ + z], z_m[z]);

  const std::size_t cells = static_cast<std::size_t>(nu_) * nv_ * nx2_ * ny_;
  l1_.resize(cells);
  l2_.resize(cells);
  l3_.resize(cells);
  for (int u = 0; u < nu_; ++u)
    for (int v = 0; v < nv_; ++v)
      for (int x2 = 0; x2 < nx2_; ++x2)
        for (int y = 0; y < ny_; ++y) {
          const std::size_t idx =
              ((static_cast<std::size_t>(u) * nv_ + v) * nx2_ + x2) * ny_ + y;
          const double num = y_vx2[(static_cast<std::size_t>(v) * nx2_ + x2) * ny_ + y];
          l1_[idx] = ratio_log(num, y_ux2[(static_cast<std::size_t>(u) * nx2_ + x2) * ny_ + y]);
          l2_[idx] = ratio_log(num, y_x2[static_cast<std::size_t>(x2) * ny_ + y]);
          l3_[idx] = ratio_log(num, y_m[y]);
        }
}

double DecoderTables::llr0(int u, int x2, int z) const {
  return l0_[(static_cast<std::size_t>(u) * nx2_ + x2) * nz_ + z];
}
double DecoderTables::llr1(int u, int v, int x2, int y) const {
  return l1_[((static_cast<std::size_t>(u) * nv_ + v) * nx2_ + x2) * ny_ + y];
}
double DecoderTables::llr2(int u, int v, int x2, int y) const {
  return l2_[((static_cast<std::size_t>(u) * nv_ + v) * nx2_ + x2) * ny_ + y];
}
double DecoderTables::llr3(int u, int v, int x2, int y) const {
  return l3_[((static_cast<std::size_t>(u) * nv_ + v) * nx2_ + x2) * ny_ + y];
}

namespace {

// Letterwise sums for the Bob tests; returns false as soon as the tuple
// leaves one of the three sets.
bool in_bob_set(std::span<const int> useq, std::span<const int> vseq,
                std::span<const int> x2seq, std::span<const int> yseq,
                const DecoderTables& tb, const Thresholds& th) {
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  bool pi1 = false, pi2 = false, pi3 = false;
  for (std::size_t t = 0; t < yseq.size(); ++t) {
    const double a = tb.llr1(useq[t], vseq[t], x2seq[t], yseq[t]);
    const double b = tb.llr2(useq[t], vseq[t], x2seq[t], yseq[t]);
    const double c = tb.llr3(useq[t], vseq[t], x2seq[t], yseq[t]);
    if (a == -kInf || b == -kInf || c == -kInf) return false;
    if (a == kInf) pi1 = true; else s1 += a;
    if (b == kInf) pi2 = true; else s2 += b;
    if (c == kInf) pi3 = true; else s3 += c;
  }
  return (pi1 || s1 >= th.alpha1) && (pi2 || s2 >= th.alpha2) && (pi3 || s3 >= th.alpha3);
}

bool in_eve_set(std::span<const int> useq, std::span<const int> x2seq,
                std::span<const int> zseq, const DecoderTables& tb, const Thresholds& th) {
  double s = 0.0;
  bool pi = false;
  for (std::size_t t = 0; t < zseq.size(); ++t) {
    const double a = tb.llr0(useq[t], x2seq[t], zseq[t]);
    if (a == -kInf) return false;
    if (a == kInf) pi = true; else s += a;
  }
  return pi || s >= th.alpha0;
}

}  // namespace

bool t_membership(std::span<const int> useq, std::span<const int> vseq,
                  std::span<const int> x2seq, std::span<const int> out_seq,
                  const DecoderTables& tables, const Thresholds& th, TSet which) {
  const std::size_t n = out_seq.size();
  require(useq.size() == n && x2seq.size() == n, ErrorKind::ShapeMismatch,
          "sequences must share one length");
  std::vector<double> letters(n);
  double alpha = 0.0;
  switch (which) {
    case TSet::T0:
      for (std::size_t t = 0; t < n; ++t)
        letters[t] = tables.llr0(useq[t], x2seq[t], out_seq[t]);
      alpha = th.alpha0;
      break;
    case TSet::T1:
    case TSet::T2:
    case TSet::T3: {
      require(vseq.size() == n, ErrorKind::ShapeMismatch, "sequences must share one length");
      for (std::size_t t = 0; t < n; ++t) {
        letters[t] = which == TSet::T1   ? tables.llr1(useq[t], vseq[t], x2seq[t], out_seq[t])
                     : which == TSet::T2 ? tables.llr2(useq[t], vseq[t], x2seq[t], out_seq[t])
                                         : tables.llr3(useq[t], vseq[t], x2seq[t], out_seq[t]);
      }
      alpha = which == TSet::T1 ? th.alpha1 : which == TSet::T2 ? th.alpha2 : th.alpha3;
      break;
    }
  }
  const double s = llr_sum(letters);
  return s == kInf || (s != -kInf && s >= alpha);
}

bool t_membership(std::span<const int> useq, std::span<const int> vseq,
                  std::span<const int> x2seq, std::span<const int> out_seq,
                  const InputDesign& design, const Channel& py, const Channel& pz,
                  const Thresholds& th, TSet which) {
  return t_membership(useq, vseq, x2seq, out_seq, DecoderTables(design, py, pz), th, which);
}

std::optional<MessageIndex> bob_decode(std::span<const int> y_seq, const Codebook& cb,
                                       const DecoderTables& tables, const Thresholds& th) {
  const CodeSizes& sz = cb.sizes();
  std::optional<MessageIndex> hit;
  for (long long k = 0; k < sz.k; ++k)
    for (long long i = 0; i < sz.i; ++i)
      for (long long j = 0; j < sz.j; ++j)
        for (long long s = 0; s < sz.s; ++s) {
          if (!in_bob_set(cb.u(k, i), cb.v(k, i, j, s), cb.x2(k), y_seq, tables, th)) continue;
          if (hit.has_value()) return std::nullopt;  // ambiguous
          hit = MessageIndex{k, i, j, s};
        }
  return hit;
}

std::optional<long long> eve_decode(std::span<const int> z_seq, const Codebook& cb,
                                    const DecoderTables& tables, const Thresholds& th) {
  const CodeSizes& sz = cb.sizes();
  std::optional<long long> hit;
  for (long long k = 0; k < sz.k; ++k) {
    bool any = false;
    for (long long i = 0; i < sz.i && !any; ++i)
      any = in_eve_set(cb.u(k, i), cb.x2(k), z_seq, tables, th);
    if (!any) continue;
    if (hit.has_value()) return std::nullopt;
    hit = k;
  }
  return hit;
}

namespace {

// Iterates output sequences as flat indices 0 .. |out|^n - 1 with big-endian
// letter decoding, multiplying per-letter channel probabilities.
double seq_prob(const Channel& ch, std::span<const int> x1seq, std::span<const int> x2seq,
                std::size_t out_flat, int out_size, std::vector<int>& scratch) {
  const int n = static_cast<int>(x1seq.size());
  std::size_t rest = out_flat;
  for (int t = n; t-- > 0;) {
    scratch[t] = static_cast<int>(rest % static_cast<std::size_t>(out_size));
    rest /= static_cast<std::size_t>(out_size);
  }
  double p = 1.0;
  for (int t = 0; t < n; ++t) {
    const int cond[] = {x1seq[t], x2seq[t]};
    p *= ch.prob(cond, scratch[t]);
    if (p == 0.0) return 0.0;
  }
  return p;
}

std::size_t checked_seq_count(int alphabet, int n) {
  std::size_t total = 1;
  for (int t = 0; t < n; ++t) {
    require(total <= kMaxTableCells / static_cast<std::size_t>(alphabet), ErrorKind::TooLarge,
            "output-sequence space exceeds the cell cap");
    total *= static_cast<std::size_t>(alphabet);
  }
  return total;
}

}  // namespace

ExactMetrics exact_metrics(const Codebook& cb, const Channel& py, const Channel& pz,
                           const DecoderTables& tables, const Thresholds& th) {
  const CodeSizes& sz = cb.sizes();
  const int n = cb.n();
  const std::size_t ny_n = checked_seq_count(py.out_size(), n);
  const std::size_t nz_n = checked_seq_count(pz.out_size(), n);
  const double inv_messages = 1.0 / (static_cast<double>(sz.k) * sz.i * sz.j * sz.s * sz.a);

  ExactMetrics m;
  std::vector<int> out_seq(n), scratch(n);
  const auto decode_flat = [&](std::size_t flat, int alphabet) {
    std::size_t rest = flat;
    for (int t = n; t-- > 0;) {
      out_seq[t] = static_cast<int>(rest % static_cast<std::size_t>(alphabet));
      rest /= static_cast<std::size_t>(alphabet);
    }
    return std::span<const int>(out_seq.data(), static_cast<std::size_t>(n));
  };

  // Bob: decode each output sequence once, then charge every message whose
  // transmission can produce it.
  for (std::size_t yf = 0; yf < ny_n; ++yf) {
    const auto decoded = bob_decode(decode_flat(yf, py.out_size()), cb, tables, th);
    for (long long k = 0; k < sz.k; ++k)
      for (long long i = 0; i < sz.i; ++i)
        for (long long j = 0; j < sz.j; ++j)
          for (long long s = 0; s < sz.s; ++s) {
            const bool correct =
                decoded.has_value() && *decoded == MessageIndex{k, i, j, s};
            if (correct) continue;
            for (long long a = 0; a < sz.a; ++a) {
              const double p = seq_prob(py, cb.x1(k, i, j, s, a), cb.x2(k), yf, py.out_size(),
                                        scratch);
              m.perr_bob += inv_messages * p;
            }
          }
  }

  // Eve: same pattern over Z sequences, plus the conditional output laws
  // P(z^n | s) needed for the exact leakage.
  std::vector<std::vector<double>> pz_given_s(static_cast<std::size_t>(sz.s),
                                              std::vector<double>(nz_n, 0.0));
  const double inv_klja = 1.0 / (static_cast<double>(sz.k) * sz.i * sz.j * sz.a);
  for (std::size_t zf = 0; zf < nz_n; ++zf) {
    const auto decoded = eve_decode(decode_flat(zf, pz.out_size()), cb, tables, th);
    for (long long k = 0; k < sz.k; ++k) {
      const bool correct = decoded.has_value() && *decoded == k;
      for (long long i = 0; i < sz.i; ++i)
        for (long long j = 0; j < sz.j; ++j)
          for (long long s = 0; s < sz.s; ++s)
            for (long long a = 0; a < sz.a; ++a) {
              const double p = seq_prob(pz, cb.x1(k, i, j, s, a), cb.x2(k), zf, pz.out_size(),
                                        scratch);
              if (!correct) m.perr_eve += inv_messages * p;
              pz_given_s[static_cast<std::size_t>(s)][zf] += inv_klja * p;
            }
    }
  }

  // Exact leakage I(S; Z^n) = average KL between the per-message output law
  // and their mixture.
  std::vector<double> mix(nz_n, 0.0);
  const double inv_s = 1.0 / static_cast<double>(sz.s);
  for (long long s = 0; s < sz.s; ++s)
    for (std::size_t zf = 0; zf < nz_n; ++zf)
      mix[zf] += inv_s * pz_given_s[static_cast<std::size_t>(s)][zf];
  for (long long s = 0; s < sz.s; ++s)
    for (std::size_t zf = 0; zf < nz_n; ++zf) {
      const double p = pz_given_s[static_cast<std::size_t>(s)][zf];
      if (p > 0.0) m.leakage += inv_s * p * std::log(p / mix[zf]);
    }
  return m;
}

ExperimentReport experiment(const InputDesign& design, const Channel& py, const Channel& pz,
                            const RateQuadruple& rates, double delta, int n, int codebooks,
                            std::uint64_t seed, int threads) {
  require(codebooks >= 1, ErrorKind::BadBudget, "codebook count must be >= 1");
  require(delta > 0.0, ErrorKind::ShapeMismatch, "delta must be positive");
  const InfoVector iv = info_vector(design, py, pz);

  // Feasible interval for the decoding-split rate given the target rates.
  const double lo = std::max(0.0, rates.r1 + rates.rs - iv.ivy_ux2);
  const double hi = std::min(iv.iuxz - rates.r0, rates.r1 - iv.ivz_ux2);
  const double r1s = hi >= lo ? std::max(delta, 0.5 * (lo + hi)) : delta;

  ExperimentReport rep;
  rep.n = n;
  rep.delta = delta;
  rep.slack_r1 = r1s;
  const auto size_floor = [&](double rate) {
    const double exponent = static_cast<double>(n) * rate;
    require(exponent <= 40.0, ErrorKind::TooLarge, "message-set floor exceeds enumerable size");
    return static_cast<long long>(std::floor(std::exp(exponent)));
  };
  rep.sizes.k = size_floor(rates.r0 - delta);
  rep.sizes.i = size_floor(r1s - delta);
  rep.sizes.j = size_floor(rates.r1 - r1s + 2.0 * delta);
  rep.sizes.s = size_floor(rates.rs - 4.0 * delta);
  rep.sizes.a = size_floor(rates.rd + 2.0 * delta);
  require(rep.sizes.k >= 1 && rep.sizes.i >= 1 && rep.sizes.j >= 1 && rep.sizes.s >= 1 &&
              rep.sizes.a >= 1,
          ErrorKind::EmptyMessageSet, "a message-set floor reached zero");

  rep.thresholds.alpha0 = n * (iv.iuxz - delta);
  rep.thresholds.alpha1 = n * (iv.ivy_ux2 - delta);
  rep.thresholds.alpha2 = n * (iv.iuvy_x2 - delta);
  rep.thresholds.alpha3 = n * (iv.iuvxy - delta);

  const DecoderTables tables(design, py, pz);
  rep.trials.assign(static_cast<std::size_t>(codebooks), ExactMetrics{});
  parallel_for_index(static_cast<std::size_t>(codebooks), threads, [&](std::size_t t) {
    const Codebook cb(design, rep.sizes, n, Rng::derive(seed, t));
    rep.trials[t] = exact_metrics(cb, py, pz, tables, rep.thresholds);
  });

  const auto aggregate = [&](auto pick, double& mean, double& se) {
    double sum = 0.0;
    for (const ExactMetrics& t : rep.trials) sum += pick(t);
    mean = sum / static_cast<double>(codebooks);
    if (codebooks > 1) {
      double ss = 0.0;
      for (const ExactMetrics& t : rep.trials) {
        const double d = pick(t) - mean;
        ss += d * d;
      }
      se = std::sqrt(ss / static_cast<double>(codebooks - 1)) /
           std::sqrt(static_cast<double>(codebooks));
    }
  };
  aggregate([](const ExactMetrics& t) { return t.perr_bob; }, rep.mean_bob, rep.se_bob);
  aggregate([](const ExactMetrics& t) { return t.perr_eve; }, rep.mean_eve, rep.se_eve);
  aggregate([](const ExactMetrics& t) { return t.leakage; }, rep.mean_leak, rep.se_leak);

  const auto [bob, eve] = error_bounds(rep.sizes, rep.thresholds, design, py, pz, n);
  rep.bound_bob = bob;
  rep.bound_eve = eve;
  const ThetaOpt opt = optimize_theta(static_cast<double>(rep.sizes.a),
                                      static_cast<double>(rep.sizes.j), design, pz, n);
  rep.theta = opt.theta;
  rep.theta2 = opt.theta2;
  rep.bound_leak = opt.bound;
  return rep;
}

}  // namespace cicc
