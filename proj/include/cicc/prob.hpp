#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cicc/errors.hpp"

namespace cicc {

/// Hard cap on dense table sizes; anything larger raises TooLarge.
inline constexpr std::size_t kMaxTableCells = 100'000'000;

/// Tolerances shared by the whole library: normalization checks use
/// kNormTol, identity-style checks (chain rules, sum identities) use kIdentTol.
inline constexpr double kNormTol = 1e-12;
inline constexpr double kIdentTol = 1e-10;

/// Probability vector over a finite alphabet. Weights are nonnegative and
/// sum to one within kNormTol. All entropic quantities are in nats.
class Dist {
 public:
  explicit Dist(std::vector<double> weights);

  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  const std::vector<double>& weights() const { return w_; }

 private:
  std::vector<double> w_;
};

/// Normalizes arbitrary nonnegative weights into a Dist.
Dist make_dist(std::vector<double> weights);

/// KL divergence D(p || q) in nats, with the 0 ln 0 = 0 convention.
/// Raises AbsoluteContinuityViolated when p(x) > 0 while q(x) = 0.
double kl(const Dist& p, const Dist& q);

/// Shannon entropy in nats.
double entropy(const Dist& p);

/// Conditional distribution table. Rows are indexed by the conditioning
/// tuple in row-major (lexicographic) order over `in_sizes`.
class Channel {
 public:
  Channel(std::vector<int> in_sizes, std::vector<Dist> rows);

  /// Builds a channel from raw row weights, validating each row.
  static Channel from_rows(std::vector<int> in_sizes,
                           const std::vector<std::vector<double>>& rows);

  int input_arity() const { return static_cast<int>(in_sizes_.size()); }
  const std::vector<int>& in_sizes() const { return in_sizes_; }
  int out_size() const { return out_size_; }
  std::size_t row_count() const { return rows_.size(); }

  const Dist& row(std::size_t flat) const { return rows_[flat]; }
  const Dist& row(std::span<const int> idx) const { return rows_[flatten(idx)]; }
  double prob(std::span<const int> idx, int out) const { return rows_[flatten(idx)][out]; }

  std::size_t flatten(std::span<const int> idx) const;

 private:
  std::vector<int> in_sizes_;
  int out_size_;
  std::vector<Dist> rows_;
};

/// n-fold memoryless extension: conditioning axes and the output alphabet
/// become length-n sequences (size s^n each, big-endian sequence indexing).
Channel channel_power(const Channel& ch, int n);

/// One named coordinate of a joint table.
struct Axis {
  std::string name;
  int size;
};

/// Dense joint distribution over named finite coordinates. The table is
/// stored row-major with the last axis fastest. A Joint with zero axes is a
/// scalar with the single cell equal to one.
class Joint {
 public:
  Joint(std::vector<Axis> axes, std::vector<double> table);

  static Joint scalar();

  const std::vector<Axis>& axes() const { return axes_; }
  std::size_t axis_count() const { return axes_.size(); }
  int axis_index(const std::string& name) const;  // UnknownCoordinate if absent
  bool has_axis(const std::string& name) const;

  std::size_t cell_count() const { return p_.size(); }
  double value(std::size_t flat) const { return p_[flat]; }
  const std::vector<double>& table() const { return p_; }
  std::size_t stride(std::size_t axis) const { return strides_[axis]; }

  /// Marginal over the named coordinates, preserving their order in *this.
  Joint marginal(const std::vector<std::string>& keep) const;

  /// Joint entropy in nats.
  double entropy() const;

 private:
  std::vector<Axis> axes_;
  std::vector<std::size_t> strides_;
  std::vector<double> p_;
};

/// Factorized input law P_{X2} P_{U|X2} P_{V|UX2} P_{X1|V}. The last factor
/// conditioning on V alone is what enforces the (U,X2) - V - X1 chain.
struct InputDesign {
  Dist p_x2;
  Channel p_u_given_x2;    // X2 -> U
  Channel p_v_given_ux2;   // (U, X2) -> V
  Channel p_x1_given_v;    // V -> X1

  InputDesign(Dist px2, Channel u_given_x2, Channel v_given_ux2, Channel x1_given_v);

  int u_size() const { return p_u_given_x2.out_size(); }
  int v_size() const { return p_v_given_ux2.out_size(); }
  int x1_size() const { return p_x1_given_v.out_size(); }
  int x2_size() const { return static_cast<int>(p_x2.size()); }
};

/// Full joint over axes (U, V, X1, X2, Y, Z):
///   P = P_{X2} P_{U|X2} P_{V|UX2} P_{X1|V} P_{Y|X1X2} P_{Z|X1X2}.
Joint build_joint(const InputDesign& design, const Channel& py, const Channel& pz);

/// I(A; B | C) in nats by direct summation over the (A,B,C) marginal.
/// C may be empty; empty A or B gives zero. Raises OverlappingSets /
/// UnknownCoordinate on bad coordinate sets.
double cond_mutual_info(const Joint& j, const std::vector<std::string>& a,
                        const std::vector<std::string>& b,
                        const std::vector<std::string>& c = {});

/// i.i.d. n-fold product; every axis alphabet becomes its n-sequences.
Joint product_extension(const Joint& j, int n);

/// Both sides of the sum identity
///   sum_t I(Z_{t+1..n}; Y_t | Y_{1..t-1}, C) =
///   sum_t I(Y_{1..t-1}; Z_t | Z_{t+1..n}, C)
/// for a joint over per-letter axes y_axes, z_axes (equal length n) and an
/// optional conditioning set. The two returned values agree within kIdentTol
/// for every joint; tests rely on that contract.
std::pair<double, double> csiszar_sum_check(const Joint& j,
                                            const std::vector<std::string>& y_axes,
                                            const std::vector<std::string>& z_axes,
                                            const std::vector<std::string>& cond = {});

}  // namespace cicc
