#include "cicc/prob.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cicc {

namespace {

std::size_t checked_cells(const std::vector<Axis>& axes) {
  std::size_t n = 1;
  for (const Axis& a : axes) {
    require(a.size >= 1, ErrorKind::ShapeMismatch, "axis '" + a.name + "' has size < 1");
    const std::size_t s = static_cast<std::size_t>(a.size);
    require(n <= kMaxTableCells / s, ErrorKind::TooLarge, "joint table exceeds the cell cap");
    n *= s;
  }
  return n;
}

}  // namespace

Dist::Dist(std::vector<double> weights) : w_(std::move(weights)) {
  require(!w_.empty(), ErrorKind::InvalidDistribution, "empty distribution");
  double sum = 0.0;
  for (double x : w_) {
    require(x >= 0.0, ErrorKind::NegativeWeight, "negative probability");
    sum += x;
  }
  require(std::fabs(sum - 1.0) <= kNormTol, ErrorKind::InvalidDistribution,
          "weights sum to " + std::to_string(sum));
}

Dist make_dist(std::vector<double> weights) {
  require(!weights.empty(), ErrorKind::AllZero, "empty weight vector");
  double sum = 0.0;
  for (double x : weights) {
    require(x >= 0.0, ErrorKind::NegativeWeight, "negative weight");
    sum += x;
  }
  require(sum > 0.0, ErrorKind::AllZero, "weights sum to zero");
  for (double& x : weights) x /= sum;
  return Dist(std::move(weights));
}

double kl(const Dist& p, const Dist& q) {
  require(p.size() == q.size(), ErrorKind::ShapeMismatch, "kl over different alphabets");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    require(q[i] > 0.0, ErrorKind::AbsoluteContinuityViolated,
            "p has mass where q vanishes (symbol " + std::to_string(i) + ")");
    d += p[i] * std::log(p[i] / q[i]);
  }
  return d;
}

double entropy(const Dist& p) {
  double h = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) h -= p[i] * std::log(p[i]);
  return h;
}

Channel::Channel(std::vector<int> in_sizes, std::vector<Dist> rows)
    : in_sizes_(std::move(in_sizes)), out_size_(0), rows_(std::move(rows)) {
  std::size_t expected = 1;
  for (int s : in_sizes_) {
    require(s >= 1, ErrorKind::ShapeMismatch, "conditioning alphabet size < 1");
    expected *= static_cast<std::size_t>(s);
  }
  require(rows_.size() == expected, ErrorKind::ShapeMismatch,
          "row count does not match the conditioning alphabet");
  out_size_ = static_cast<int>(rows_.front().size());
  for (const Dist& r : rows_)
    require(static_cast<int>(r.size()) == out_size_, ErrorKind::ShapeMismatch,
            "rows with different output alphabets");
}

Channel Channel::from_rows(std::vector<int> in_sizes,
                           const std::vector<std::vector<double>>& rows) {
  std::vector<Dist> dists;
  dists.reserve(rows.size());
  for (const auto& r : rows) dists.emplace_back(r);
  return Channel(std::move(in_sizes), std::move(dists));
}

std::size_t Channel::flatten(std::span<const int> idx) const {
  require(idx.size() == in_sizes_.size(), ErrorKind::ShapeMismatch,
          "conditioning tuple arity mismatch");
  std::size_t flat = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    require(idx[i] >= 0 && idx[i] < in_sizes_[i], ErrorKind::ShapeMismatch,
            "conditioning symbol out of range");
    flat = flat * static_cast<std::size_t>(in_sizes_[i]) + static_cast<std::size_t>(idx[i]);
  }
  return flat;
}

namespace {

// Sequence index of (sym_0 .. sym_{n-1}) over alphabet `s` is big-endian:
// sym_0 is the most significant digit.
int seq_symbol(std::size_t seq_index, int s, int n, int t) {
  std::size_t div = 1;
  for (int k = t + 1; k < n; ++k) div *= static_cast<std::size_t>(s);
  return static_cast<int>((seq_index / div) % static_cast<std::size_t>(s));
}

std::size_t checked_pow(int base, int n) {
  std::size_t r = 1;
  for (int k = 0; k < n; ++k) {
    require(r <= kMaxTableCells / static_cast<std::size_t>(base), ErrorKind::TooLarge,
            "sequence alphabet exceeds the cell cap");
    r *= static_cast<std::size_t>(base);
  }
  return r;
}

}  // namespace

Channel channel_power(const Channel& ch, int n) {
  require(n >= 1, ErrorKind::ShapeMismatch, "power must be >= 1");
  if (n == 1) return ch;
  const auto& base_in = ch.in_sizes();
  std::vector<int> in_sizes;
  std::size_t row_total = 1;
  for (int s : base_in) {
    const std::size_t sn = checked_pow(s, n);
    require(sn <= static_cast<std::size_t>(std::numeric_limits<int>::max()),
            ErrorKind::TooLarge, "sequence alphabet exceeds int range");
    in_sizes.push_back(static_cast<int>(sn));
    require(row_total <= kMaxTableCells / sn, ErrorKind::TooLarge,
            "channel power exceeds the cell cap");
    row_total *= sn;
  }
  const std::size_t out_n = checked_pow(ch.out_size(), n);
  require(out_n <= kMaxTableCells, ErrorKind::TooLarge, "output alphabet exceeds the cell cap");

  std::vector<Dist> rows;
  rows.reserve(row_total);
  std::vector<int> letter_idx(base_in.size());
  for (std::size_t r = 0; r < row_total; ++r) {
    // Decode per-axis sequence indices for this row.
    std::vector<std::size_t> seq(base_in.size());
    std::size_t rest = r;
    for (std::size_t a = base_in.size(); a-- > 0;) {
      seq[a] = rest % static_cast<std::size_t>(in_sizes[a]);
      rest /= static_cast<std::size_t>(in_sizes[a]);
    }
    std::vector<double> w(out_n);
    for (std::size_t z = 0; z < out_n; ++z) {
      double p = 1.0;
      for (int t = 0; t < n; ++t) {
        for (std::size_t a = 0; a < base_in.size(); ++a)
          letter_idx[a] = seq_symbol(seq[a], base_in[a], n, t);
        const int zt = seq_symbol(z, ch.out_size(), n, t);
        p *= ch.prob(letter_idx, zt);
      }
      w[z] = p;
    }
    rows.emplace_back(std::move(w));
  }
  return Channel(std::move(in_sizes), std::move(rows));
}

Joint::Joint(std::vector<Axis> axes, std::vector<double> table)
    : axes_(std::move(axes)), p_(std::move(table)) {
  const std::size_t cells = checked_cells(axes_);
  require(p_.size() == cells, ErrorKind::ShapeMismatch, "table size does not match axes");
  for (std::size_t i = 0; i + 1 < axes_.size(); ++i)
    for (std::size_t k = i + 1; k < axes_.size(); ++k)
      require(axes_[i].name != axes_[k].name, ErrorKind::ShapeMismatch,
              "duplicate axis name '" + axes_[i].name + "'");
  strides_.assign(axes_.size(), 1);
  for (std::size_t i = axes_.size(); i-- > 1;)
    strides_[i - 1] = strides_[i] * static_cast<std::size_t>(axes_[i].size);
  double sum = 0.0;
  for (double x : p_) {
    require(x >= 0.0, ErrorKind::NegativeWeight, "negative joint probability");
    sum += x;
  }
  require(std::fabs(sum - 1.0) <= kNormTol, ErrorKind::InvalidDistribution,
          "joint sums to " + std::to_string(sum));
}

Joint Joint::scalar() { return Joint({}, {1.0}); }

int Joint::axis_index(const std::string& name) const {
  for (std::size_t i = 0; i < axes_.size(); ++i)
    if (axes_[i].name == name) return static_cast<int>(i);
  fail(ErrorKind::UnknownCoordinate, "no axis named '" + name + "'");
}

bool Joint::has_axis(const std::string& name) const {
  for (const Axis& a : axes_)
    if (a.name == name) return true;
  return false;
}

Joint Joint::marginal(const std::vector<std::string>& keep) const {
  std::vector<bool> kept(axes_.size(), false);
  for (const std::string& name : keep) {
    const int i = axis_index(name);
    require(!kept[i], ErrorKind::OverlappingSets, "axis '" + name + "' listed twice");
    kept[i] = true;
  }
  std::vector<Axis> out_axes;
  std::vector<std::size_t> out_stride_of(axes_.size(), 0);
  std::size_t out_cells = 1;
  for (std::size_t i = 0; i < axes_.size(); ++i)
    if (kept[i]) out_axes.push_back(axes_[i]);
  std::vector<std::size_t> strides(out_axes.size(), 1);
  for (std::size_t i = out_axes.size(); i-- > 1;)
    strides[i - 1] = strides[i] * static_cast<std::size_t>(out_axes[i].size);
  if (!out_axes.empty()) out_cells = strides[0] * static_cast<std::size_t>(out_axes[0].size);
  for (std::size_t i = 0, k = 0; i < axes_.size(); ++i)
    if (kept[i]) out_stride_of[i] = strides[k++];

  std::vector<double> out(out_cells, 0.0);
  // Single pass over the full table, maintaining the multi-index and the
  // projected flat index incrementally.
  std::vector<int> idx(axes_.size(), 0);
  std::size_t out_flat = 0;
  for (std::size_t flat = 0; flat < p_.size(); ++flat) {
    out[out_flat] += p_[flat];
    for (std::size_t a = axes_.size(); a-- > 0;) {
      out_flat += out_stride_of[a];
      if (++idx[a] < axes_[a].size) break;
      idx[a] = 0;
      out_flat -= out_stride_of[a] * static_cast<std::size_t>(axes_[a].size);
      if (a == 0) break;
    }
  }
  return Joint(std::move(out_axes), std::move(out));
}

double Joint::entropy() const {
  double h = 0.0;
  for (double x : p_)
    if (x > 0.0) h -= x * std::log(x);
  return h;
}

InputDesign::InputDesign(Dist px2, Channel u_given_x2, Channel v_given_ux2, Channel x1_given_v)
    : p_x2(std::move(px2)),
      p_u_given_x2(std::move(u_given_x2)),
      p_v_given_ux2(std::move(v_given_ux2)),
      p_x1_given_v(std::move(x1_given_v)) {
  const int x2 = static_cast<int>(p_x2.size());
  const int u = p_u_given_x2.out_size();
  const int v = p_v_given_ux2.out_size();
  require(p_u_given_x2.in_sizes() == std::vector<int>{x2}, ErrorKind::ShapeMismatch,
          "P(U|X2) conditioning must be X2");
  require(p_v_given_ux2.in_sizes() == (std::vector<int>{u, x2}), ErrorKind::ShapeMismatch,
          "P(V|U,X2) conditioning must be (U, X2)");
  require(p_x1_given_v.in_sizes() == std::vector<int>{v}, ErrorKind::ShapeMismatch,
          "P(X1|V) conditioning must be V");
}

Joint build_joint(const InputDesign& design, const Channel& py, const Channel& pz) {
  const int nu = design.u_size(), nv = design.v_size();
  const int nx1 = design.x1_size(), nx2 = design.x2_size();
  require(py.in_sizes() == (std::vector<int>{nx1, nx2}), ErrorKind::ShapeMismatch,
          "P(Y|X1,X2) conditioning must be (X1, X2)");
  require(pz.in_sizes() == (std::vector<int>{nx1, nx2}), ErrorKind::ShapeMismatch,
          "P(Z|X1,X2) conditioning must be (X1, X2)");
  const int ny = py.out_size(), nz = pz.out_size();

  std::vector<Axis> axes{{"U", nu}, {"V", nv}, {"X1", nx1}, {"X2", nx2}, {"Y", ny}, {"Z", nz}};
  std::vector<double> t;
  t.reserve(checked_cells(axes));
  for (int u = 0; u < nu; ++u)
    for (int v = 0; v < nv; ++v)
      for (int x1 = 0; x1 < nx1; ++x1)
        for (int x2 = 0; x2 < nx2; ++x2) {
          const int ux2[] = {u, x2};
          const int x1x2[] = {x1, x2};
          const double base = design.p_x2[x2] * design.p_u_given_x2.row(x2)[u] *
                              design.p_v_given_ux2.row(ux2)[v] * design.p_x1_given_v.row(v)[x1];
          const Dist& ry = py.row(x1x2);
          const Dist& rz = pz.row(x1x2);
          for (int y = 0; y < ny; ++y)
            for (int z = 0; z < nz; ++z) t.push_back(base * ry[y] * rz[z]);
        }
  return Joint(std::move(axes), std::move(t));
}

double cond_mutual_info(const Joint& j, const std::vector<std::string>& a,
                        const std::vector<std::string>& b, const std::vector<std::string>& c) {
  auto check_disjoint = [](const std::vector<std::string>& s, const std::vector<std::string>& t) {
    for (const auto& x : s)
      for (const auto& y : t)
        require(x != y, ErrorKind::OverlappingSets, "coordinate '" + x + "' in two sets");
  };
  check_disjoint(a, b);
  check_disjoint(a, c);
  check_disjoint(b, c);
  for (const auto& sets : {a, b, c})
    for (const auto& name : sets) (void)j.axis_index(name);
  if (a.empty() || b.empty()) return 0.0;

  std::vector<std::string> abc(a);
  abc.insert(abc.end(), b.begin(), b.end());
  abc.insert(abc.end(), c.begin(), c.end());
  std::vector<std::string> ac(a);
  ac.insert(ac.end(), c.begin(), c.end());
  std::vector<std::string> bc(b);
  bc.insert(bc.end(), c.begin(), c.end());

  const Joint m = j.marginal(abc);
  const Joint mac = m.marginal(ac);
  const Joint mbc = m.marginal(bc);
  const Joint mc = m.marginal(c);

  // Stride of each axis of m inside the three sub-marginals (0 when absent).
  const std::size_t n_ax = m.axis_count();
  std::vector<std::size_t> s_ac(n_ax, 0), s_bc(n_ax, 0), s_c(n_ax, 0);
  auto fill = [&](const Joint& sub, std::vector<std::size_t>& out) {
    for (std::size_t i = 0; i < n_ax; ++i)
      if (sub.has_axis(m.axes()[i].name))
        out[i] = sub.stride(static_cast<std::size_t>(sub.axis_index(m.axes()[i].name)));
  };
  fill(mac, s_ac);
  fill(mbc, s_bc);
  fill(mc, s_c);

  double info = 0.0;
  std::vector<int> idx(n_ax, 0);
  std::size_t f_ac = 0, f_bc = 0, f_c = 0;
  for (std::size_t flat = 0; flat < m.cell_count(); ++flat) {
    const double p = m.value(flat);
    if (p > 0.0) {
      const double pc = c.empty() ? 1.0 : mc.value(f_c);
      info += p * std::log(p * pc / (mac.value(f_ac) * mbc.value(f_bc)));
    }
    for (std::size_t ax = n_ax; ax-- > 0;) {
      f_ac += s_ac[ax];
      f_bc += s_bc[ax];
      f_c += s_c[ax];
      if (++idx[ax] < m.axes()[ax].size) break;
      idx[ax] = 0;
      f_ac -= s_ac[ax] * static_cast<std::size_t>(m.axes()[ax].size);
      f_bc -= s_bc[ax] * static_cast<std::size_t>(m.axes()[ax].size);
      f_c -= s_c[ax] * static_cast<std::size_t>(m.axes()[ax].size);
      if (ax == 0) break;
    }
  }
  return info;
}

Joint product_extension(const Joint& j, int n) {
  require(n >= 1, ErrorKind::ShapeMismatch, "extension length must be >= 1");
  if (n == 1) return j;
  std::vector<Axis> axes;
  std::size_t cells = 1;
  for (const Axis& a : j.axes()) {
    const std::size_t sn = checked_pow(a.size, n);
    require(sn <= static_cast<std::size_t>(std::numeric_limits<int>::max()),
            ErrorKind::TooLarge, "sequence alphabet exceeds int range");
    axes.push_back({a.name, static_cast<int>(sn)});
    require(cells <= kMaxTableCells / sn, ErrorKind::TooLarge,
            "product extension exceeds the cell cap");
    cells *= sn;
  }
  const std::size_t n_ax = j.axis_count();
  std::vector<double> out(cells);
  std::vector<std::size_t> seq(n_ax);
  for (std::size_t flat = 0; flat < cells; ++flat) {
    std::size_t rest = flat;
    for (std::size_t a = n_ax; a-- > 0;) {
      seq[a] = rest % static_cast<std::size_t>(axes[a].size);
      rest /= static_cast<std::size_t>(axes[a].size);
    }
    double p = 1.0;
    for (int t = 0; t < n; ++t) {
      std::size_t base_flat = 0;
      for (std::size_t a = 0; a < n_ax; ++a)
        base_flat += j.stride(a) *
                     static_cast<std::size_t>(seq_symbol(seq[a], j.axes()[a].size, n, t));
      p *= j.value(base_flat);
    }
    out[flat] = p;
  }
  return Joint(std::move(axes), std::move(out));
}

std::pair<double, double> csiszar_sum_check(const Joint& j,
                                            const std::vector<std::string>& y_axes,
                                            const std::vector<std::string>& z_axes,
                                            const std::vector<std::string>& cond) {
  require(y_axes.size() == z_axes.size(), ErrorKind::ShapeMismatch,
          "paired sequences must have equal length");
  const int n = static_cast<int>(y_axes.size());
  require(n <= 4, ErrorKind::TooLarge, "sequence length capped at 4");
  for (const auto& name : y_axes)
    require(j.axes()[j.axis_index(name)].size <= 3, ErrorKind::TooLarge,
            "per-letter alphabets capped at 3");
  for (const auto& name : z_axes)
    require(j.axes()[j.axis_index(name)].size <= 3, ErrorKind::TooLarge,
            "per-letter alphabets capped at 3");

  double lhs = 0.0, rhs = 0.0;
  for (int t = 0; t < n; ++t) {
    std::vector<std::string> z_future(z_axes.begin() + t + 1, z_axes.end());
    std::vector<std::string> y_past(y_axes.begin(), y_axes.begin() + t);
    std::vector<std::string> cy(y_past);
    cy.insert(cy.end(), cond.begin(), cond.end());
    lhs += cond_mutual_info(j, z_future, {y_axes[t]}, cy);
    std::vector<std::string> cz(z_future);
    cz.insert(cz.end(), cond.begin(), cond.end());
    rhs += cond_mutual_info(j, y_past, {z_axes[t]}, cz);
  }
  return {lhs, rhs};
}

}  // namespace cicc
