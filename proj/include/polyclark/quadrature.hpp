#pragma once

// Periodic trapezoid rules on the torus.
//
// All grids are uniform in angle with a fixed offset of `grid_offset` times the
// base spacing. The offset is not a dyadic fraction, so refined grids never land
// on dyadic angles such as 0 or pi, where the catalog maps have their boundary
// singularities. A uniform rule with N nodes is exact for trigonometric
// polynomials of degree < N regardless of the offset.

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "polyclark/core.hpp"

namespace polyclark {

inline constexpr double grid_offset = 0.6180339887498949;

/// Sum in a fixed binary-tree order, so results do not depend on how a caller batches work.
template <class T>
T pairwise_sum(std::span<const T> values) {
  if (values.empty()) return T{};
  if (values.size() <= 8) {
    T s{};
    for (const auto& v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

struct QuadratureSpec {
  /// Base number of nodes per continuous dimension.
  int nodes_per_dim = 256;
  /// Relative tolerance for adaptive refinement, measured against the L1 size of the integrand.
  double tolerance = 1e-13;
  /// Cap on nodes per adaptive dimension.
  int max_nodes = 1 << 18;
  /// Radial schedule for weak-* limits, strictly increasing in (0, 1).
  std::vector<double> radii;
  /// Number of Richardson steps; negative means use every radius.
  int extrapolation_order = -1;
  /// Weak-* grids use ceil(node_factor / (1 - r)) nodes per dimension when scale_nodes is set;
  /// otherwise nodes_per_dim, which must then be at least 8 / (1 - r).
  double node_factor = 8.0;
  bool scale_nodes = true;

  void validate() const {
    if (nodes_per_dim < 8) throw InvalidArgument("nodes_per_dim must be at least 8");
    if (!(tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
    if (max_nodes < nodes_per_dim) throw InvalidArgument("max_nodes below nodes_per_dim");
    for (std::size_t i = 0; i < radii.size(); ++i) {
      if (!(radii[i] > 0.0 && radii[i] < 1.0)) throw InvalidArgument("radii must lie in (0,1)");
      if (i > 0 && !(radii[i] > radii[i - 1])) throw InvalidArgument("radii must be strictly increasing");
    }
    if (node_factor < 8.0) throw InvalidArgument("node_factor must be at least 8");
  }
};

/// r_j = 1 - 2^-j for j = 4..7.
inline std::vector<double> default_radii() {
  return {1.0 - 1.0 / 16.0, 1.0 - 1.0 / 32.0, 1.0 - 1.0 / 64.0, 1.0 - 1.0 / 128.0};
}

inline QuadratureSpec quadrature(int nodes_per_dim) {
  QuadratureSpec q;
  q.nodes_per_dim = nodes_per_dim;
  q.radii = default_radii();
  q.validate();
  return q;
}

/// k-th node of an N-point grid refined from a base grid with `base` nodes.
inline double grid_angle(std::size_t k, std::size_t n, std::size_t base) {
  return two_pi * (grid_offset / static_cast<double>(base) + static_cast<double>(k) / static_cast<double>(n));
}

// Vector-valued integrand of one circle variable: writes `out.size()` values at x.
using CircleIntegrand = std::function<void(Complex x, std::span<Complex> out)>;

namespace detail {

inline void accumulate_level(const CircleIntegrand& g, std::size_t n, std::size_t base, std::size_t first,
                             std::size_t step, std::size_t count, std::vector<Complex>& sums,
                             std::vector<double>& abs_sums) {
  const std::size_t k_out = sums.size();
  std::vector<Complex> out(k_out);
  std::vector<std::vector<Complex>> columns(k_out, std::vector<Complex>(count));
  std::vector<double> abs_col(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t k = first + i * step;
    g(std::polar(1.0, grid_angle(k, n, base)), out);
    double a = 0.0;
    for (std::size_t c = 0; c < k_out; ++c) {
      columns[c][i] = out[c];
      a = std::max(a, std::abs(out[c]));
    }
    abs_col[i] = a;
  }
  for (std::size_t c = 0; c < k_out; ++c) sums[c] += pairwise_sum<Complex>(columns[c]);
  abs_sums[0] += pairwise_sum<double>(abs_col);
}

}  // namespace detail

namespace detail {

// 15-point Kronrod abscissae on [-1, 1] (nonnegative half) with Kronrod and embedded Gauss weights.
inline constexpr double gk_x[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                   0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                   0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                   0.207784955007898467600689403773245, 0.0};
inline constexpr double gk_wk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double gk_wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  std::vector<Complex> value;
  double error;
};

inline Panel gk15(const CircleIntegrand& g, double a, double b, std::size_t k_out, std::vector<Complex>& buf) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::vector<Complex> kron(k_out, 0.0);
  std::vector<Complex> gauss(k_out, 0.0);
  for (int i = 0; i < 15; ++i) {
    const int j = i < 8 ? i : 14 - i;
    const double x = i < 8 ? -gk_x[j] : gk_x[j];
    g(std::polar(1.0, c + h * x), buf);
    for (std::size_t m = 0; m < k_out; ++m) {
      kron[m] += gk_wk[j] * buf[m];
      if (j % 2 == 1) gauss[m] += gk_wg[j / 2] * buf[m];
    }
  }
  Panel p{a, b, std::vector<Complex>(k_out), 0.0};
  const double scale = h / two_pi;
  for (std::size_t m = 0; m < k_out; ++m) {
    p.value[m] = scale * kron[m];
    p.error = std::max(p.error, scale * std::abs(kron[m] - gauss[m]));
  }
  return p;
}

/// Globally adaptive Gauss-Kronrod on the circle: bisects the worst panel until the summed
/// error estimate is below abs_tol or the evaluation budget is spent.
inline std::vector<Complex> adaptive_gk_circle(std::size_t k_out, const CircleIntegrand& g, double start,
                                               double abs_tol, std::size_t max_evals) {
  std::vector<Complex> buf(k_out);
  std::vector<Panel> panels;
  const int initial = 16;
  for (int i = 0; i < initial; ++i) {
    panels.push_back(gk15(g, start + two_pi * i / initial, start + two_pi * (i + 1) / initial, k_out, buf));
  }
  std::size_t evals = 15 * initial;
  auto worse = [](const Panel& x, const Panel& y) { return x.error < y.error; };
  std::make_heap(panels.begin(), panels.end(), worse);
  while (evals + 30 <= max_evals) {
    double total = 0.0;
    for (const auto& p : panels) total += p.error;
    if (total <= abs_tol) break;
    std::pop_heap(panels.begin(), panels.end(), worse);
    const Panel worst = panels.back();
    panels.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    panels.push_back(gk15(g, worst.a, mid, k_out, buf));
    std::push_heap(panels.begin(), panels.end(), worse);
    panels.push_back(gk15(g, mid, worst.b, k_out, buf));
    std::push_heap(panels.begin(), panels.end(), worse);
    evals += 30;
  }
  // Sum in order of position for a reproducible result.
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  std::vector<Complex> out(k_out);
  for (std::size_t m = 0; m < k_out; ++m) {
    std::vector<Complex> col;
    col.reserve(panels.size());
    for (const auto& p : panels) col.push_back(p.value[m]);
    out[m] = pairwise_sum<Complex>(col);
  }
  return out;
}

}  // namespace detail

/// Mean of g over the circle. Nested trapezoid rules double from `base` nodes until two
/// successive estimates agree to `tol` relative to the integrand's L1 size. Integrands with
/// features too narrow for 16 * base nodes (near-singular peaks) are handed to adaptive
/// Gauss-Kronrod with at most min(max_nodes, 64 * base) evaluations.
inline std::vector<Complex> adaptive_circle_mean(std::size_t k_out, const CircleIntegrand& g, std::size_t base,
                                                 double tol, std::size_t max_nodes) {
  std::vector<Complex> sums(k_out, 0.0);
  std::vector<double> abs_sum(1, 0.0);
  detail::accumulate_level(g, base, base, 0, 1, base, sums, abs_sum);
  std::size_t n = base;
  std::vector<Complex> estimate(k_out);
  for (std::size_t c = 0; c < k_out; ++c) estimate[c] = sums[c] / static_cast<double>(n);
  const std::size_t trapezoid_cap = std::min(max_nodes, 16 * base);
  while (true) {
    if (2 * n > trapezoid_cap) {
      if (n >= max_nodes) return estimate;
      const double scale = abs_sum[0] / static_cast<double>(n);
      return detail::adaptive_gk_circle(k_out, g, grid_angle(0, base, base), tol * scale, std::min(max_nodes, 64 * base));
    }
    // New nodes of the 2n grid are the odd-indexed ones.
    detail::accumulate_level(g, 2 * n, base, 1, 2, n, sums, abs_sum);
    n *= 2;
    const double scale = abs_sum[0] / static_cast<double>(n);
    double change = 0.0;
    for (std::size_t c = 0; c < k_out; ++c) {
      const Complex next = sums[c] / static_cast<double>(n);
      change = std::max(change, std::abs(next - estimate[c]));
      estimate[c] = next;
    }
    if (change <= tol * scale || scale == 0.0) return estimate;
  }
}

// Vector-valued integrand on T^d; the point is passed as its coordinates.
using TorusIntegrand = std::function<void(std::span<const Complex> zeta, std::span<Complex> out)>;

/// Integral of g against normalized Lebesgue measure on T^d.
/// d <= 2 uses iterated adaptive rules; d >= 3 a fixed tensor grid with nodes_per_dim per dimension.
inline std::vector<Complex> lebesgue_integrate(std::size_t d, std::size_t k_out, const TorusIntegrand& g,
                                               const QuadratureSpec& q) {
  const auto base = static_cast<std::size_t>(q.nodes_per_dim);
  const auto cap = static_cast<std::size_t>(q.max_nodes);
  if (d == 0) {
    std::vector<Complex> out(k_out);
    g({}, out);
    return out;
  }
  if (d == 1) {
    Complex pt[1];
    return adaptive_circle_mean(
        k_out,
        [&](Complex x, std::span<Complex> out) {
          pt[0] = x;
          g(std::span<const Complex>(pt, 1), out);
        },
        base, q.tolerance, cap);
  }
  if (d == 2) {
    return adaptive_circle_mean(
        k_out,
        [&](Complex x, std::span<Complex> out) {
          Complex pt[2] = {x, 0.0};
          auto inner = adaptive_circle_mean(
              k_out,
              [&](Complex y, std::span<Complex> o) {
                pt[1] = y;
                g(std::span<const Complex>(pt, 2), o);
              },
              base, q.tolerance, cap);
          std::copy(inner.begin(), inner.end(), out.begin());
        },
        base, q.tolerance, cap);
  }
  // Fixed tensor grid, summed dimension by dimension from the innermost.
  std::vector<Complex> pt(d);
  std::vector<Complex> out(k_out);
  std::function<std::vector<Complex>(std::size_t)> level = [&](std::size_t j) -> std::vector<Complex> {
    std::vector<std::vector<Complex>> columns(k_out, std::vector<Complex>(base));
    for (std::size_t i = 0; i < base; ++i) {
      pt[j] = std::polar(1.0, grid_angle(i, base, base));
      if (j + 1 == d) {
        g(pt, out);
        for (std::size_t c = 0; c < k_out; ++c) columns[c][i] = out[c];
      } else {
        auto sub = level(j + 1);
        for (std::size_t c = 0; c < k_out; ++c) columns[c][i] = sub[c];
      }
    }
    std::vector<Complex> res(k_out);
    for (std::size_t c = 0; c < k_out; ++c) res[c] = pairwise_sum<Complex>(columns[c]) / static_cast<double>(base);
    return res;
  };
  return level(0);
}

/// Value at h = 0 of the polynomial in h interpolating the last (order + 1) samples (Neville).
/// order < 0 uses all samples.
template <class T>
T richardson_extrapolate(std::span<const double> h, std::span<const T> values, int order) {
  if (h.size() != values.size() || h.empty()) throw InvalidArgument("extrapolation needs matching samples");
  const std::size_t m = order < 0 ? h.size() : std::min<std::size_t>(h.size(), static_cast<std::size_t>(order) + 1);
  const std::size_t first = h.size() - m;
  std::vector<T> p(values.begin() + static_cast<std::ptrdiff_t>(first), values.end());
  std::vector<double> x(h.begin() + static_cast<std::ptrdiff_t>(first), h.end());
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = 0; i + level < m; ++i) {
      // Interpolate between p[i] (nodes i..i+level-1) and p[i+1] (nodes i+1..i+level) at 0.
      p[i] = (x[i + level] * p[i] - x[i] * p[i + 1]) / (x[i + level] - x[i]);
    }
  }
  return p[0];
}

}  // namespace polyclark
