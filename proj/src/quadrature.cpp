#include "disklab/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace disklab {

GridParams GridParams::refined() const {
  GridParams q = *this;
  q.rings_per_octave += 1;
  q.radial_nodes += 2;
  q.angular_factor *= 2.0;
  q.angular_min *= 2;
  q.angular_cap *= 2;
  q.panel_nodes += 2;
  return q;
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  // Newton on Legendre polynomials; standard and plenty accurate for n <= 64.
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double p0 = 0.0, p1 = 0.0, dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      p0 = 1.0;
      p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * t * p1 - k * p2) / (k + 1.0);
      }
      dp = n * (t * p0 - p1) / (t * t - 1.0);
      double dt = p0 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = -t;
    x[n - 1 - i] = t;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

namespace {

struct Ring {
  double delta_out;  // 1 - r at the outer (larger r) edge
  double delta_in;   // 1 - r at the inner edge, delta_in > delta_out
};

std::vector<Ring> make_rings(const GridParams& p) {
  std::vector<Ring> rings;
  const int total = p.clip_log2 * p.rings_per_octave;
  double prev = 1.0;  // delta at r = 0
  for (int k = 1; k <= total; ++k) {
    double d = std::exp2(-double(k) / p.rings_per_octave);
    // dyadic rings are wide in the bulk; cap the euclidean width so that
    // moderate-degree radial polynomials stay within the GL rule
    const double width = prev - d;
    const int parts = std::max(1, static_cast<int>(std::ceil(width / 0.0625)));
    for (int i = 1; i <= parts; ++i) {
      const double lo = prev - width * i / parts;
      rings.push_back({lo, prev - width * (i - 1) / parts});
    }
    prev = d;
  }
  return rings;
}

}  // namespace

DiskGrid DiskGrid::build(const GridParams& p, Layout layout) {
  if (p.clip_log2 < 1 || p.clip_log2 > 48)
    throw std::invalid_argument("DiskGrid: clip_log2 out of [1,48]");
  DiskGrid g;
  g.params_ = p;
  g.layout_ = layout;
  g.clip_ = 1.0 - std::exp2(-p.clip_log2);

  std::vector<double> gx, gw;
  gauss_legendre(p.radial_nodes, gx, gw);
  std::vector<double> px, pw;
  gauss_legendre(p.panel_nodes, px, pw);

  for (const Ring& ring : make_rings(p)) {
    const double r_lo = 1.0 - ring.delta_in;
    const double r_hi = 1.0 - ring.delta_out;
    const double mid = 0.5 * (r_lo + r_hi), half = 0.5 * (r_hi - r_lo);
    for (int i = 0; i < p.radial_nodes; ++i) {
      const double r = mid + half * gx[i];
      const double delta = (ring.delta_in + ring.delta_out) * 0.5 - half * gx[i];
      const double wr = gw[i] * half * 2.0 * r;  // against dA: 2 r dr

      if (layout == Layout::UniformAngles) {
        int m = static_cast<int>(std::ceil(p.angular_factor / ring.delta_out));
        m = std::clamp(m, p.angular_min, p.angular_cap);
        m = (m + 3) & ~3;
        const double wnode = wr / m;
        for (int l = 0; l < m; ++l) {
          const double th = 2.0 * kPi * (l + 0.5) / m;
          g.nodes_.push_back({std::polar(r, th), wnode, delta});
        }
      } else {
        // dyadic angular panels accumulating at theta = 0, mirrored
        const double th_min = std::min(ring.delta_out, kPi / 8.0);
        std::vector<std::pair<double, double>> panels;
        double hi = kPi;
        while (hi > 2.0 * th_min) {
          panels.emplace_back(hi / 2.0, hi);
          hi /= 2.0;
        }
        panels.emplace_back(0.0, hi);
        for (auto [a, b] : panels) {
          const double pm = 0.5 * (a + b), ph = 0.5 * (b - a);
          for (int i2 = 0; i2 < p.panel_nodes; ++i2) {
            const double th = pm + ph * px[i2];
            const double wth = pw[i2] * ph / (2.0 * kPi);
            g.nodes_.push_back({std::polar(r, th), wr * wth, delta});
            g.nodes_.push_back({std::polar(r, -th), wr * wth, delta});
          }
        }
      }
    }
  }
  return g;
}

DiskGrid DiskGrid::uniform(const GridParams& p) { return build(p, Layout::UniformAngles); }

DiskGrid DiskGrid::boundary_focused(const GridParams& p) {
  return build(p, Layout::BoundaryFocused);
}

DiskGrid DiskGrid::refined() const { return build(params_.refined(), layout_); }

double DiskGrid::weight_sum() const {
  std::vector<double> w(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) w[i] = nodes_[i].w;
  return pairwise_sum(w);
}

RadialGrid RadialGrid::make(int clip_log2, int panels_per_octave, int gl_nodes) {
  if (clip_log2 < 1 || clip_log2 > 48)
    throw std::invalid_argument("RadialGrid: clip_log2 out of [1,48]");
  RadialGrid g;
  g.clip_log2 = clip_log2;
  g.panels_per_octave = panels_per_octave;
  g.gl_nodes = gl_nodes;
  g.smax = 1.0 - std::exp2(-clip_log2);
  std::vector<double> gx, gw;
  gauss_legendre(gl_nodes, gx, gw);
  const int total = clip_log2 * panels_per_octave;
  double d_in = 1.0;
  for (int k = 1; k <= total; ++k) {
    const double d_out = std::exp2(-double(k) / panels_per_octave);
    const double width = d_in - d_out;
    const int parts = std::max(1, static_cast<int>(std::ceil(width / 0.0625)));
    for (int i2 = 1; i2 <= parts; ++i2) {
      const double dd_in = d_in - width * (i2 - 1) / parts;
      const double dd_out = d_in - width * i2 / parts;
      const double s_lo = 1.0 - dd_in, s_hi = 1.0 - dd_out;
      const double mid = 0.5 * (s_lo + s_hi), half = 0.5 * (s_hi - s_lo);
      for (int i = 0; i < gl_nodes; ++i) {
        const double s = mid + half * gx[i];
        const double delta = 0.5 * (dd_in + dd_out) - half * gx[i];
        g.nodes.push_back({s, gw[i] * half, delta});
      }
    }
    d_in = d_out;
  }
  return g;
}

RadialGrid RadialGrid::refined() const {
  return make(clip_log2, panels_per_octave + 1, gl_nodes + 2);
}

std::vector<int> divergence_clip_exponents() { return {4, 8, 16, 32}; }

SweepDecision divergence_decision(const std::vector<double>& values) {
  SweepDecision d;
  d.values = values;
  if (values.size() < 2) return d;
  int growing = 0;
  double acc = 0.0;
  const std::size_t steps = values.size() - 1;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const double prev = values[i];
    const double rel = prev > 0.0 ? (values[i + 1] - prev) / prev : 0.0;
    acc += rel;
    if (rel >= 0.10) ++growing;
    else growing = 0;
  }
  d.growth_rate = acc / double(steps);
  d.diverging = growing >= std::min<std::size_t>(3, steps);
  return d;
}

}  // namespace disklab
