#pragma once

#include <vector>

#include "disklab/common.hpp"

namespace disklab {

// ---------------------------------------------------------------------------
// Quadrature on the unit disk against the normalized area measure dA.
//
// The radial direction is cut into dyadically graded rings: ring boundaries
// sit at distance delta = 2^{-k/s} from the unit circle (s rings per octave)
// down to the clip radius r_max = 1 - 2^{-clip_log2}.  Every boundary-
// concentrated weight in this project ((1-|z|^2)^c, log factors, kernel
// singularities at the circle) is smooth on each such ring, so a few
// Gauss-Legendre nodes per ring suffice.
//
// Two angular layouts:
//   UniformAngles    — equispaced angles per ring, count growing toward the
//                      boundary (capped); right for integrands whose angular
//                      profile has no sharp localized spike.
//   BoundaryFocused  — dyadically graded angular panels accumulating at
//                      theta = 0, mirrored to theta < 0; right for symbols
//                      whose only singularity sits at z = 1 (kernel powers
//                      with real a, log log(e/(1-z))).
// ---------------------------------------------------------------------------

struct GridParams {
  int clip_log2 = 12;          // r_max = 1 - 2^{-clip_log2}
  int rings_per_octave = 2;    // radial grading density ("s")
  int radial_nodes = 6;        // GL nodes per ring
  double angular_factor = 6.0; // UniformAngles: m ~ factor / delta
  int angular_min = 16;
  int angular_cap = 1 << 13;
  int panel_nodes = 4;         // BoundaryFocused: GL nodes per angular panel

  GridParams refined() const;  // one refinement notch (finer everywhere)
};

/// Nodes and weights for a 1-D Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

class DiskGrid {
 public:
  enum class Layout { UniformAngles, BoundaryFocused };

  struct Node {
    cplx z;
    double w;      // quadrature weight against dA
    double delta;  // 1 - |z|, computed without cancellation
  };

  static DiskGrid uniform(const GridParams& p);
  static DiskGrid boundary_focused(const GridParams& p);

  const std::vector<Node>& nodes() const { return nodes_; }
  double clip() const { return clip_; }
  const GridParams& params() const { return params_; }
  Layout layout() const { return layout_; }

  DiskGrid refined() const;

  /// Sum of weights; equals clip()^2 (the dA-area of the clipped disk)
  /// up to roundoff.
  double weight_sum() const;

  /// Deterministic integral of f over the clipped disk: per-node terms are
  /// evaluated (possibly in parallel) into a buffer and pairwise-summed in
  /// node order.
  template <typename F>
  double integrate(F&& f) const {
    std::vector<double> terms(nodes_.size());
    parallel_for(nodes_.size(), [&](std::size_t i) {
      const Node& n = nodes_[i];
      terms[i] = n.w * f(n);
    });
    return pairwise_sum(terms);
  }

 private:
  DiskGrid() = default;
  static DiskGrid build(const GridParams& p, Layout layout);
  std::vector<Node> nodes_;
  double clip_ = 0.0;
  GridParams params_;
  Layout layout_ = Layout::UniformAngles;
};

/// 1-D rule for integrals  int_0^{smax} f(s) ds  with s = |z|^2 and
/// smax = 1 - 2^{-clip_log2}; same dyadic grading toward s = 1.  Radial
/// integrands F(|z|^2) on the disk satisfy int_D F dA = int_0^1 F(s) ds.
struct RadialGrid {
  struct Node {
    double s;
    double w;
    double delta;  // 1 - s
  };
  std::vector<Node> nodes;
  double smax = 0.0;
  int clip_log2 = 0;
  int panels_per_octave = 2;
  int gl_nodes = 6;

  static RadialGrid make(int clip_log2, int panels_per_octave = 2, int gl_nodes = 6);
  RadialGrid refined() const;

  template <typename F>
  double integrate(F&& f) const {
    std::vector<double> terms(nodes.size());
    parallel_for(nodes.size(), [&](std::size_t i) { terms[i] = nodes[i].w * f(nodes[i]); });
    return pairwise_sum(terms);
  }
};

/// Evaluate a functional on a grid and once more on its refinement; returns
/// the refined value with |coarse - fine| as the error estimate.
struct EstimatedValue {
  double value = 0.0;
  double error = 0.0;
};

/// Clip-radius sweep exponents used for convergence/divergence decisions:
/// r_max = 1 - 2^{-e} for e in {4, 8, 16, 32}.  A functional is declared
/// diverging when it grows by >= 10% on each of the last three steps.
std::vector<int> divergence_clip_exponents();

struct SweepDecision {
  std::vector<double> values;  // one per clip exponent
  bool diverging = false;
  double growth_rate = 0.0;    // mean relative step growth over the sweep
};

SweepDecision divergence_decision(const std::vector<double>& values);

}  // namespace disklab
