#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "disklab/common.hpp"
#include "disklab/quadrature.hpp"

namespace disklab {

/// Mobius involution phi_a(z) = (a - z)/(1 - conj(a) z); phi_a(phi_a(z)) = z.
cplx mobius(cplx a, cplx z);

/// Pseudo-hyperbolic distance |(z-w)/(1 - conj(w) z)|.
double pseudo_hyperbolic(cplx z, cplx w);

/// Bergman (hyperbolic) metric beta(z,w) = (1/2) log((1+rho)/(1-rho)) with
/// rho the pseudo-hyperbolic distance.  Mobius invariant.
double bergman_metric(cplx z, cplx w);

// ---------------------------------------------------------------------------
// r-lattices: point sets whose hyperbolic disks D(a_k, r) cover the disk with
// pairwise separation beta(a_i, a_j) >= r/2 and finite overlap multiplicity.
// Construction: concentric rings at hyperbolic spacing r/2 starting from the
// origin; on each ring, the largest point count whose adjacent hyperbolic
// chord is still >= r/2.  Invariants are verified post hoc on a probe grid.
// ---------------------------------------------------------------------------

struct LatticeVerification {
  bool covering = false;
  double min_separation = 0.0;     // min pairwise beta over neighbor candidates
  int max_multiplicity_r = 0;      // max #disks D(a_k, r) containing a probe
  int max_multiplicity_2r = 0;     // same for radius 2r
  std::size_t probes = 0;
  std::optional<cplx> uncovered_witness;
};

class Lattice {
 public:
  double r = 0.0;
  double r_max = 0.0;                 // euclidean coverage radius
  std::vector<cplx> points;           // points[0] == 0

  /// Index of the first point of each ring (ring 0 = {0}), for windowed scans.
  const std::vector<std::size_t>& ring_starts() const { return ring_starts_; }
  const std::vector<double>& ring_hyp_radii() const { return ring_t_; }

  /// All lattice points within hyperbolic distance `radius` of z.
  std::vector<std::size_t> disks_containing(cplx z, double radius) const;

  /// Callback over the same set, avoiding allocation on hot paths; the
  /// membership test compares pseudo-hyperbolic distances against
  /// tanh(radius).  Return false from f to stop early.
  template <typename F>
  void for_each_in_ball(cplx z, double radius, F&& f) const;

  std::size_t count_in_ball(cplx z, double radius) const;
  bool any_in_ball(cplx z, double radius) const;

  LatticeVerification verify(std::size_t probe_count = 100000) const;

  friend Lattice build_lattice(double r, double r_max);

 private:
  std::vector<std::size_t> ring_starts_;
  std::vector<double> ring_t_;  // hyperbolic radius per ring
};

template <typename F>
void Lattice::for_each_in_ball(cplx z, double radius, F&& f) const {
  const double az = std::abs(z);
  const double tz = std::atanh(std::min(az, 1.0 - 1e-15));
  const double rho_max = std::tanh(radius);
  const double rho_max_sq = rho_max * rho_max;
  const std::size_t nrings = ring_t_.size();
  for (std::size_t m = 0; m < nrings; ++m) {
    if (std::abs(ring_t_[m] - tz) > radius) continue;  // beta >= |t1 - t2|
    const std::size_t lo = ring_starts_[m], hi = ring_starts_[m + 1];
    const std::size_t K = hi - lo;
    auto test = [&](std::size_t idx) {
      const cplx w = points[idx];
      const cplx num = z - w;
      const cplx den = 1.0 - std::conj(w) * z;
      if (std::norm(num) < rho_max_sq * std::norm(den)) return f(idx);
      return true;
    };
    // beta >= sqrt(rho1 rho2) |sin(dtheta/2)| restricts the angular scan
    const double denom = std::sqrt(std::tanh(ring_t_[m]) * az);
    if (K <= 4 || denom <= rho_max) {
      for (std::size_t i = lo; i < hi; ++i)
        if (!test(i)) return;
      continue;
    }
    const double win = 2.0 * std::asin(std::min(1.0, rho_max / denom));
    const double step = 2.0 * kPi / double(K);
    const long span = std::lround(std::ceil(win / step)) + 1;
    if (2 * span + 1 >= long(K)) {
      for (std::size_t i = lo; i < hi; ++i)
        if (!test(i)) return;
      continue;
    }
    const long center = std::lround((std::arg(z) - std::arg(points[lo])) / step);
    for (long d = -span; d <= span; ++d) {
      const std::size_t idx =
          lo + static_cast<std::size_t>(((center + d) % long(K) + long(K)) % long(K));
      if (!test(idx)) return;
    }
  }
}

/// Greedy ring construction (deterministic).  Throws std::runtime_error with
/// a witness if the post-hoc verification on a coarse probe grid fails.
Lattice build_lattice(double r, double r_max);

// ---------------------------------------------------------------------------
// Positive measures on the disk.
// ---------------------------------------------------------------------------

enum class MeasureKind { Atomic, RadialDensity, GridDensity };

struct MeasureRep {
  MeasureKind kind = MeasureKind::Atomic;

  // Atomic: atoms strictly inside the disk, weights >= 0
  std::vector<std::pair<cplx, double>> atoms;

  // RadialDensity: piecewise-linear density f(r) on [0,1) sampled at radii;
  // d mu = f(|z|) dA(z)
  std::vector<std::pair<double, double>> radial_samples;

  // GridDensity: density values bound to the nodes of a DiskGrid
  std::vector<double> grid_values;

  static MeasureRep atomic(std::vector<std::pair<cplx, double>> atoms);
  static MeasureRep radial_density(std::vector<std::pair<double, double>> samples);
  static MeasureRep grid_density(std::vector<double> values);

  double radial_density_at(double radius) const;
  double total_mass(const DiskGrid* grid = nullptr) const;
  void validate() const;

  std::string to_json() const;
  static MeasureRep from_json(const std::string& doc);
};

/// mu(D(a_j, r)) for every lattice disk.  Exact membership sums for atomic
/// measures; grid-cell sums (node-in-disk) for densities.
std::vector<double> disk_masses(const MeasureRep& mu, const Lattice& lat,
                                const DiskGrid* grid = nullptr);

/// Luecking sum  sum_j ( mu(D_j) / (1-|a_j|)^alpha )^p.
double luecking_sum(const MeasureRep& mu, const Lattice& lat, double alpha, double p,
                    const DiskGrid* grid = nullptr);

}  // namespace disklab
