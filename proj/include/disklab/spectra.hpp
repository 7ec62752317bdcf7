#pragma once

#include <functional>
#include <map>

#include "disklab/operators.hpp"
#include "disklab/quadrature.hpp"

namespace disklab {

// ---------------------------------------------------------------------------
// Singular spectra and Schatten p-norms.  Singular numbers of a compact T
// are the square roots of the eigenvalues of T^*T; here they come from a
// dense SVD of the truncated matrix, cross-validated against the closed-form
// monomial spectra.  Power sums run over values in nonincreasing order with
// cascade summation (p < 1 sums are ill-conditioned otherwise).
// ---------------------------------------------------------------------------

struct SchattenTail {
  double estimate = 0.0;  // best estimate of the dropped sum
  double bound = 0.0;     // certified upper bound (may be inf)
  bool heuristic = false;
};

struct Spectrum {
  std::vector<double> values;  // nonincreasing, >= 0; exact zero tail trimmed
  std::string source;
  std::function<SchattenTail(double p)> tail;  // optional, beyond `values`

  /// sum lambda_n^p over stored values.
  double power_sum(double p) const;
  std::map<double, double> schatten_sums(const std::vector<double>& ps) const;
};

struct SchattenResult {
  double norm = 0.0;  // (power sum + tail estimate)^{1/p}
  double lo = 0.0;    // (power sum)^{1/p}
  double hi = 0.0;    // (power sum + tail bound)^{1/p}
  SchattenTail tail;
};

/// Full SVD spectrum of the truncated matrix (Eigen BDCSVD, values only).
Spectrum singular_values(const OperatorMatrix& m);

/// lambda_n = j (n+1)^{(1-alpha)/2} / (n (n-j+1)^{(1-alpha)/2}) for the
/// coefficient-mode basis; the Integral-mode normalizations give the same
/// subdiagonal structure with nu_n = ||z^n|| of that mode.
double monomial_tg_lambda(int j, const SpaceParams& sp, long n);

/// Spectrum of T_{z^j} on D_alpha with values for n = j..N and a closed-form
/// tail (integral enclosure) for n > N.
Spectrum monomial_spectrum_closed_form(int j, double alpha, int N,
                                       InnerProduct mode = InnerProduct::Coefficient);

/// Accurate Schatten p-power sum of the full (untruncated) T_{z^j} spectrum:
/// direct summation to ~64 j plus an integral-enclosure tail.  p > 1.
SchattenResult monomial_schatten_power_sum(int j, double alpha, double p,
                                           InnerProduct mode = InnerProduct::Coefficient);

/// Exact S_1 power sum of M_{z^j} : D -> A^2_2 (direct + dyadic tail bound).
SchattenResult mult_monomial_s1(int j);

SchattenResult schatten_norm(const Spectrum& s, double p);

// ---------------------------------------------------------------------------
// Reproducing-kernel (Berezin-type) functionals:
//   int ||T probe_z||^p dlambda(z),   dlambda = dA/(1-|z|^2)^2,
// with probe_z the normalized J^alpha_z (domain D_alpha) or b^alpha_z
// (domain A^2_alpha), expanded in the domain basis to the matrix truncation.
// ---------------------------------------------------------------------------

enum class Probe { BergmanNormalized, JNormalized };

struct BerezinResult {
  double value = 0.0;
  double quad_error = 0.0;        // refinement-based estimate
  double probe_truncation = 0.0;  // worst probe-norm deficiency over nodes
};

/// Generic quadrature evaluation (any p > 0).  `space` describes the domain
/// whose basis indexes the matrix columns: D_alpha for JNormalized,
/// A^2_alpha for BergmanNormalized (alpha taken from `space.alpha`).
BerezinResult berezin_functional(const Eigen::MatrixXcd& matrix, const SpaceParams& space,
                                 double p, Probe probe, const DiskGrid& grid);

/// Exact value of int ||T j_z||^2 dlambda over the full disk for a truncated
/// matrix in the Integral-mode basis: (||T||_F^2 - ||T e_0||^2)/(1+alpha).
double berezin_j_p2_exact(const OperatorMatrix& m);

// ---------------------------------------------------------------------------
// Hilbert-Schmidt identity on the classical Dirichlet space (Integral mode):
//   sum_n ||T_g e_n||^2 = int |g'|^2 log(e/(1-|z|^2)) dA.
// For polynomial g both sides have closed forms:
//   sum_j j |b_j|^2 (1 + H_j).
// ---------------------------------------------------------------------------

/// Closed form sum_j j |b_j|^2 (1 + H_j) (degree <= M symbols).
double tg_hs_exact(const Symbol& g, int max_degree = 1 << 20);

/// sum_{k=0}^{K} ||T_g e_k||^2 in the Integral-mode Dirichlet basis plus the
/// exact remainder sum_j j |b_j|^2 (H_{K+j} - H_K).
double tg_hs_column_sum(const Symbol& g, long K);

// ---------------------------------------------------------------------------
// Lemma-type frame lower bound: partial sums of
//   sum_n |e_n(z)|^p |e_n'(z)|^{2-p}
// against (1-|z|^2)^{p-2-alpha} on a radial grid.
// ---------------------------------------------------------------------------

struct FrameRow {
  double s = 0.0;        // |z|^2
  double partial = 0.0;  // sum to N
  double ratio = 0.0;    // partial * (1-s)^{2+alpha-p}
};

struct FrameReport {
  std::vector<FrameRow> rows;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
};

FrameReport frame_lower_bound_check(const SpaceParams& sp, double p, int N,
                                    const std::vector<double>& radii);

}  // namespace disklab
