#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "disklab/hyperbolic.hpp"
#include "disklab/spaces.hpp"

namespace disklab {

// ---------------------------------------------------------------------------
// Truncated matrices of the operators under study, in the explicit
// orthonormal monomial bases of the relevant spaces.  Truncation order N
// keeps monomial degrees 0..N, so matrices are (N+1) x (N+1).
//
//   T_g        : D_alpha -> D_alpha,      (T_g f)(z) = int_0^z f g'
//   M_{g'}     : D_alpha -> A^2_alpha
//   M_{g''}    : D_alpha -> A^2_{2+alpha}
//   M_{z^j}    : D       -> A^2_2
//   Q_mu       : D_alpha -> D_alpha (alpha > 0), Q_mu = I_mu^* I_mu
//
// With domain basis sigma_k = z^k/nu_k and g(z) = sum_j b_j z^j,
//   T_g sigma_k = sum_{j>=1} [ j b_j/(k+j) ] (nu_{k+j}/nu_k) sigma_{k+j},
// i.e. entry (n,k) = (n-k) b_{n-k}/n * nu_n/nu_k, strictly lower triangular.
// For g = z^j this is a single subdiagonal and the singular values are
// exactly { j (n+1)^{(1-alpha)/2} / (n (n-j+1)^{(1-alpha)/2}) : n >= j }
// in Coefficient mode.
// ---------------------------------------------------------------------------

enum class OperatorKind {
  IntegrationTg,
  MultiplicationGprime,
  MultiplicationGsecond,
  MultiplicationMonomial,
  ToeplitzQmu
};

std::string to_string(OperatorKind k);

struct OperatorSpec {
  OperatorKind kind = OperatorKind::IntegrationTg;
  std::optional<Symbol> symbol;
  std::optional<MeasureRep> measure;
  SpaceParams domain;
  double codomain_alpha = 0.0;  // weight of the codomain space
  int N = 0;
  int monomial_j = 0;  // MultiplicationMonomial only

  std::string describe() const;
};

struct OperatorMatrix {
  OperatorSpec spec;
  Eigen::MatrixXcd entries;  // rows = codomain basis, cols = domain basis
  bool is_real = false;
  int bandwidth = -1;        // max |row-col| over nonzeros; -1 when dense
  bool zero_symbol = false;  // constant symbol: flagged, not an error

  int dim() const { return static_cast<int>(entries.rows()); }
  double frobenius_sq() const;
  Eigen::MatrixXcd dense() const { return entries; }

  /// CSV triplets "row,col,re,im\n" for nonzero entries (row-major order).
  std::string to_csv_triplets() const;
  /// Binary container; layout documented in docs/formats.md.
  std::string to_binary() const;
};

OperatorMatrix assemble_tg(const Symbol& g, const SpaceParams& space, int N);
OperatorMatrix assemble_mgprime(const Symbol& g, const SpaceParams& space, int N);
OperatorMatrix assemble_mgsecond(const Symbol& g, const SpaceParams& space, int N);
OperatorMatrix assemble_mult_monomial(int j, int N);  // D -> A^2_2, coefficient mode

/// Exact singular numbers of M_{z^j} : D -> A^2_2,
///   lambda_n = 1/(c_n sqrt(n-j+1)),  c_n = sqrt((n+1)(n+2)(n+3)/6),  n >= j.
double mult_monomial_singular_number(int j, long n);

/// Q_mu on D_alpha, alpha > 0.  Entries <Q_mu sigma_k, sigma_n> =
/// int sigma_k conj(sigma_n) d mu: exact sums for atomic measures, grid sums
/// for densities (grid required in that case).
OperatorMatrix assemble_toeplitz(const MeasureRep& mu, const SpaceParams& space, int N,
                                 const DiskGrid* grid = nullptr);

struct TruncationReport {
  double p = 0.0;
  double tail_bound = 0.0;  // upper bound on the dropped Schatten p-sum
  bool heuristic = false;
  std::string method;
};

/// Tail certificate for the Schatten p-sum dropped by the truncation.
/// Certified for monomial symbols (closed-form dropped singular values) and
/// for kernel-power symbols with p >= 2 (coefficient decay -> Frobenius
/// bound).  Heuristic (geometric extrapolation of trailing column norms, or
/// Frobenius scale for p < 2) otherwise.
TruncationReport truncation_report(const OperatorMatrix& m, double p);

/// Same computation from the spec plus the squared norms of the last two
/// columns (enough state for every certificate path); lets spectra keep a
/// lightweight tail closure instead of the whole matrix.
TruncationReport truncation_report_from(const OperatorSpec& spec, bool zero_operator,
                                        double col_prev_sq, double col_last_sq, double p);

}  // namespace disklab
