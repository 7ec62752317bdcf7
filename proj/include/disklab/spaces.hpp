#pragma once

#include <optional>
#include <string>
#include <vector>

#include "disklab/common.hpp"

namespace disklab {

// ---------------------------------------------------------------------------
// Weighted Dirichlet-type spaces D_alpha on the unit disk.
//
// Two equivalent inner products are supported and tracked explicitly:
//   Coefficient:  <f,g> = sum_k (k+1)^{1-alpha} a_k conj(b_k)
//   Integral:     <f,g> = f(0)conj(g(0)) + int_D f' conj(g') dA_alpha,
// with dA_alpha = (alpha+1)(1-|z|^2)^alpha dA and dA the normalized area
// measure. Schatten-class membership and growth orders are the same in both;
// exact constants differ, so every derived object records its mode.
// ---------------------------------------------------------------------------

enum class InnerProduct { Integral, Coefficient };

struct SpaceParams {
  double alpha = 0.0;
  InnerProduct mode = InnerProduct::Coefficient;

  void validate() const;  // alpha >= 0
};

std::string to_string(InnerProduct m);
InnerProduct inner_product_from_string(const std::string& s);

/// ||z^n|| in D_alpha for the given mode.
///   Coefficient:      (n+1)^{(1-alpha)/2}
///   Integral, n = 0:  1
///   Integral, n >= 1: sqrt(n^2 (alpha+1) B(n, alpha+1))   [= sqrt(n) at alpha=0]
double monomial_norm(const SpaceParams& sp, int n);

/// Orthonormal monomial basis e_n = z^n / ||z^n|| up to degree N.
struct BasisInfo {
  SpaceParams space;
  std::vector<double> norms;  // ||z^n||, n = 0..N

  int degree() const { return static_cast<int>(norms.size()) - 1; }
  double normalization(int n) const { return 1.0 / norms[n]; }
  cplx eval(int n, cplx z) const;             // e_n(z)
  cplx eval_derivative(int n, cplx z) const;  // e_n'(z)
};

BasisInfo orthonormal_basis(const SpaceParams& sp, int N);

// ---------------------------------------------------------------------------
// Symbols: the analytic functions g driving T_g, M_{g'}, M_{g''}.
// ---------------------------------------------------------------------------

enum class SymbolKind { Taylor, Monomial, KernelPower, LogLog, Lacunary };

std::string to_string(SymbolKind k);

/// Taylor coefficients b_0..b_M of a symbol plus a certified bound on the
/// dropped series tail (sup over |z| <= tail_radius of |g - P_M|).
struct CoeffSeq {
  std::vector<cplx> b;
  double tail_bound = 0.0;   // 0 for polynomials truncated past their degree
  double tail_radius = 0.0;  // radius at which tail_bound holds
  int dropped_terms = 0;     // Lacunary: number of terms with n_k > M
};

class Symbol {
 public:
  static Symbol taylor(std::vector<cplx> coeffs);
  static Symbol monomial(int j);                 // g(z) = z^j, j >= 1
  static Symbol kernel_power(cplx a, double gamma);  // g(z) = (1 - conj(a) z)^{-gamma}
  static Symbol log_log();                       // g(z) = log log(e/(1-z))
  static Symbol lacunary(std::vector<double> coeffs, std::vector<long> exponents);
  static Symbol constant(cplx c);                // degenerate Taylor, g' = 0

  SymbolKind kind() const { return kind_; }
  bool is_constant() const;

  /// Taylor coefficients to degree M with tail certificate.
  CoeffSeq coeffs(int M, double tail_radius = 0.5) const;

  /// Pointwise evaluation; closed form for Monomial/KernelPower/LogLog,
  /// Horner on the stored coefficients otherwise.
  cplx value_at(cplx z) const;
  cplx derivative_at(cplx z) const;
  cplx second_derivative_at(cplx z) const;

  /// True when derivative_at does not depend on a stored truncation.
  bool has_closed_form() const;

  // accessors for kind-specific parameters
  int monomial_degree() const { return monomial_j_; }
  cplx kp_point() const { return kp_a_; }
  double kp_gamma() const { return kp_gamma_; }
  const std::vector<double>& lacunary_coeffs() const { return lac_a_; }
  const std::vector<long>& lacunary_exponents() const { return lac_n_; }
  const std::vector<cplx>& taylor_coeffs() const { return taylor_; }

  std::string describe() const;
  std::string to_json() const;
  static Symbol from_json(const std::string& doc);

  /// CLI shorthand, e.g. "monomial:3", "kernelpow:0.9,1", "loglog",
  /// "taylor:1,0,0.5", "lacunary:1,0.5@2,4", "const:1".
  static Symbol parse(const std::string& text);

 private:
  Symbol() = default;
  SymbolKind kind_ = SymbolKind::Taylor;
  std::vector<cplx> taylor_;
  int monomial_j_ = 0;
  cplx kp_a_{0.0, 0.0};
  double kp_gamma_ = 0.0;
  std::vector<double> lac_a_;
  std::vector<long> lac_n_;
};

// ---------------------------------------------------------------------------
// Reproducing kernels.
//   BergmanB:   B^a_z(w) = (1 - conj(z) w)^{-(2+a)},  ||B^a_z|| = (1-|z|^2)^{-(2+a)/2}
//   DirichletK: Integral mode, K^a_z(w) = 1 + sum_m C_m(a) (conj(z)w)^{m+1}/(m+1)^2
//               with C_m(a) the coefficients of (1-x)^{-(2+a)};
//               alpha = 0 closed form 1 + log(1/(1 - conj(z)w)).
//               Coefficient mode, K_z(w) = sum_k (conj(z)w)^k/(k+1)^{1-a}.
//   DerivativeJ: J^a_z(w) = ((1 - conj(z)w)^{-(1+a)} - 1) / ((1+a) conj(z)),
//               J^a_z(0) = 0, ||J^a_z|| = ||B^a_z||.
// ---------------------------------------------------------------------------

enum class KernelKind { DirichletK, BergmanB, DerivativeJ };

struct KernelEval {
  KernelKind kind = KernelKind::DirichletK;
  double alpha = 0.0;
  InnerProduct mode = InnerProduct::Integral;  // relevant for DirichletK only
};

cplx kernel_value(const KernelEval& k, cplx z, cplx w, double tol = 1e-12);
double kernel_norm(const KernelEval& k, cplx z, double tol = 1e-12);

}  // namespace disklab
