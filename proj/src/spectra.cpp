#include "disklab/spectra.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace disklab {

double Spectrum::power_sum(double p) const {
  if (!(p > 0.0)) throw std::invalid_argument("power_sum: p must be > 0");
  std::vector<double> terms(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) terms[i] = std::pow(values[i], p);
  return pairwise_sum(terms);
}

std::map<double, double> Spectrum::schatten_sums(const std::vector<double>& ps) const {
  std::map<double, double> out;
  for (double p : ps) out[p] = power_sum(p);
  return out;
}

Spectrum singular_values(const OperatorMatrix& m) {
  if (!m.entries.allFinite())
    throw std::invalid_argument("singular_values: matrix has non-finite entries");
  Spectrum s;
  s.source = m.spec.describe();
  if (m.is_real) {
    Eigen::MatrixXd re = m.entries.real();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(re);
    s.values.assign(svd.singularValues().data(),
                    svd.singularValues().data() + svd.singularValues().size());
  } else {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m.entries);
    s.values.assign(svd.singularValues().data(),
                    svd.singularValues().data() + svd.singularValues().size());
  }
  while (!s.values.empty() && s.values.back() == 0.0) s.values.pop_back();
  // keep only the state the tail certificate needs
  const int N = m.dim() - 1;
  double c_prev = 0.0, c_last = 0.0;
  for (int r = 0; r <= N; ++r) {
    if (N >= 1) c_prev += std::norm(m.entries(r, N - 1));
    c_last += std::norm(m.entries(r, N));
  }
  const bool zero = m.zero_symbol || s.values.empty();
  const OperatorSpec spec = m.spec;
  s.tail = [spec, zero, c_prev, c_last](double p) {
    TruncationReport r = truncation_report_from(spec, zero, c_prev, c_last, p);
    SchattenTail t;
    t.bound = r.tail_bound;
    t.estimate = r.heuristic ? r.tail_bound : 0.5 * r.tail_bound;
    t.heuristic = r.heuristic;
    return t;
  };
  return s;
}

double monomial_tg_lambda(int j, const SpaceParams& sp, long n) {
  if (n < j) return 0.0;
  if (sp.mode == InnerProduct::Coefficient) {
    const double beta = 0.5 * (1.0 - sp.alpha);
    return j * std::pow((n + 1.0) / (n - j + 1.0), beta) / double(n);
  }
  return double(j) / double(n) * monomial_norm(sp, static_cast<int>(n)) /
         monomial_norm(sp, static_cast<int>(n - j));
}

namespace {

// continuous extension of the closed-form lambda to real arguments
double monomial_tg_lambda_cont(int j, const SpaceParams& sp, double x) {
  if (sp.mode == InnerProduct::Coefficient) {
    const double beta = 0.5 * (1.0 - sp.alpha);
    return j * std::pow((x + 1.0) / (x - j + 1.0), beta) / x;
  }
  // Integral mode: nu(x) = x sqrt((alpha+1)) exp(lbeta(x, alpha+1)/2)
  auto nu = [&](double t) {
    return t * std::sqrt(sp.alpha + 1.0) * std::exp(0.5 * lbeta(t, sp.alpha + 1.0));
  };
  return double(j) / x * nu(x) / nu(x - j);
}

// integral enclosure of sum_{n>N} lambda_n^p: the summand is decreasing for
// n >= max(j+1, 2), so  int_{N+1}^inf <= tail <= int_N^inf; the midpoint
// integral serves as the estimate.
struct TailIntegrals {
  double lower = 0.0, mid = 0.0, upper = 0.0;
};

TailIntegrals monomial_tail_enclosure(int j, const SpaceParams& sp, double p, double N) {
  auto f = [&](double x) { return std::pow(monomial_tg_lambda_cont(j, sp, x), p); };
  std::vector<double> gx, gw;
  gauss_legendre(16, gx, gw);
  auto integral_from = [&](double from) {
    double acc = 0.0, lo = from;
    for (int oct = 0; oct < 64; ++oct) {
      const double hi = 2.0 * lo;
      const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
      for (int i = 0; i < 16; ++i) acc += gw[i] * half * f(mid + half * gx[i]);
      lo = hi;
    }
    // x |-> lambda(x) x is decreasing, so lambda(x)^p <= (lambda(lo) lo)^p x^{-p}
    const double C = std::pow(monomial_tg_lambda_cont(j, sp, lo) * lo, p);
    acc += C * std::pow(lo, 1.0 - p) / (p - 1.0);
    return acc;
  };
  TailIntegrals t;
  t.lower = integral_from(N + 1.0);
  t.mid = integral_from(N + 0.5);
  t.upper = integral_from(N);
  return t;
}

}  // namespace

Spectrum monomial_spectrum_closed_form(int j, double alpha, int N, InnerProduct mode) {
  if (j < 1) throw std::invalid_argument("monomial_spectrum_closed_form: j >= 1");
  if (!(alpha >= 0.0)) throw std::invalid_argument("monomial_spectrum_closed_form: alpha >= 0");
  SpaceParams sp{alpha, mode};
  Spectrum s;
  s.source = "closed-form T_{z^j}, j=" + std::to_string(j);
  for (long n = j; n <= N; ++n) s.values.push_back(monomial_tg_lambda(j, sp, n));
  std::sort(s.values.begin(), s.values.end(), std::greater<double>());
  const int Ncap = N;
  s.tail = [j, sp, Ncap](double p) {
    SchattenTail t;
    if (p <= 1.0) {
      t.estimate = t.bound = INFINITY;
      return t;
    }
    auto enc = monomial_tail_enclosure(j, sp, p, double(Ncap));
    t.estimate = enc.mid;
    t.bound = enc.upper;
    return t;
  };
  return s;
}

SchattenResult monomial_schatten_power_sum(int j, double alpha, double p, InnerProduct mode) {
  if (!(p > 1.0))
    throw std::invalid_argument("monomial_schatten_power_sum: requires p > 1 (no trace class)");
  SpaceParams sp{alpha, mode};
  const long direct = std::max<long>(64L * j, 4096);
  std::vector<double> terms;
  terms.reserve(direct - j + 1);
  for (long n = j; n <= direct; ++n) terms.push_back(std::pow(monomial_tg_lambda(j, sp, n), p));
  const double head = pairwise_sum(terms);
  auto enc = monomial_tail_enclosure(j, sp, p, double(direct));
  SchattenResult r;
  r.tail.estimate = enc.mid;
  r.tail.bound = enc.upper;
  r.lo = std::pow(head + enc.lower, 1.0 / p);
  r.hi = std::pow(head + enc.upper, 1.0 / p);
  r.norm = std::pow(head + enc.mid, 1.0 / p);
  return r;
}

SchattenResult mult_monomial_s1(int j) {
  const long direct = std::max<long>(64L * j, 4096);
  std::vector<double> terms;
  for (long n = j; n <= direct; ++n) terms.push_back(mult_monomial_singular_number(j, n));
  const double head = pairwise_sum(terms);
  // lambda is decreasing; integral enclosure via dyadic blocks of the bound
  auto f = [&](double x) {
    return 1.0 / (std::sqrt((x + 1.0) * (x + 2.0) * (x + 3.0) / 6.0) * std::sqrt(x - j + 1.0));
  };
  std::vector<double> gx, gw;
  gauss_legendre(16, gx, gw);
  auto integral_from = [&](double from) {
    double acc = 0.0, lo = from;
    for (int oct = 0; oct < 64; ++oct) {
      const double hi = 2.0 * lo;
      const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
      for (int i = 0; i < 16; ++i) acc += gw[i] * half * f(mid + half * gx[i]);
      lo = hi;
    }
    // lambda(x) x^2 <= sqrt(6 lo/(lo-j+1)) on [lo, inf)
    return acc + std::sqrt(6.0 * lo / (lo - j + 1.0)) / lo;
  };
  SchattenResult r;
  r.tail.estimate = integral_from(direct + 0.5);
  r.tail.bound = integral_from(direct);
  r.lo = head + integral_from(direct + 1.0);
  r.hi = head + r.tail.bound;
  r.norm = head + r.tail.estimate;
  return r;
}

SchattenResult schatten_norm(const Spectrum& s, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("schatten_norm: p must be > 0");
  const double head = s.power_sum(p);
  SchattenResult r;
  if (s.tail) r.tail = s.tail(p);
  r.lo = std::pow(head, 1.0 / p);
  r.hi = std::pow(head + r.tail.bound, 1.0 / p);
  r.norm = std::pow(head + r.tail.estimate, 1.0 / p);
  return r;
}

// ---------------------------------------------------------------------------
// Berezin functionals
// ---------------------------------------------------------------------------

namespace {

// coefficient vector of the normalized probe at z in the domain basis,
// truncated to dim; returns the truncated-norm fraction via *captured
void probe_vector(Probe probe, const SpaceParams& space, cplx z, int dim,
                  Eigen::VectorXcd& v, double& captured) {
  const cplx zbar = std::conj(z);
  const double s = std::norm(z);
  if (probe == Probe::JNormalized) {
    // <J_z, e_n> = conj(e_n'(z)); exact norm in Integral mode is
    // (1-s)^{-(2+alpha)/2}; in Coefficient mode sum the series to a
    // geometric-tail cut.
    BasisInfo basis = orthonormal_basis(space, dim - 1);
    v.resize(dim);
    cplx zp = 1.0;  // z^{n-1}
    v(0) = 0.0;
    for (int n = 1; n < dim; ++n) {
      v(n) = double(n) * std::pow(zbar, n - 1) / basis.norms[n];
      zp *= zbar;
    }
    double norm_sq;
    if (space.mode == InnerProduct::Integral) {
      norm_sq = std::pow(1.0 - s, -(2.0 + space.alpha));
    } else {
      // sum_n n^2 s^{n-1} / (n+1)^{1-alpha}
      norm_sq = 0.0;
      double sp_ = 1.0;
      for (long n = 1; n < 100000000; ++n) {
        const double t = double(n) * double(n) * sp_ * std::pow(n + 1.0, space.alpha - 1.0);
        norm_sq += t;
        sp_ *= s;
        if (n > 8 && t < 1e-17 * norm_sq * (1.0 - s)) break;
      }
    }
    double head = 0.0;
    for (int n = 0; n < dim; ++n) head += std::norm(v(n));
    captured = head / norm_sq;
    v /= std::sqrt(norm_sq);
  } else {
    // Bergman probe in A^2_alpha: coords beta_k(2+alpha) conj(z)^k ||z^k||
    v.resize(dim);
    double bk = 1.0;
    cplx zp = 1.0;
    for (int k = 0; k < dim; ++k) {
      v(k) = bk * zp * std::sqrt(radial_moment(k, space.alpha));
      bk *= (2.0 + space.alpha + k) / (k + 1.0);
      zp *= zbar;
    }
    const double norm_sq = std::pow(1.0 - s, -(2.0 + space.alpha));
    double head = 0.0;
    for (int k = 0; k < dim; ++k) head += std::norm(v(k));
    captured = head / norm_sq;
    v /= std::sqrt(norm_sq);
  }
}

double berezin_on_grid(const Eigen::MatrixXcd& matrix, const SpaceParams& space, double p,
                       Probe probe, const DiskGrid& grid, double& worst_capture) {
  const int dim = static_cast<int>(matrix.cols());
  const auto& nodes = grid.nodes();
  std::vector<double> terms(nodes.size());
  std::vector<double> captures(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t i) {
    const auto& nd = nodes[i];
    Eigen::VectorXcd v;
    double cap = 0.0;
    probe_vector(probe, space, nd.z, dim, v, cap);
    captures[i] = cap;
    const double img = (matrix * v).norm();
    const double one_minus_s = nd.delta * (2.0 - nd.delta);  // 1 - |z|^2
    terms[i] = nd.w * std::pow(img, p) / (one_minus_s * one_minus_s);
  });
  worst_capture = 1.0;
  for (double c : captures) worst_capture = std::min(worst_capture, c);
  return pairwise_sum(terms);
}

}  // namespace

BerezinResult berezin_functional(const Eigen::MatrixXcd& matrix, const SpaceParams& space,
                                 double p, Probe probe, const DiskGrid& grid) {
  if (!(p > 0.0)) throw std::invalid_argument("berezin_functional: p must be > 0");
  BerezinResult r;
  double cap1 = 1.0, cap2 = 1.0;
  const double coarse = berezin_on_grid(matrix, space, p, probe, grid, cap1);
  const double fine = berezin_on_grid(matrix, space, p, probe, grid.refined(), cap2);
  r.value = fine;
  r.quad_error = std::abs(fine - coarse);
  r.probe_truncation = 1.0 - std::min(cap1, cap2);
  return r;
}

double berezin_j_p2_exact(const OperatorMatrix& m) {
  if (m.spec.domain.mode != InnerProduct::Integral)
    throw std::invalid_argument("berezin_j_p2_exact: Integral-mode matrix required");
  const double alpha = m.spec.domain.alpha;
  double frob = m.frobenius_sq();
  double col0 = 0.0;
  for (Eigen::Index r = 0; r < m.entries.rows(); ++r) col0 += std::norm(m.entries(r, 0));
  return (frob - col0) / (1.0 + alpha);
}

// ---------------------------------------------------------------------------
// Hilbert-Schmidt identity helpers (Integral mode, alpha = 0)
// ---------------------------------------------------------------------------

double tg_hs_exact(const Symbol& g, int max_degree) {
  int degree = max_degree;
  if (g.kind() == SymbolKind::Taylor)
    degree = static_cast<int>(g.taylor_coeffs().size()) - 1;
  else if (g.kind() == SymbolKind::Monomial)
    degree = g.monomial_degree();
  else if (g.kind() == SymbolKind::Lacunary)
    degree = g.lacunary_exponents().empty() ? 0 : static_cast<int>(g.lacunary_exponents().back());
  else
    throw std::invalid_argument("tg_hs_exact: polynomial-type symbol required");
  CoeffSeq cs = g.coeffs(degree);
  double acc = 0.0, H = 0.0;
  for (int j = 1; j <= degree; ++j) {
    H += 1.0 / j;
    acc += double(j) * std::norm(cs.b[j]) * (1.0 + H);
  }
  return acc;
}

double tg_hs_column_sum(const Symbol& g, long K) {
  int degree;
  switch (g.kind()) {
    case SymbolKind::Taylor: degree = static_cast<int>(g.taylor_coeffs().size()) - 1; break;
    case SymbolKind::Monomial: degree = g.monomial_degree(); break;
    case SymbolKind::Lacunary:
      degree = g.lacunary_exponents().empty() ? 0 : static_cast<int>(g.lacunary_exponents().back());
      break;
    default: throw std::invalid_argument("tg_hs_column_sum: polynomial-type symbol required");
  }
  CoeffSeq cs = g.coeffs(degree);
  // ||T_g e_0||^2 = sum_j j |b_j|^2
  double acc = 0.0;
  for (int j = 1; j <= degree; ++j) acc += double(j) * std::norm(cs.b[j]);
  // ||T_g e_k||^2 = sum_j j^2 |b_j|^2 / (k (k+j)) for k >= 1
  std::vector<double> cols(static_cast<std::size_t>(K), 0.0);
  parallel_for(cols.size(), [&](std::size_t i) {
    const double k = double(i + 1);
    double c = 0.0;
    for (int j = 1; j <= degree; ++j) c += double(j) * double(j) * std::norm(cs.b[j]) / (k * (k + j));
    cols[i] = c;
  });
  acc += pairwise_sum(cols);
  // exact remainder: sum_{k>K} = sum_j j |b_j|^2 (H_{K+j} - H_K)
  for (int j = 1; j <= degree; ++j) {
    double hdiff = 0.0;
    for (long m = K + 1; m <= K + j; ++m) hdiff += 1.0 / double(m);
    acc += double(j) * std::norm(cs.b[j]) * hdiff;
  }
  return acc;
}

FrameReport frame_lower_bound_check(const SpaceParams& sp, double p, int N,
                                    const std::vector<double>& radii) {
  if (!(p >= 1.0) || !(p < 2.0))
    throw std::invalid_argument("frame_lower_bound_check: p in [1,2) required");
  BasisInfo basis = orthonormal_basis(sp, N);
  FrameReport rep;
  rep.min_ratio = 1e300;
  rep.max_ratio = 0.0;
  for (double r : radii) {
    if (!(r >= 0.0) || !(r < 1.0))
      throw std::domain_error("frame_lower_bound_check: radius outside [0,1)");
    const double s = r * r;
    std::vector<double> terms(N + 1, 0.0);
    for (int n = 1; n <= N; ++n) {
      const double en = std::pow(r, n) / basis.norms[n];
      const double den = n * std::pow(r, n - 1) / basis.norms[n];
      terms[n] = std::pow(en, p) * std::pow(den, 2.0 - p);
    }
    FrameRow row;
    row.s = s;
    row.partial = pairwise_sum(terms);
    row.ratio = row.partial * std::pow(1.0 - s, 2.0 + sp.alpha - p);
    rep.rows.push_back(row);
    if (r > 0.0) {
      rep.min_ratio = std::min(rep.min_ratio, row.ratio);
      rep.max_ratio = std::max(rep.max_ratio, row.ratio);
    }
  }
  return rep;
}

}  // namespace disklab
