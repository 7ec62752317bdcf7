#include "disklab/norms.hpp"

#include <algorithm>
#include <cmath>

namespace disklab {

namespace {

constexpr double kPiSq6 = 1.6449340668482264;  // pi^2/6

// all functionals here have radial weights, so kernel-power symbols can be
// rotated to put the singular direction on the positive real axis
Symbol radialized(const Symbol& g) {
  if (g.kind() == SymbolKind::KernelPower && g.kp_point().imag() != 0.0)
    return Symbol::kernel_power(std::abs(g.kp_point()), g.kp_gamma());
  return g;
}

bool boundary_singular(const Symbol& g) {
  if (g.kind() == SymbolKind::LogLog) return true;
  if (g.kind() == SymbolKind::KernelPower) return std::abs(g.kp_point()) >= 0.75;
  return false;
}

DiskGrid grid_for_symbol(const Symbol& g, const GridParams& p) {
  return boundary_singular(g) ? DiskGrid::boundary_focused(p) : DiskGrid::uniform(p);
}

double one_minus_sq(double delta) { return delta * (2.0 - delta); }  // 1-|z|^2

// int |g'|^pexp * weight(node) dA on the grid
template <typename W>
double gprime_integral(const Symbol& g, double pexp, const DiskGrid& grid, W&& weight) {
  return grid.integrate([&](const DiskGrid::Node& nd) {
    const double gp = std::abs(g.derivative_at(nd.z));
    return (gp == 0.0 ? 0.0 : std::pow(gp, pexp)) * weight(nd);
  });
}

struct InnerCache {
  std::vector<cplx> z;
  std::vector<double> pre;  // |g'(z)|^2 dA_alpha cell mass
};

InnerCache make_inner_cache(const Symbol& g, double alpha, const DiskGrid& inner) {
  InnerCache c;
  const auto& nodes = inner.nodes();
  c.z.resize(nodes.size());
  c.pre.resize(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t i) {
    const auto& nd = nodes[i];
    c.z[i] = nd.z;
    const double gp = std::norm(g.derivative_at(nd.z));
    c.pre[i] = gp * (alpha + 1.0) * std::pow(one_minus_sq(nd.delta), alpha) * nd.w;
  });
  return c;
}

double inner_from_cache(const InnerCache& c, double alpha, cplx w) {
  const cplx wbar = std::conj(w);
  double acc = 0.0;
  const double e = -(1.0 + alpha);
  for (std::size_t i = 0; i < c.z.size(); ++i) {
    if (c.pre[i] == 0.0) continue;
    acc += c.pre[i] * std::pow(std::norm(1.0 - wbar * c.z[i]), e);
  }
  return acc;
}

}  // namespace

double xpa_nested_raw(const Symbol& g_in, double p, double alpha, const DiskGrid& outer,
                      const DiskGrid& inner) {
  const Symbol g = radialized(g_in);
  const InnerCache cache = make_inner_cache(g, alpha, inner);
  const double g0 = std::pow(std::abs(g.value_at(0.0)), p);
  return g0 + outer.integrate([&](const DiskGrid::Node& nd) {
           const double oms = one_minus_sq(nd.delta);
           const double iv = inner_from_cache(cache, alpha, nd.z);
           return std::pow(std::pow(oms, alpha) * iv, 0.5 * p) * std::pow(oms, p - 2.0);
         });
}

// ---------------------------------------------------------------------------
// series oracles
// ---------------------------------------------------------------------------

double kernel_radial_series(double q, double t, double a, double rel_tol) {
  if (!(a >= 0.0) || !(a < 1.0)) throw std::domain_error("kernel_radial_series: a in [0,1)");
  if (!(t > -1.0)) throw std::domain_error("kernel_radial_series: t > -1 required");
  const double c = 0.5 * q;
  const double a2 = a * a;
  double beta = 1.0;           // binom_m(c)
  double B = 1.0 / (t + 1.0);  // B(m+1, t+1)
  double a2m = 1.0;
  double acc = 0.0;
  for (long m = 0; m < 200000000; ++m) {
    const double term = beta * beta * a2m * B;
    acc += term;
    const double br = (m + c) / (m + 1.0);
    const double rho = a2 * std::max(1.0, br * br);
    if (rho < 1.0 && term * rho / (1.0 - rho) < rel_tol * acc) break;
    beta *= br;
    B *= (m + 1.0) / (m + t + 2.0);
    a2m *= a2;
  }
  return acc;
}

double bp_series_kernel_power(double gamma, double p, double a) {
  return std::pow(gamma * a, p) * kernel_radial_series((gamma + 1.0) * p, p - 2.0, a);
}

double bp_series_monomial(int j, double p) {
  return std::pow(double(j), p) * std::exp(lbeta(0.5 * (j - 1.0) * p + 1.0, p - 1.0));
}

namespace {

// moduli of the coefficients of g' for polynomial-type symbols
std::vector<double> gprime_coeff_moduli(const Symbol& g) {
  int degree = 0;
  switch (g.kind()) {
    case SymbolKind::Taylor: degree = static_cast<int>(g.taylor_coeffs().size()) - 1; break;
    case SymbolKind::Monomial: degree = g.monomial_degree(); break;
    case SymbolKind::Lacunary:
      degree = g.lacunary_exponents().empty() ? 0 : static_cast<int>(g.lacunary_exponents().back());
      break;
    default:
      throw std::invalid_argument("series oracle: polynomial-type symbol required");
  }
  CoeffSeq cs = g.coeffs(degree);
  std::vector<double> c(std::max(degree, 1), 0.0);
  for (int m = 0; m + 1 <= degree; ++m) c[m] = (m + 1.0) * std::abs(cs.b[m + 1]);
  return c;
}

// sum over the coefficients of g' with per-index weights weight(m); supports
// the running kernel-power coefficient sequence with a certified cut
template <typename W>
double gprime_weighted_sq_sum(const Symbol& g, W&& weight, double rel_tol = 1e-13) {
  if (g.kind() == SymbolKind::KernelPower) {
    const double gam = g.kp_gamma();
    const double a = std::abs(g.kp_point());
    double cm = gam * a;  // |c_m| = gamma a binom_m(gamma+1) a^m
    double acc = 0.0;
    for (long m = 0; m < 200000000; ++m) {
      const double term = cm * cm * weight(m);
      acc += term;
      const double br = a * (gam + 1.0 + m) / (m + 1.0);
      const double rho = br * br * (1.0 + 1.0 / (m + 1.0));
      if (rho < 1.0 && term * rho / (1.0 - rho) < rel_tol * acc && m > 4) break;
      cm *= br;
    }
    return acc;
  }
  auto c = gprime_coeff_moduli(g);
  std::vector<double> terms(c.size());
  for (std::size_t m = 0; m < c.size(); ++m) terms[m] = c[m] * c[m] * weight(long(m));
  return pairwise_sum(terms);
}

}  // namespace

double dl_series(const Symbol& g) {
  if (g.kind() == SymbolKind::LogLog)
    throw std::invalid_argument("dl_series: diverges for the loglog symbol");
  // int_0^1 s^m log(e/(1-s)) ds = (1 + H_{m+1})/(m+1)
  std::vector<double> H{0.0};
  auto weight = [&H](long m) {
    while (static_cast<long>(H.size()) <= m + 1) H.push_back(H.back() + 1.0 / double(H.size()));
    return (1.0 + H[m + 1]) / (m + 1.0);
  };
  return gprime_weighted_sq_sum(g, weight);
}

double x20_series(const Symbol& g) {
  if (g.kind() == SymbolKind::LogLog)
    throw std::invalid_argument("x20_series: unsupported symbol");
  std::vector<double> H{0.0};
  auto weight = [&H](long m) {
    if (m == 0) return kPiSq6;
    while (static_cast<long>(H.size()) <= m) H.push_back(H.back() + 1.0 / double(H.size()));
    return H[m] / double(m);
  };
  return std::norm(g.value_at(0.0)) + gprime_weighted_sq_sum(g, weight);
}

double x2a_series(const Symbol& g, double alpha) {
  if (alpha == 0.0) return x20_series(g);
  auto c = gprime_coeff_moduli(g);
  const long K = 1 << 16;
  // W_m = sum_k binom_k(1+alpha)^2 B(k+1,alpha+1) B(m+k+1,alpha+1)
  std::vector<double> S1(c.size(), 0.0), S2(c.size(), 0.0), S3(c.size(), 0.0);
  std::vector<double> Bm(c.size());  // B(m+k+1, alpha+1), updated in k
  for (std::size_t m = 0; m < c.size(); ++m) {
    Bm[m] = std::exp(lbeta(double(m) + 1.0, alpha + 1.0));
  }
  double beta = 1.0;                       // binom_k(1+alpha)
  double Bk = std::exp(lbeta(1.0, alpha + 1.0));  // B(k+1, alpha+1)
  for (long k = 0; k <= 4 * K; ++k) {
    const double base = beta * beta * Bk;
    for (std::size_t m = 0; m < c.size(); ++m) {
      const double t = base * Bm[m];
      S3[m] += t;
      if (k < 2 * K) S2[m] += t;
      if (k < K) S1[m] += t;
      Bm[m] *= (m + k + 1.0) / (m + k + alpha + 2.0);
    }
    beta *= (1.0 + alpha + k) / (k + 1.0);
    Bk *= (k + 1.0) / (k + alpha + 2.0);
  }
  double acc = std::norm(g.value_at(0.0));
  for (std::size_t m = 0; m < c.size(); ++m) {
    const double T1 = 2.0 * S2[m] - S1[m];
    const double T2 = 2.0 * S3[m] - S2[m];
    const double W = (4.0 * T2 - T1) / 3.0;  // Richardson through 1/K^2
    acc += (alpha + 1.0) * c[m] * c[m] * W;
  }
  return acc;
}

namespace {

// coefficients of g' as complex values (|c| entries), finite kinds
std::vector<cplx> gprime_coeffs(const Symbol& g) {
  int degree = 0;
  switch (g.kind()) {
    case SymbolKind::Taylor: degree = static_cast<int>(g.taylor_coeffs().size()) - 1; break;
    case SymbolKind::Monomial: degree = g.monomial_degree(); break;
    case SymbolKind::Lacunary:
      degree = g.lacunary_exponents().empty() ? 0 : static_cast<int>(g.lacunary_exponents().back());
      break;
    default: throw std::invalid_argument("gprime_coeffs: polynomial-type symbol required");
  }
  CoeffSeq cs = g.coeffs(degree);
  std::vector<cplx> c(std::max(degree, 1), cplx(0.0));
  for (int m = 0; m + 1 <= degree; ++m) c[m] = (m + 1.0) * cs.b[m + 1];
  return c;
}

}  // namespace

double xpa_series_inner(const Symbol& g, double alpha, cplx w, double rel_tol) {
  const cplx wbar = std::conj(w);
  const double aw = std::abs(w);

  if (g.kind() == SymbolKind::KernelPower) {
    // f_n: coefficients of (1-conj(a)z)^{-(gamma+1)} (1-conj(w)z)^{-(1+alpha)};
    // hypergeometric three-term recurrence, companion run with moduli bounds it
    const double gam = g.kp_gamma();
    const cplx abar = std::conj(g.kp_point());
    const double aa = std::abs(abar);
    const double g1 = gam + 1.0, b1 = 1.0 + alpha;
    cplx f_prev = 0.0, f = 1.0;
    double fh_prev = 0.0, fh = 1.0;
    double moment = alpha + 1.0;  // radial_moment(0, alpha) = (alpha+1) B(1, alpha+1)
    moment = (alpha + 1.0) * std::exp(lbeta(1.0, alpha + 1.0));
    double acc = 0.0;
    for (long n = 0; n < 200000000; ++n) {
      acc += std::norm(f) * moment;
      // certified-ish cut on the companion majorant
      if (n > 8) {
        const double rho = (fh_prev > 0.0 ? (fh / fh_prev) * (fh / fh_prev) : 0.0) *
                           ((n + 1.0) / (n + alpha + 2.0));
        if (rho < 1.0 && fh * fh * moment * rho / (1.0 - rho) < rel_tol * acc) break;
      }
      const cplx f_next =
          ((abar * (n + g1) + wbar * (n + b1)) * f - abar * wbar * (n - 1.0 + g1 + b1) * f_prev) /
          double(n + 1);
      const double fh_next =
          ((aa * (n + g1) + aw * (n + b1)) * fh - aa * aw * (n - 1.0 + g1 + b1) * fh_prev) /
          double(n + 1);
      f_prev = f;
      f = f_next;
      fh_prev = fh;
      fh = std::max(fh_next, std::abs(f));  // majorant never below the true run
      moment *= (n + 1.0) / (n + alpha + 2.0);
    }
    return std::norm(gam * abar) * acc;
  }

  // finite-coefficient path: f = conv(c, e), e_i = binom_i(1+alpha) conj(w)^i
  const auto c = gprime_coeffs(g);
  const long d = static_cast<long>(c.size()) - 1;
  std::vector<cplx> e;  // e_0..e_n as we go
  e.reserve(1024);
  double moment = (alpha + 1.0) * std::exp(lbeta(1.0, alpha + 1.0));
  double acc = 0.0;
  cplx e_cur = 1.0;
  for (long n = 0; n < 200000000; ++n) {
    if (static_cast<long>(e.size()) <= n) {
      e.push_back(e_cur);
      e_cur *= wbar * ((1.0 + alpha + n) / (n + 1.0));
    }
    cplx f = 0.0;
    double fh = 0.0;
    for (long m = std::max<long>(0, n - (static_cast<long>(e.size()) - 1)); m <= std::min(d, n); ++m) {
      f += c[m] * e[n - m];
      fh += std::abs(c[m]) * std::abs(e[n - m]);
    }
    acc += std::norm(f) * moment;
    if (n > d + 8) {
      const double br = aw * (1.0 + (1.0 + alpha) / (n - d + 1.0));
      const double rho = br * br * ((n + 1.0) / (n + alpha + 2.0));
      if (rho < 1.0 && fh * fh * moment * rho / (1.0 - rho) < rel_tol * acc) break;
    }
    moment *= (n + 1.0) / (n + alpha + 2.0);
  }
  return acc;
}

double xpa_series_value(const Symbol& g_in, double p, double alpha, const DiskGrid& outer) {
  const Symbol g = radialized(g_in);
  const double g0 = std::pow(std::abs(g.value_at(0.0)), p);
  const auto& nodes = outer.nodes();
  std::vector<double> terms(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t i) {
    const auto& nd = nodes[i];
    const double oms = one_minus_sq(nd.delta);
    const double iv = xpa_series_inner(g, alpha, nd.z, 1e-10);
    terms[i] = nd.w * std::pow(std::pow(oms, alpha) * iv, 0.5 * p) * std::pow(oms, p - 2.0);
  });
  return g0 + pairwise_sum(terms);
}

double xpa_log_series_value(const Symbol& g_in, double p, const DiskGrid& outer) {
  const Symbol g = radialized(g_in);
  const double g0 = std::pow(std::abs(g.value_at(0.0)), p);
  const auto& nodes = outer.nodes();
  std::vector<double> terms(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t i) {
    const auto& nd = nodes[i];
    const double oms = one_minus_sq(nd.delta);
    const double iv = xpa_series_inner(g, 0.0, nd.z, 1e-10);
    const double logw = std::pow(1.0 - std::log(nd.delta), 0.25 * p);
    terms[i] = nd.w * std::pow(iv, 0.5 * p) * logw * std::pow(oms, p - 2.0);
  });
  return g0 + (p - 1.0) * pairwise_sum(terms);
}

double xpa_series_monomial(int j, double p, double alpha, const RadialGrid& outer) {
  if (j < 1) throw std::invalid_argument("xpa_series_monomial: j >= 1");
  // I_j(s) = j^2 sum_k binom_k(1+alpha)^2 moment(k+j-1, alpha) s^k
  const double smax = outer.smax;
  std::vector<double> A;
  double beta = 1.0;
  double moment = (alpha + 1.0) * std::exp(lbeta(double(j), alpha + 1.0));  // moment(j-1, alpha)
  double acc_scale = 0.0;
  for (long k = 0; k < 100000000; ++k) {
    const double a_k = beta * beta * moment;
    A.push_back(a_k);
    acc_scale += a_k * std::pow(smax, double(k));
    const double br = (1.0 + alpha + k) / (k + 1.0);
    const double rho = smax * br * br;
    if (rho < 1.0 && a_k * std::pow(smax, double(k)) * rho / (1.0 - rho) < 1e-14 * acc_scale)
      break;
    beta *= br;
    moment *= (k + j) / (k + j + alpha + 1.0);
  }
  const double j2 = double(j) * double(j);
  return outer.integrate([&](const RadialGrid::Node& nd) {
    double I = 0.0, sk = 1.0;
    for (std::size_t k = 0; k < A.size(); ++k) {
      const double t = A[k] * sk;
      I += t;
      if (k > 4 && t < 1e-16 * I) break;
      sk *= nd.s;
    }
    I *= j2;
    const double oms = nd.delta;  // 1 - s
    return std::pow(std::pow(oms, alpha) * I, 0.5 * p) * std::pow(oms, p - 2.0);
  });
}

double xpa_series_monomial_extrap(int j, double p, double alpha, int clip_log2) {
  // all three extrapolation clips must sit past the 1/j boundary crossover,
  // otherwise the geometric tail model sees the regime change
  clip_log2 = std::max(clip_log2, static_cast<int>(std::ceil(std::log2(j + 1.0))) + 10);
  auto val = [&](int c) { return xpa_series_monomial(j, p, alpha, RadialGrid::make(c, 3, 8)); };
  const double v0 = val(std::max(2, clip_log2 - 8));
  const double v1 = val(std::max(3, clip_log2 - 4));
  const double v2 = val(clip_log2);
  const double d0 = v1 - v0, d1 = v2 - v1;
  double rho = d0 != 0.0 ? d1 / d0 : 0.0;
  rho = std::clamp(rho, 0.0, 0.95);
  return v2 + d1 * rho / (1.0 - rho);
}

double bplog_series_kernel_power(double gamma, double p, double log_power, double a) {
  if (!(a >= 0.0) || !(a < 1.0)) throw std::domain_error("bplog_series_kernel_power: a in [0,1)");
  // Phi(x) = angular average of |1-a z|^{-(gamma+1)p} at x = (a|z|)^2
  const double c = 0.5 * (gamma + 1.0) * p;
  const double xmax = a * a;
  std::vector<double> D;
  double beta = 1.0, scale = 0.0;
  for (long m = 0; m < 100000000; ++m) {
    D.push_back(beta * beta);
    scale += beta * beta * std::pow(xmax, double(m));
    const double br = (m + c) / (m + 1.0);
    const double rho = xmax * std::max(1.0, br * br);
    if (rho < 1.0 && beta * beta * std::pow(xmax, double(m)) * rho / (1.0 - rho) < 1e-14 * scale)
      break;
    beta *= br;
  }
  const int clip = std::max(30, 3 * static_cast<int>(std::ceil(-std::log2(1.0 - a))));
  RadialGrid grid = RadialGrid::make(std::min(clip, 46), 2, 8);
  const double pref = std::pow(gamma * a, p);
  const double val = grid.integrate([&](const RadialGrid::Node& nd) {
    const double x = xmax * nd.s;
    double Phi = 0.0, xm = 1.0;
    for (std::size_t m = 0; m < D.size(); ++m) {
      const double t = D[m] * xm;
      Phi += t;
      if (m > 4 && t < 1e-16 * Phi) break;
      xm *= x;
    }
    const double delta_r = nd.delta / (1.0 + std::sqrt(nd.s));  // 1 - r
    const double logw = std::pow(1.0 - std::log(delta_r), log_power);
    return Phi * std::pow(nd.delta, p - 2.0) * logw;
  });
  return pref * val;  // |g_a(0)|^p = 1 excluded: callers add if needed
}

double xpmu_series_point_mass(double a, double q, double alpha) {
  const double t = 0.5 * alpha * q + q - 2.0;
  return kernel_radial_series((1.0 + alpha) * q, t, a);
}

// ---------------------------------------------------------------------------
// integral estimates (Lemma-type ratio reports)
// ---------------------------------------------------------------------------

RatioReport validate_ict(double c, double t, const std::vector<double>& radii,
                         const GridParams& grid) {
  if (!(c >= 0.0)) throw std::invalid_argument("validate_ict: c >= 0");
  if (!(t > -1.0)) throw std::invalid_argument("validate_ict: t > -1");
  DiskGrid G = DiskGrid::boundary_focused(grid);
  RatioReport rep;
  rep.min_ratio = 1e300;
  rep.max_ratio = 0.0;
  for (double r : radii) {
    if (!(r >= 0.0) || !(r < 1.0)) throw std::domain_error("validate_ict: |z| in [0,1)");
    const double e = -(2.0 + t + c) * 0.5;
    const double I = G.integrate([&](const DiskGrid::Node& nd) {
      const double oms = one_minus_sq(nd.delta);
      return std::pow(oms, t) * std::pow(std::norm(1.0 - r * nd.z), e);
    });
    RatioRow row;
    row.x = r;
    row.lhs = I;
    const double s = r * r;
    row.comparison = c > 0.0 ? std::pow(1.0 - s, -c) : 1.0 - std::log1p(-s);
    row.ratio = I / row.comparison;
    rep.rows.push_back(row);
    rep.min_ratio = std::min(rep.min_ratio, row.ratio);
    rep.max_ratio = std::max(rep.max_ratio, row.ratio);
  }
  return rep;
}

RatioReport validate_li2(double s, double r, double t, const std::vector<double>& radii,
                         const GridParams& grid) {
  if (!(s > -1.0) || !(r > 0.0) || !(t > 0.0) || !(r + t - s > 2.0) || !(t < s + 2.0) ||
      !(s + 2.0 < r))
    throw std::invalid_argument("validate_li2: need s > -1, r,t > 0, r+t-s > 2, t < s+2 < r");
  DiskGrid G = DiskGrid::boundary_focused(grid);
  RatioReport rep;
  rep.min_ratio = 1e300;
  rep.max_ratio = 0.0;
  for (double x : radii) {
    if (!(x >= 0.0) || !(x < 1.0)) throw std::domain_error("validate_li2: points in [0,1)");
    // sweep along a = z = x (the worst alignment of the two kernels)
    const double lhs = G.integrate([&](const DiskGrid::Node& nd) {
      const double oms = one_minus_sq(nd.delta);
      const double k = std::norm(1.0 - x * nd.z);
      return std::pow(oms, s) * std::pow(k, -0.5 * (r + t));
    });
    RatioRow row;
    row.x = x;
    row.lhs = lhs;
    const double omx = 1.0 - x * x;
    row.comparison = std::pow(omx, 2.0 + s - r) / std::pow(omx, t);  // |1-ax| = 1-x^2 at a=z=x
    row.ratio = lhs / row.comparison;
    rep.rows.push_back(row);
    rep.min_ratio = std::min(rep.min_ratio, row.ratio);
    rep.max_ratio = std::max(rep.max_ratio, row.ratio);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// named functionals
// ---------------------------------------------------------------------------

namespace {

// Clip-tail model: evaluate at clips C-8, C-4, C, fit the geometric decay of
// the per-step boundary contributions, and extrapolate past the clip.  The
// refined evaluation at C supplies the discretization part of the error.
template <typename MakeGrid, typename Eval>
EstimatedValue clip_extrapolated(MakeGrid&& make, Eval&& f, const GridParams& base, bool refine) {
  GridParams p0 = base, p1 = base;
  p0.clip_log2 = std::max(2, base.clip_log2 - 8);
  p1.clip_log2 = std::max(3, base.clip_log2 - 4);
  const double v0 = f(make(p0));
  const double v1 = f(make(p1));
  const double v2 = f(make(base));
  double vr = v2, refdiff = 0.0;
  if (refine) {
    vr = f(make(base).refined());
    refdiff = std::abs(vr - v2);
  }
  const double d0 = v1 - v0, d1 = v2 - v1;
  double rho = d0 != 0.0 ? d1 / d0 : 0.0;
  rho = std::clamp(rho, 0.0, 0.95);
  const double tail = d1 * rho / (1.0 - rho);
  EstimatedValue ev;
  ev.value = vr + tail;
  ev.error = refdiff + 0.5 * std::abs(tail) + 1e-15 * std::abs(vr);
  return ev;
}

template <typename F>
void apply_clip_sweep(NormResult& out, const GridParams& base, F&& eval_at_clip) {
  std::vector<double> vals;
  for (int e : divergence_clip_exponents()) {
    GridParams p = base;
    p.clip_log2 = e;
    vals.push_back(eval_at_clip(p));
  }
  SweepDecision d = divergence_decision(vals);
  out.sweep_values = d.values;
  out.diverging = d.diverging;
  out.growth_rate = d.growth_rate;
}

}  // namespace

NormResult bp_norm(const Symbol& g_in, double p, const NormOptions& opt) {
  if (!(p > 1.0)) throw std::invalid_argument("bp_norm: p > 1 required");
  const Symbol g = radialized(g_in);
  NormResult out;
  out.functional = "Bp";
  out.p = p;
  out.includes_g0 = opt.include_g0;
  out.clip = 1.0 - std::exp2(-opt.grid.clip_log2);
  auto make = [&](const GridParams& gp) { return grid_for_symbol(g, gp); };
  auto eval = [&](const DiskGrid& G) {
    return gprime_integral(g, p, G, [&](const DiskGrid::Node& nd) {
      return std::pow(one_minus_sq(nd.delta), p - 2.0);
    });
  };
  auto ev = clip_extrapolated(make, eval, opt.grid, opt.with_error);
  out.value = ev.value;
  out.error = ev.error;
  if (opt.include_g0) out.value += std::pow(std::abs(g.value_at(0.0)), p);
  if (g.kind() == SymbolKind::Monomial)
    out.oracle = bp_series_monomial(g.monomial_degree(), p);
  else if (g.kind() == SymbolKind::KernelPower && std::abs(g.kp_point()) <= 0.9 &&
           !opt.include_g0)
    out.oracle = bp_series_kernel_power(g.kp_gamma(), p, std::abs(g.kp_point()));
  if (opt.sweep_clips)
    apply_clip_sweep(out, opt.grid, [&](const GridParams& gp) {
      return eval(grid_for_symbol(g, gp));
    });
  return out;
}

NormResult bplog_norm(const Symbol& g_in, double p, double log_power, const NormOptions& opt) {
  if (!(p > 1.0) || !(log_power > 0.0))
    throw std::invalid_argument("bplog_norm: p > 1 and log power > 0 required");
  const Symbol g = radialized(g_in);
  NormResult out;
  out.functional = "BpLog";
  out.p = p;
  out.log_power = log_power;
  out.includes_g0 = true;
  out.clip = 1.0 - std::exp2(-opt.grid.clip_log2);
  auto make = [&](const GridParams& gp) { return grid_for_symbol(g, gp); };
  auto eval = [&](const DiskGrid& G) {
    return gprime_integral(g, p, G, [&](const DiskGrid::Node& nd) {
      const double logw = std::pow(1.0 - std::log(nd.delta), log_power);
      return logw * std::pow(one_minus_sq(nd.delta), p - 2.0);
    });
  };
  auto ev = clip_extrapolated(make, eval, opt.grid, opt.with_error);
  out.value = ev.value + std::pow(std::abs(g.value_at(0.0)), p);
  out.error = ev.error;
  if (opt.sweep_clips)
    apply_clip_sweep(out, opt.grid, [&](const GridParams& gp) {
      return eval(grid_for_symbol(g, gp));
    });
  return out;
}

NormResult dl_norm(const Symbol& g_in, const NormOptions& opt) {
  const Symbol g = radialized(g_in);
  NormResult out;
  out.functional = "DL";
  out.p = 2.0;
  out.clip = 1.0 - std::exp2(-opt.grid.clip_log2);
  auto make = [&](const GridParams& gp) { return grid_for_symbol(g, gp); };
  auto eval = [&](const DiskGrid& G) {
    return gprime_integral(g, 2.0, G, [&](const DiskGrid::Node& nd) {
      return 1.0 - std::log(one_minus_sq(nd.delta));
    });
  };
  auto ev = clip_extrapolated(make, eval, opt.grid, opt.with_error);
  out.value = ev.value;
  out.error = ev.error;
  if (g.kind() != SymbolKind::LogLog &&
      !(g.kind() == SymbolKind::KernelPower && std::abs(g.kp_point()) > 0.9))
    out.oracle = dl_series(g);
  if (opt.sweep_clips)
    apply_clip_sweep(out, opt.grid, [&](const GridParams& gp) {
      return eval(grid_for_symbol(g, gp));
    });
  return out;
}

namespace {

// shared scaffolding for the nested X functionals: hoisted inner cache,
// outer clip extrapolation, optional joint (inner+outer) refinement
template <typename OuterTerm>
EstimatedValue nested_extrapolated(const Symbol& g, double alpha_inner, const NormOptions& opt,
                                   OuterTerm&& term) {
  DiskGrid inner = grid_for_symbol(g, opt.inner);
  InnerCache cache = make_inner_cache(g, alpha_inner, inner);
  auto eval = [&](const DiskGrid& outer, const InnerCache& c) {
    return outer.integrate([&](const DiskGrid::Node& nd) {
      return term(nd, inner_from_cache(c, alpha_inner, nd.z));
    });
  };
  GridParams p0 = opt.grid, p1 = opt.grid;
  p0.clip_log2 = std::max(2, opt.grid.clip_log2 - 8);
  p1.clip_log2 = std::max(3, opt.grid.clip_log2 - 4);
  const double v0 = eval(grid_for_symbol(g, p0), cache);
  const double v1 = eval(grid_for_symbol(g, p1), cache);
  const double v2 = eval(grid_for_symbol(g, opt.grid), cache);
  double vr = v2, refdiff = 0.0;
  if (opt.with_error) {
    DiskGrid inner_f = grid_for_symbol(g, opt.inner.refined());
    InnerCache cache_f = make_inner_cache(g, alpha_inner, inner_f);
    vr = eval(grid_for_symbol(g, opt.grid.refined()), cache_f);
    refdiff = std::abs(vr - v2);
  }
  const double d0 = v1 - v0, d1 = v2 - v1;
  double rho = d0 != 0.0 ? d1 / d0 : 0.0;
  rho = std::clamp(rho, 0.0, 0.95);
  const double tail = d1 * rho / (1.0 - rho);
  EstimatedValue ev;
  ev.value = vr + tail;
  ev.error = refdiff + 0.5 * std::abs(tail) + 1e-15 * std::abs(vr);
  return ev;
}

}  // namespace

NormResult xpa_norm(const Symbol& g_in, double p, double alpha, const NormOptions& opt) {
  if (!(p > 1.0)) throw std::invalid_argument("xpa_norm: p > 1 required");
  if (!(alpha >= 0.0)) throw std::invalid_argument("xpa_norm: alpha >= 0 required");
  const Symbol g = radialized(g_in);
  NormResult out;
  out.functional = "Xpa";
  out.p = p;
  out.alpha = alpha;
  out.includes_g0 = true;
  out.clip = 1.0 - std::exp2(-opt.grid.clip_log2);
  auto ev = nested_extrapolated(g, alpha, opt, [&](const DiskGrid::Node& nd, double iv) {
    const double oms = one_minus_sq(nd.delta);
    return std::pow(std::pow(oms, alpha) * iv, 0.5 * p) * std::pow(oms, p - 2.0);
  });
  out.value = ev.value + std::pow(std::abs(g.value_at(0.0)), p);
  out.error = ev.error;
  if (p == 2.0 && g.kind() != SymbolKind::LogLog) {
    if (g.kind() == SymbolKind::KernelPower)
      out.oracle = alpha == 0.0 ? std::optional<double>(x20_series(g)) : std::nullopt;
    else
      out.oracle = x2a_series(g, alpha);
  } else if (g.kind() == SymbolKind::Monomial) {
    out.oracle = xpa_series_monomial_extrap(g.monomial_degree(), p, alpha);
  }
  return out;
}

NormResult xpa_log_norm(const Symbol& g_in, double p, const NormOptions& opt) {
  if (!(p > 2.0) || !(p <= 4.0))
    throw std::invalid_argument("xpa_log_norm: p in (2,4] required");
  const Symbol g = radialized(g_in);
  NormResult out;
  out.functional = "Xp0Log";
  out.p = p;
  out.log_power = 0.25 * p;
  out.includes_g0 = true;
  out.clip = 1.0 - std::exp2(-opt.grid.clip_log2);
  auto ev = nested_extrapolated(g, 0.0, opt, [&](const DiskGrid::Node& nd, double iv) {
    const double oms = one_minus_sq(nd.delta);
    const double logw = std::pow(1.0 - std::log(nd.delta), 0.25 * p);
    return (p - 1.0) * std::pow(iv, 0.5 * p) * logw * std::pow(oms, p - 2.0);
  });
  out.value = ev.value + std::pow(std::abs(g.value_at(0.0)), p);
  out.error = ev.error;
  return out;
}

NormResult xpa_measure(const MeasureRep& mu, double p, double alpha, const NormOptions& opt,
                       const DiskGrid* measure_grid) {
  if (!(p > 0.0)) throw std::invalid_argument("xpa_measure: p > 0 required");
  mu.validate();
  NormResult out;
  out.functional = "XpaMu";
  out.p = p;
  out.alpha = alpha;
  auto inner_at = [&](cplx w) {
    const cplx wbar = std::conj(w);
    const double e = -(1.0 + alpha);
    double acc = 0.0;
    switch (mu.kind) {
      case MeasureKind::Atomic:
        for (const auto& [z, wt] : mu.atoms)
          acc += wt * std::pow(std::norm(1.0 - wbar * z), e);
        break;
      case MeasureKind::RadialDensity:
      case MeasureKind::GridDensity: {
        if (measure_grid == nullptr)
          throw std::invalid_argument("xpa_measure: density measures need measure_grid");
        const auto& nodes = measure_grid->nodes();
        for (std::size_t i = 0; i < nodes.size(); ++i) {
          const double f = mu.kind == MeasureKind::RadialDensity
                               ? mu.radial_density_at(std::abs(nodes[i].z))
                               : mu.grid_values[i];
          if (f != 0.0)
            acc += nodes[i].w * f * std::pow(std::norm(1.0 - wbar * nodes[i].z), e);
        }
        break;
      }
    }
    return acc;
  };
  auto eval = [&](const DiskGrid& G) {
    return G.integrate([&](const DiskGrid::Node& nd) {
      const double oms = one_minus_sq(nd.delta);
      return std::pow(std::pow(oms, alpha) * inner_at(nd.z), 0.5 * p) * std::pow(oms, p - 2.0);
    });
  };
  // atoms aligned near the positive real axis benefit from the focused grid
  bool focused = mu.kind == MeasureKind::Atomic;
  for (const auto& [z, wt] : mu.atoms)
    if (std::abs(std::arg(z + cplx(1e-300, 0.0))) > 0.3) focused = false;
  auto make = [&](const GridParams& gp) {
    return focused ? DiskGrid::boundary_focused(gp) : DiskGrid::uniform(gp);
  };
  out.clip = 1.0 - std::exp2(-opt.grid.clip_log2);
  auto ev = clip_extrapolated(make, eval, opt.grid, opt.with_error);
  out.value = ev.value;
  out.error = ev.error;
  if (opt.sweep_clips)
    apply_clip_sweep(out, opt.grid, [&](const GridParams& gp) { return eval(make(gp)); });
  return out;
}

GaRow ga_norm_row(double gamma, double p, double a, unsigned mask) {
  GaRow row;
  row.a = a;
  row.bp = row.xp0 = row.bplog = row.xp0log = std::nan("");
  const Symbol g = Symbol::kernel_power(a, gamma);
  if (mask & GaBp) row.bp = bp_series_kernel_power(gamma, p, a);
  if (mask & GaBpLog) row.bplog = 1.0 + bplog_series_kernel_power(gamma, p, 0.5 * p, a);
  if (mask & GaXp0) {
    if (p == 2.0) {
      row.xp0 = x20_series(g);
    } else if (1.0 - a >= std::exp2(-9)) {
      GridParams gp;
      gp.clip_log2 = std::max(16, 2 * static_cast<int>(std::ceil(-std::log2(1.0 - a))));
      gp.rings_per_octave = 2;
      gp.panel_nodes = 4;
      row.xp0 = xpa_series_value(g, p, 0.0, DiskGrid::boundary_focused(gp));
    }
  }
  if (mask & GaXp0Log) {
    if (1.0 - a >= std::exp2(-9)) {
      GridParams gp;
      gp.clip_log2 = std::max(16, 2 * static_cast<int>(std::ceil(-std::log2(1.0 - a))));
      row.xp0log = xpa_log_series_value(g, p, DiskGrid::boundary_focused(gp));
    }
  }
  return row;
}

SweepDecision clip_sweep(const std::function<double(int)>& eval) {
  std::vector<double> vals;
  for (int e : divergence_clip_exponents()) vals.push_back(eval(e));
  return divergence_decision(vals);
}

}  // namespace disklab
