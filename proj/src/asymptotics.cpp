#include "disklab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace disklab {

namespace {

struct LS {  // simple 1-regressor least squares y = a x + b
  double a = 0.0, b = 0.0;
};

LS linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LS r;
  const double det = n * sxx - sx * sx;
  r.a = det != 0.0 ? (n * sxy - sx * sy) / det : 0.0;
  r.b = (sy - r.a * sx) / n;
  return r;
}

}  // namespace

GrowthFit fit_power_log(const std::vector<double>& xs, const std::vector<double>& ys,
                        FitScale scale, bool with_log_factor,
                        std::optional<double> fix_exponent) {
  if (xs.size() != ys.size() || xs.size() < 6)
    throw std::invalid_argument("fit_power_log: need >= 6 samples");
  const std::size_t n = xs.size();
  std::vector<double> u(n), v(n), lu(n);  // u = log-scale regressor, lu = log-log regressor
  for (std::size_t i = 0; i < n; ++i) {
    if (!(ys[i] > 0.0)) throw std::invalid_argument("fit_power_log: samples must be positive");
    double t;
    if (scale == FitScale::Power) {
      if (!(xs[i] > 0.0)) throw std::invalid_argument("fit_power_log: x must be positive");
      t = xs[i];
      lu[i] = std::log(std::log(xs[i] + 1.0));
    } else {
      if (!(xs[i] >= 0.0) || !(xs[i] < 1.0))
        throw std::invalid_argument("fit_power_log: boundary scale needs x in [0,1)");
      t = 1.0 / (1.0 - xs[i]);
      lu[i] = std::log(1.0 + std::log(t));  // log log(e/(1-x))
    }
    u[i] = std::log(t);
    v[i] = std::log(ys[i]);
  }
  const double span = *std::max_element(u.begin(), u.end()) -
                      *std::min_element(u.begin(), u.end());
  if (span < 2.0 * std::log(10.0) * 0.99)
    throw std::invalid_argument("fit_power_log: samples must span >= 2 decades");

  double e = fix_exponent.value_or(0.0);
  double m = 0.0, c = 0.0;

  if (fix_exponent) {
    if (with_log_factor) {
      std::vector<double> rr(n);
      for (std::size_t i = 0; i < n; ++i) rr[i] = v[i] - e * u[i];
      LS f = linear_fit(lu, rr);
      m = f.a;
      c = f.b;
    } else {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += v[i] - e * u[i];
      c = s / n;
    }
  } else if (!with_log_factor) {
    LS f = linear_fit(u, v);
    e = f.a;
    c = f.b;
  } else {
    // joint normal equations for v = e u + m lu + c; the regressors are
    // correlated, but three decades keep the 3x3 system well conditioned
    double A[3][4] = {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}};
    for (std::size_t i = 0; i < n; ++i) {
      const double row[3] = {u[i], lu[i], 1.0};
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) A[a][b] += row[a] * row[b];
        A[a][3] += row[a] * v[i];
      }
    }
    for (int col = 0; col < 3; ++col) {  // partial-pivot elimination
      int piv = col;
      for (int rI = col + 1; rI < 3; ++rI)
        if (std::abs(A[rI][col]) > std::abs(A[piv][col])) piv = rI;
      std::swap(A[col], A[piv]);
      if (A[col][col] == 0.0) throw std::runtime_error("fit_power_log: degenerate regressors");
      for (int rI = 0; rI < 3; ++rI) {
        if (rI == col) continue;
        const double f = A[rI][col] / A[col][col];
        for (int b = col; b < 4; ++b) A[rI][b] -= f * A[col][b];
      }
    }
    e = A[0][3] / A[0][0];
    m = A[1][3] / A[1][1];
    c = A[2][3] / A[2][2];
  }

  GrowthFit out;
  out.scale = scale;
  out.exponent = e;
  out.log_power = with_log_factor ? m : 0.0;
  out.c = c;
  out.x_min = *std::min_element(xs.begin(), xs.end());
  out.x_max = *std::max_element(xs.begin(), xs.end());
  double ss_res = 0.0, ss_tot = 0.0, vbar = 0.0;
  for (double vi : v) vbar += vi;
  vbar /= n;
  out.window_min = 1e300;
  out.window_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double model = e * u[i] + out.log_power * lu[i] + c;
    ss_res += (v[i] - model) * (v[i] - model);
    ss_tot += (v[i] - vbar) * (v[i] - vbar);
    const double ratio = std::exp(v[i] - model);
    out.window_min = std::min(out.window_min, ratio);
    out.window_max = std::max(out.window_max, ratio);
  }
  out.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return out;
}

RegimeReport regime_report(double alpha, double p) {
  if (!(alpha >= 0.0) || !(p > 0.0))
    throw std::invalid_argument("regime_report: alpha >= 0 and p > 0 required");
  RegimeReport rep;
  rep.alpha = alpha;
  rep.p = p;
  const double q = p * (1.0 - alpha);

  if (q < 2.0) {
    rep.monomial = MonomialRegime::PowerOneOverP;
    rep.predicted_exponent = 1.0 / p;
    rep.predicted_log_power = 0.0;
  } else if (q == 2.0) {
    rep.monomial = MonomialRegime::LogBoundary;
    rep.predicted_exponent = 1.0 / p;
    rep.predicted_log_power = 1.0 / p;
  } else {
    rep.monomial = MonomialRegime::PowerHalfOneMinusAlpha;
    rep.predicted_exponent = 0.5 * (1.0 - alpha);
    rep.predicted_log_power = 0.0;
  }

  std::ostringstream os;
  if (p <= 1.0) {
    rep.regime = TgRegime::ConstantsOnly;
    os << "S_p(D_alpha) contains T_g only for constant g (p <= 1)";
  } else if (alpha == 0.0) {
    rep.regime = TgRegime::DirichletAlphaZero;
    if (p < 2.0)
      os << "classical Dirichlet space: B_p necessary, B_{p,log^{p/2}} and X^p_0 sufficient";
    else if (p == 2.0)
      os << "classical Dirichlet space: exact DL (Hilbert-Schmidt) characterization";
    else if (p <= 4.0)
      os << "classical Dirichlet space: X^p_0 and B_{p,log^{p/2}} necessary, "
            "X^p_{0,log^{p/4}} sufficient";
    else
      os << "classical Dirichlet space, p > 4: only one-sided conditions known";
  } else if (q >= 4.0) {
    rep.regime = TgRegime::Open;
    os << "open region p(1-alpha) >= 4: X^p_{alpha-eps} sufficient only (exploratory)";
  } else if (q < 2.0 && alpha < 1.0) {
    rep.regime = TgRegime::BesovEqualsXpa;
    os << "X^p_alpha = B_p regime (p(1-alpha) < 2)";
  } else if (alpha >= 1.0) {
    rep.regime = TgRegime::BesovEqualsXpa;
    os << "alpha >= 1: Bergman/Hardy scale, S_p iff B_p (p > 1)";
  } else {
    rep.regime = TgRegime::XpaCharacterizes;
    os << "X^p_alpha characterizes S_p (2 <= p(1-alpha) < 4)";
  }
  rep.summary = os.str();
  return rep;
}

}  // namespace disklab
