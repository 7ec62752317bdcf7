#include <cmath>

#include "disklab/norms.hpp"
#include "doctest.h"

using namespace disklab;

namespace {
constexpr double kPiSq6 = 1.6449340668482264;

GridParams small_uniform() {
  GridParams p;
  p.clip_log2 = 10;
  p.rings_per_octave = 2;
  p.radial_nodes = 3;
  p.angular_factor = 0.5;
  p.angular_min = 16;
  p.angular_cap = 96;
  return p;
}
}  // namespace

TEST_CASE("grid weight normalization and nonnegativity") {
  GridParams p;
  for (int clip : {8, 12}) {
    p.clip_log2 = clip;
    DiskGrid g = DiskGrid::uniform(p);
    CHECK(std::abs(g.weight_sum() - g.clip() * g.clip()) <= 1e-12);
    for (const auto& nd : g.nodes()) CHECK(nd.w > 0.0);
  }
}

TEST_CASE("bp_norm basics") {
  // g = z^2, p = 2: int |2z|^2 dA = 2
  auto r = bp_norm(Symbol::monomial(2), 2.0);
  CHECK(std::abs(r.value - 2.0) <= std::max(2.0 * r.error, 1e-3));
  REQUIRE(r.oracle.has_value());
  CHECK(*r.oracle == doctest::Approx(2.0).epsilon(1e-14));

  // constants have zero seminorm
  CHECK(bp_norm(Symbol::constant(5.0), 1.5).value == 0.0);

  // closed-form Beta value for monomials: j^p B((j-1)p/2 + 1, p-1)
  for (int j : {1, 3, 8})
    for (double p : {1.5, 2.0, 3.0}) {
      auto rr = bp_norm(Symbol::monomial(j), p);
      const double beta = std::pow(double(j), p) *
                          std::exp(lbeta(0.5 * (j - 1.0) * p + 1.0, p - 1.0));
      CHECK(std::abs(rr.value - beta) <= std::max(5.0 * rr.error, 1e-6 * beta));
    }

  // kernel-power value against the series oracle
  auto kp = bp_norm(Symbol::kernel_power(0.7, 1.5), 2.5);
  REQUIRE(kp.oracle.has_value());
  CHECK(std::abs(kp.value - *kp.oracle) <= std::max(5.0 * kp.error, 2e-4 * *kp.oracle));

  CHECK_THROWS_AS(bp_norm(Symbol::monomial(1), 1.0), std::invalid_argument);
}

TEST_CASE("dl_norm and the HS identity") {
  // dl(z) = int log(e/(1-|z|^2)) dA = 2, which is also ||T_z||_{S_2(D)}^2
  NormOptions deep;
  deep.grid.clip_log2 = 20;
  auto r = dl_norm(Symbol::monomial(1), deep);
  CHECK(r.value == doctest::Approx(2.0).epsilon(2e-5));
  REQUIRE(r.oracle.has_value());
  CHECK(*r.oracle == doctest::Approx(2.0).epsilon(1e-14));

  // degree <= 8 polynomial: quadrature matches the closed form to 1e-4
  auto g = Symbol::taylor({cplx(0.0), cplx(1.0), cplx(-0.5), cplx(0.0), cplx(0.25),
                           cplx(0.0), cplx(0.0), cplx(1.0 / 3.0), cplx(-0.125)});
  auto rg = dl_norm(g, deep);
  REQUIRE(rg.oracle.has_value());
  CHECK(std::abs(rg.value - *rg.oracle) / *rg.oracle < 1e-4);
}

TEST_CASE("bplog_norm") {
  // constant: the integral part vanishes
  auto rc = bplog_norm(Symbol::constant(2.0), 1.5, 0.75);
  CHECK(rc.value == doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-12));

  // kernel power against the 1-D profile series
  const double gamma = 1.0, p = 1.5, a = 0.8;
  auto r = bplog_norm(Symbol::kernel_power(a, gamma), p, 0.5 * p);
  const double oracle = 1.0 + bplog_series_kernel_power(gamma, p, 0.5 * p, a);
  CHECK(std::abs(r.value - oracle) <= std::max(5.0 * r.error, 2e-3 * oracle));
}

TEST_CASE("xpa_norm worked value and oracles") {
  // g = z, p = 2, alpha = 1: 2 sum 1/(m+2)^2 = 2 (pi^2/6 - 1)
  const double target = 2.0 * (kPiSq6 - 1.0);
  NormOptions opt;
  opt.grid = small_uniform();
  opt.inner = small_uniform();
  auto r = xpa_norm(Symbol::monomial(1), 2.0, 1.0, opt);
  CHECK(std::abs(r.value - target) <= std::max(5.0 * r.error, 2e-3 * target));
  REQUIRE(r.oracle.has_value());
  CHECK(*r.oracle == doctest::Approx(target).epsilon(1e-8));

  // constant symbol: |g(0)|^p
  NormOptions fast;
  fast.grid = small_uniform();
  fast.inner = small_uniform();
  fast.with_error = false;
  auto rc = xpa_norm(Symbol::constant(2.0), 2.0, 0.5, fast);
  CHECK(rc.value == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("xpa nested quadrature agrees with the exact-inner series route") {
  // shallow outer clip keeps kernel spikes resolvable by the inner grid;
  // evaluating the series oracle on the identical outer grid isolates the
  // inner-quadrature error
  GridParams outer_p = small_uniform();
  outer_p.clip_log2 = 8;
  GridParams inner_p;
  inner_p.clip_log2 = 12;
  inner_p.radial_nodes = 4;
  inner_p.angular_factor = 3.0;
  inner_p.angular_min = 32;
  inner_p.angular_cap = 512;

  NormOptions opt;
  opt.grid = outer_p;
  opt.inner = inner_p;
  opt.with_error = false;

  const DiskGrid outer = DiskGrid::uniform(outer_p);
  const DiskGrid inner = DiskGrid::uniform(inner_p);

  const std::vector<Symbol> symbols = {Symbol::monomial(1), Symbol::monomial(2),
                                       Symbol::kernel_power(0.5, 1.0)};
  for (const Symbol& g : symbols)
    for (double p : {1.5, 2.0, 3.0})
      for (double alpha : {0.5, 1.0}) {
        const double nested = xpa_nested_raw(g, p, alpha, outer, inner);
        const double series = xpa_series_value(g, p, alpha, outer);
        CHECK(std::abs(nested - series) <= 5e-3 * series);
      }

  // fully independent exact values at p = 2
  for (double alpha : {0.5, 1.0}) {
    NormOptions wide = opt;
    wide.grid.clip_log2 = 12;
    auto r = xpa_norm(Symbol::monomial(2), 2.0, alpha, wide);
    const double exact = x2a_series(Symbol::monomial(2), alpha);
    REQUIRE(r.oracle.has_value());
    CHECK(*r.oracle == doctest::Approx(exact).epsilon(1e-12));
    CHECK(std::abs(r.value - exact) <= std::max(5.0 * r.error, 5e-3 * exact));
  }
}

TEST_CASE("xpa monomial radial route matches the 2-D series route") {
  const RadialGrid radial = RadialGrid::make(11, 3, 8);  // s-clip of a radius-clip-12 disk
  GridParams gp = small_uniform();
  gp.clip_log2 = 12;
  const DiskGrid outer = DiskGrid::uniform(gp);
  for (int j : {1, 4})
    for (double p : {1.5, 2.0})
      for (double alpha : {0.0, 0.5}) {
        const double radial_val = xpa_series_monomial(j, p, alpha, radial);
        const double disk_val = xpa_series_value(Symbol::monomial(j), p, alpha, outer);
        CHECK(std::abs(radial_val - disk_val) <= 3e-3 * disk_val);
      }
  // extrapolated radial route against the exact full-disk value at p = 2
  for (double alpha : {0.0, 0.5, 1.0}) {
    const double ex = x2a_series(Symbol::monomial(3), alpha);
    CHECK(xpa_series_monomial_extrap(3, 2.0, alpha) == doctest::Approx(ex).epsilon(2e-3));
  }
}

TEST_CASE("xpa_measure") {
  NormOptions opt;
  opt.grid = small_uniform();
  // mu = 0
  CHECK(xpa_measure(MeasureRep::atomic({}), 2.0, 1.0, opt).value == 0.0);

  // mu = delta_0, alpha = 1, p = 2: int (1-|w|^2) dA = 1/2
  auto r = xpa_measure(MeasureRep::atomic({{cplx(0.0), 1.0}}), 2.0, 1.0, opt);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-6));

  // point-mass series helper agrees with quadrature
  NormOptions fine;
  fine.grid.clip_log2 = 16;
  auto rq = xpa_measure(MeasureRep::atomic({{cplx(0.6, 0.0), 1.0}}), 1.2, 0.5, fine);
  const double series = xpmu_series_point_mass(0.6, 1.2, 0.5);
  CHECK(std::abs(rq.value - series) <= std::max(5.0 * rq.error, 2e-3 * series));

  CHECK_THROWS_AS(
      xpa_measure(MeasureRep::atomic({{cplx(0.0), 1.0}}), 0.0, 1.0, opt),
      std::invalid_argument);
}

TEST_CASE("validate_ict") {
  GridParams gp;
  gp.clip_log2 = 30;  // the z = 0 value must hit 1e-8: the clip tail is 2^-clip
  gp.panel_nodes = 6;

  // I_{c,t}(0) = 1/(t+1)
  for (auto [c, t] : std::vector<std::pair<double, double>>{{0.0, 0.0}, {1.0, 0.0}, {2.0, 1.0}}) {
    auto rep = validate_ict(c, t, {0.0}, gp);
    CHECK(std::abs(rep.rows[0].lhs - 1.0 / (t + 1.0)) <= 1e-8);
  }

  std::vector<double> radii;
  for (int i = 0; i <= 24; ++i) radii.push_back(0.99 * i / 24.0);

  // c=1, t=0: ratio window bounded on [0, 0.99]
  auto r10 = validate_ict(1.0, 0.0, radii, gp);
  CHECK(r10.min_ratio > 0.2);
  CHECK(r10.max_ratio < 5.0);

  // c=0, t=0: I / log(e/(1-|z|^2)) stays in a bounded window; the exact
  // ratio at |z|^2 = s is -log(1-s)/(s (1 - log(1-s)))
  auto r00 = validate_ict(0.0, 0.0, radii, gp);
  CHECK(r00.min_ratio > 0.2);
  CHECK(r00.max_ratio < 5.0);
  {
    const double s = 0.99 * 0.99;
    const double exact = -std::log1p(-s) / (s * (1.0 - std::log1p(-s)));
    CHECK(r00.rows.back().ratio == doctest::Approx(exact).epsilon(1e-3));
  }

  // quadrature vs the exact series on sample radii
  for (double r : {0.3, 0.8, 0.95}) {
    auto rep = validate_ict(1.0, 0.5, {r}, gp);
    const double exact = kernel_radial_series(2.0 + 0.5 + 1.0, 0.5, r);
    CHECK(rep.rows[0].lhs == doctest::Approx(exact).epsilon(2e-4));
  }

  CHECK_THROWS_AS(validate_ict(1.0, -1.0, {0.5}, gp), std::invalid_argument);
}

TEST_CASE("validate_li2") {
  GridParams gp;
  gp.clip_log2 = 30;
  gp.panel_nodes = 6;

  // a = z = 0: LHS = 1/(s+1), RHS = 1
  auto rep0 = validate_li2(0.0, 3.0, 1.0, {0.0}, gp);
  CHECK(rep0.rows[0].lhs == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rep0.rows[0].ratio == doctest::Approx(1.0).epsilon(1e-6));

  // s=0, r=3, t=1 sweep: one-sided bound => finite max ratio
  std::vector<double> radii;
  for (int i = 0; i <= 19; ++i) radii.push_back(0.95 * i / 19.0);
  auto rep = validate_li2(0.0, 3.0, 1.0, radii, gp);
  CHECK(rep.max_ratio < 20.0);

  // degenerate t -> s+2 boundary rejected
  CHECK_THROWS_AS(validate_li2(0.0, 3.0, 2.0, {0.5}, gp), std::invalid_argument);
  CHECK_THROWS_AS(validate_li2(0.0, 1.5, 1.0, {0.5}, gp), std::invalid_argument);
}

TEST_CASE("kernel-power suite rows") {
  // a = 0: g_0 is constant, all integral parts vanish
  auto row0 = ga_norm_row(1.0, 2.0, 0.0, GaBp | GaXp0 | GaBpLog);
  CHECK(row0.bp == 0.0);
  CHECK(row0.xp0 == doctest::Approx(1.0).epsilon(1e-14));    // |g(0)|^2
  CHECK(row0.bplog == doctest::Approx(1.0).epsilon(1e-14));  // |g(0)|^p

  // X^p_0 column via quadrature at p != 2 against the p = 2 exact route
  auto row = ga_norm_row(1.0, 2.0, 0.9, GaBp | GaXp0 | GaBpLog | GaXp0Log);
  CHECK(row.bp > 0.0);
  CHECK(row.xp0 > 0.0);
  CHECK(row.bplog > 0.0);
  const double exact = x20_series(Symbol::kernel_power(0.9, 1.0));
  CHECK(row.xp0 == doctest::Approx(exact).epsilon(5e-3));
}

TEST_CASE("loglog counterexample: divergence flags") {
  // quick version of the acceptance probe at reduced depth: dl grows ~10%
  // per clip step while bp at p = 2 stabilizes
  NormOptions opt;
  opt.sweep_clips = true;
  opt.with_error = false;
  auto dl = dl_norm(Symbol::log_log(), opt);
  CHECK(dl.diverging);
  auto bp = bp_norm(Symbol::log_log(), 2.0, opt);
  CHECK_FALSE(bp.diverging);
}

TEST_CASE("X = B_p comparability window on monomials when p(1-alpha) < 2") {
  const double p = 2.0, alpha = 0.5;  // p(1-alpha) = 1 < 2
  const RadialGrid radial = RadialGrid::make(14, 3, 8);
  double lo = 1e300, hi = 0.0;
  for (int j = 2; j <= 256; j *= 2) {
    const double x = std::pow(xpa_series_monomial(j, p, alpha, radial), 1.0 / p);
    const double b = std::pow(bp_series_monomial(j, p), 1.0 / p);
    const double ratio = x / b;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK(hi / lo < 10.0);
}
