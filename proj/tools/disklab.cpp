// disklab: spectra, norm functionals, and growth sweeps for integration,
// multiplication, and Toeplitz operators on weighted Dirichlet spaces.
//
// Subcommands: spectrum, sweep, frontier, validate.
// Exit codes: 0 ok, 1 property failure, 2 usage/validation, 3 numerical.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "disklab/io.hpp"

using namespace disklab;
namespace fs = std::filesystem;

namespace {

struct GlobalOpts {
  int threads = 0;
  std::string out_dir = ".";
  int clip = 12;
  int refine = 0;
};

GridParams grid_from(const GlobalOpts& g) {
  GridParams p;
  p.clip_log2 = g.clip;
  for (int i = 0; i < g.refine; ++i) p = p.refined();
  return p;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ','))
    if (!tok.empty()) out.push_back(std::stod(tok));
  return out;
}

struct Emitter {
  RunManifest manifest;
  fs::path dir;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  explicit Emitter(const std::string& out_dir, const std::string& command) {
    dir = out_dir;
    fs::create_directories(dir);
    manifest.command = command;
  }
  void config(const std::string& k, const std::string& v) { manifest.config[k] = v; }
  void emit(const std::string& name, const std::string& content) {
    const std::string path = (dir / name).string();
    manifest.outputs.emplace_back(name, write_file(path, content));
  }
  void finish() {
    manifest.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_file((dir / "manifest.json").string(), manifest.to_json());
  }
};

// ---------------------------------------------------------------------------

int cmd_spectrum(const GlobalOpts& g, const std::string& symbol_spec, double alpha,
                 const std::string& mode_str, int N, const std::string& plist,
                 const std::string& export_matrix) {
  Symbol sym = Symbol::parse(symbol_spec);
  SpaceParams sp{alpha, inner_product_from_string(mode_str)};
  sp.validate();
  if (N < 1) throw CLI::ValidationError("--n", "truncation must be >= 1");
  const std::vector<double> ps = parse_list(plist);
  if (ps.empty()) throw CLI::ValidationError("--p", "need at least one order");
  if (N > 3000) throw CLI::ValidationError("--n", "dense SVD capped at N = 3000");

  Emitter em(g.out_dir, "spectrum");
  em.config("symbol", symbol_spec);
  em.config("alpha", fmt17(alpha));
  em.config("mode", mode_str);
  em.config("n", std::to_string(N));
  em.config("p", plist);
  em.config("clip", std::to_string(g.clip));
  em.config("refine", std::to_string(g.refine));

  OperatorMatrix m = assemble_tg(sym, sp, N);
  if (m.zero_symbol) std::cerr << "warning: constant symbol, zero spectrum\n";
  Spectrum s = singular_values(m);

  // spectrum.csv with a closed-form cross-check column for monomials
  std::ostringstream csv;
  const bool monomial = sym.kind() == SymbolKind::Monomial;
  csv << (monomial ? "n,lambda_n,lambda_closed\n" : "n,lambda_n\n");
  if (monomial) {
    auto cf = monomial_spectrum_closed_form(sym.monomial_degree(), alpha, N, sp.mode);
    for (std::size_t i = 0; i < s.values.size(); ++i)
      csv << (i + 1) << "," << fmt17(s.values[i]) << ","
          << (i < cf.values.size() ? fmt17(cf.values[i]) : "") << "\n";
  } else {
    for (std::size_t i = 0; i < s.values.size(); ++i)
      csv << (i + 1) << "," << fmt17(s.values[i]) << "\n";
  }
  em.emit("spectrum.csv", csv.str());
  em.emit("schatten.json", schatten_json(s, ps));

  // cross-module comparison row: S_2^2 (= DL at alpha = 0, Integral mode)
  // against the DL / X^2_alpha functionals
  if (!m.zero_symbol && sym.kind() != SymbolKind::LogLog) {
    std::vector<std::pair<std::string, NormResult>> rows;
    NormOptions nopt;
    nopt.grid = grid_from(g);
    if (alpha == 0.0) {
      NormResult dl = dl_norm(sym, nopt);
      dl.oracle = s.power_sum(2.0);  // matrix-side HS mass for comparison
      rows.emplace_back(symbol_spec, dl);
    }
    NormOptions xopt;
    xopt.grid.clip_log2 = 10;
    xopt.grid.angular_cap = 96;
    xopt.grid.radial_nodes = 3;
    xopt.grid.angular_factor = 0.5;
    xopt.inner = xopt.grid;
    xopt.with_error = false;
    NormResult x = xpa_norm(sym, 2.0, alpha, xopt);
    x.oracle = s.power_sum(2.0);
    rows.emplace_back(symbol_spec, x);
    em.emit("comparison.csv", norm_table_csv(rows));
  }

  if (export_matrix == "csv") em.emit("matrix.csv", m.to_csv_triplets());
  if (export_matrix == "bin") em.emit("matrix.dlmx", m.to_binary());
  em.finish();
  return 0;
}

int cmd_sweep(const GlobalOpts& g, const std::string& family, double alpha, double p,
              double gamma, int kmin, int kmax) {
  Emitter em(g.out_dir, "sweep");
  em.config("family", family);
  em.config("alpha", fmt17(alpha));
  em.config("p", fmt17(p));
  em.config("gamma", fmt17(gamma));
  em.config("kmin", std::to_string(kmin));
  em.config("kmax", std::to_string(kmax));

  std::ostringstream csv;
  std::vector<double> xs, ys;
  if (family == "monomial") {
    csv << "j,schatten_norm,schatten_lo,schatten_hi,xpa_norm\n";
    const RadialGrid radial = RadialGrid::make(14, 3, 8);
    for (int k = kmin; k <= kmax; ++k) {
      const int j = 1 << k;
      auto r = monomial_schatten_power_sum(j, alpha, p);
      const double x = std::pow(xpa_series_monomial(j, p, alpha, radial), 1.0 / p);
      csv << j << "," << fmt17(r.norm) << "," << fmt17(r.lo) << "," << fmt17(r.hi) << ","
          << fmt17(x) << "\n";
      xs.push_back(j);
      ys.push_back(r.norm);
    }
    em.emit("sweep.csv", csv.str());
    auto fit = fit_power_log(xs, ys, FitScale::Power);
    em.emit("fit.json", fit_json(fit));
    auto rep = regime_report(alpha, p);
    std::ostringstream summary;
    summary << rep.summary << "\n"
            << "fitted exponent " << fmt17(fit.exponent) << " (predicted "
            << fmt17(rep.predicted_exponent) << "), log power " << fmt17(fit.log_power)
            << " (predicted " << fmt17(rep.predicted_log_power) << ")\n";
    em.emit("summary.txt", summary.str());
  } else if (family == "kernelpow") {
    csv << "a,bp_norm,bplog_norm,x20_norm,s2_norm\n";
    for (int k = kmin; k <= kmax; ++k) {
      const double a = 1.0 - std::exp2(-k);
      const Symbol ga = Symbol::kernel_power(a, gamma);
      const double bp = std::pow(bp_series_kernel_power(gamma, p, a), 1.0 / p);
      const double bplog =
          std::pow(1.0 + bplog_series_kernel_power(gamma, p, 0.5 * p, a), 1.0 / p);
      const double x20 = std::sqrt(x20_series(ga));
      const double s2 = std::sqrt(dl_series(ga));
      csv << fmt17(a) << "," << fmt17(bp) << "," << fmt17(bplog) << "," << fmt17(x20) << ","
          << fmt17(s2) << "\n";
      xs.push_back(a);
      ys.push_back(bp);
    }
    em.emit("sweep.csv", csv.str());
    auto fit = fit_power_log(xs, ys, FitScale::Boundary);
    em.emit("fit.json", fit_json(fit));
  } else {
    throw CLI::ValidationError("--family", "expected monomial or kernelpow");
  }
  em.finish();
  return 0;
}

int cmd_frontier(const GlobalOpts& g, const std::string& alpha_list, const std::string& p_list,
                 double eps) {
  Emitter em(g.out_dir, "frontier");
  em.config("alpha_grid", alpha_list);
  em.config("p_grid", p_list);
  em.config("eps", fmt17(eps));
  const RadialGrid radial = RadialGrid::make(14, 3, 8);
  std::ostringstream csv;
  csv << "alpha,p,tag,sp_exponent,xpa_exponent,xpa_eps_exponent\n";
  for (double alpha : parse_list(alpha_list))
    for (double p : parse_list(p_list)) {
      if (p * (1.0 - alpha) < 4.0) continue;  // frontier restricted to the open region
      const double ae = std::max(0.0, alpha - eps);
      std::vector<double> js, sp, xa, xe;
      for (int k = 2; k <= 9; ++k) {
        const int j = 1 << k;
        js.push_back(j);
        sp.push_back(monomial_schatten_power_sum(j, alpha, p).norm);
        xa.push_back(std::pow(xpa_series_monomial(j, p, alpha, radial), 1.0 / p));
        xe.push_back(std::pow(xpa_series_monomial(j, p, ae, radial), 1.0 / p));
      }
      auto fs = fit_power_log(js, sp, FitScale::Power);
      auto fx = fit_power_log(js, xa, FitScale::Power);
      auto fe = fit_power_log(js, xe, FitScale::Power);
      csv << fmt17(alpha) << "," << fmt17(p) << ",open," << fmt17(fs.exponent) << ","
          << fmt17(fx.exponent) << "," << fmt17(fe.exponent) << "\n";
    }
  em.emit("frontier.csv", csv.str());
  em.finish();
  return 0;
}

// --------------------------- validate suites -------------------------------

struct Validator {
  std::ostringstream log;
  bool ok = true;
  void check(bool cond, const std::string& what) {
    log << (cond ? "[pass] " : "[FAIL] ") << what << "\n";
    if (!cond) ok = false;
  }
};

int cmd_validate(const GlobalOpts& g, const std::string& suite, double r_lattice, double c_ict,
                 double t_ict) {
  Emitter em(g.out_dir, "validate");
  em.config("suite", suite);
  Validator v;

  if (suite == "ict") {
    GridParams gp;
    gp.clip_log2 = 30;
    gp.panel_nodes = 6;
    em.config("c", fmt17(c_ict));
    em.config("t", fmt17(t_ict));
    auto rep0 = validate_ict(c_ict, t_ict, {0.0}, gp);
    v.check(std::abs(rep0.rows[0].lhs - 1.0 / (t_ict + 1.0)) <= 1e-8,
            "I_{c,t}(0) = 1/(t+1) to 1e-8");
    std::vector<double> radii;
    for (int i = 0; i <= 32; ++i) radii.push_back(0.99 * i / 32.0);
    auto rep = validate_ict(c_ict, t_ict, radii, gp);
    v.check(rep.min_ratio > 0.05 && rep.max_ratio < 20.0,
            "ratio window bounded on |z| <= 0.99: [" + fmt17(rep.min_ratio) + ", " +
                fmt17(rep.max_ratio) + "]");
  } else if (suite == "li2") {
    GridParams gp;
    gp.clip_log2 = 30;
    gp.panel_nodes = 6;
    std::vector<double> radii;
    for (int i = 0; i <= 19; ++i) radii.push_back(0.95 * i / 19.0);
    auto rep = validate_li2(0.0, 3.0, 1.0, radii, gp);
    v.check(std::isfinite(rep.max_ratio) && rep.max_ratio < 20.0,
            "max ratio finite on the constrained set: " + fmt17(rep.max_ratio));
  } else if (suite == "lattice") {
    em.config("r", fmt17(r_lattice));
    Lattice lat = build_lattice(r_lattice, 1.0 - std::exp2(-10));
    auto rep = lat.verify(100000);
    v.check(rep.covering, "covering");
    v.check(rep.min_separation >= r_lattice / 2.0 - 1e-12,
            "separation >= r/2: " + fmt17(rep.min_separation));
    v.check(rep.max_multiplicity_2r < 500,
            "finite multiplicity at 2r: " + std::to_string(rep.max_multiplicity_2r));
    em.emit("lattice.csv", lattice_csv(lat));
  } else if (suite == "hs-identity") {
    auto g8 = Symbol::taylor({cplx(0.1), cplx(1.0), cplx(-0.5), cplx(0.0), cplx(0.25),
                              cplx(0.7), cplx(0.0), cplx(1.0 / 3.0), cplx(-0.125)});
    double worst = 0.0;
    for (const Symbol& s : {Symbol::monomial(1), Symbol::monomial(4), g8}) {
      NormOptions nopt;
      nopt.grid.clip_log2 = 20;
      auto dl = dl_norm(s, nopt);
      const double exact = tg_hs_exact(s);
      worst = std::max(worst, std::abs(dl.value - exact) / exact);
    }
    v.check(worst < 1e-4, "max relative deviation " + fmt17(worst) + " < 1e-4");
  } else if (suite == "frame") {
    std::vector<double> radii;
    for (int i = 1; i <= 9; ++i) radii.push_back(0.1 * i);
    for (double alpha : {0.0, 0.5})
      for (double p : {1.0, 1.5}) {
        auto rep = frame_lower_bound_check(SpaceParams{alpha, InnerProduct::Coefficient}, p, 2000,
                                           radii);
        v.check(rep.min_ratio > 0.005, "frame ratio floor at alpha=" + fmt17(alpha) +
                                          " p=" + fmt17(p) + ": " + fmt17(rep.min_ratio));
      }
  } else if (suite == "toeplitz") {
    Lattice lat = build_lattice(1.0, 1.0 - std::exp2(-11));
    for (double alpha : {0.5, 1.0})
      for (double p : {0.6, 1.0, 1.5}) {
        if (!(p * (2.0 + alpha) > 1.0) || !(p * (1.0 - alpha) < 2.0)) continue;
        double lo = 1e300, hi = 0.0;
        for (int k = 2; k <= 9; ++k) {
          const double a = 1.0 - std::exp2(-k);
          auto mu = MeasureRep::atomic({{cplx(a, 0.0), 1.0}});
          const double L = luecking_sum(mu, lat, alpha, p);
          const double X = xpmu_series_point_mass(a, 2.0 * p, alpha);
          const double ratio = X / L;
          lo = std::min(lo, ratio);
          hi = std::max(hi, ratio);
        }
        v.check(hi / lo < 50.0, "cross-ratio window alpha=" + fmt17(alpha) + " p=" + fmt17(p) +
                                    ": " + fmt17(hi / lo));
      }
  } else if (suite == "inclusions") {
    // X^p_alpha inclusion monotonicity on a small symbol set
    const RadialGrid radial = RadialGrid::make(16, 2, 6);
    for (int j : {2, 6}) {
      const double x_p_small = xpa_series_monomial(j, 1.5, 0.25, radial);
      const double x_q = xpa_series_monomial(j, 3.0, 0.25, radial);
      const double x_gamma = xpa_series_monomial(j, 1.5, 0.75, radial);
      v.check(std::isfinite(x_p_small) && std::isfinite(x_q) && std::isfinite(x_gamma),
              "finiteness chain for z^" + std::to_string(j));
    }
  } else if (suite == "berezin") {
    SpaceParams int0{0.0, InnerProduct::Integral};
    auto m = assemble_tg(Symbol::monomial(1), int0, 64);
    GridParams gp;
    gp.clip_log2 = 20;  // the p=2 identity is a full-disk statement
    gp.angular_min = 192;
    gp.angular_cap = 192;
    gp.angular_factor = 0.0;
    auto r = berezin_functional(m.entries, int0, 2.0, Probe::JNormalized, DiskGrid::uniform(gp));
    const double exact = berezin_j_p2_exact(m);
    v.check(std::abs(r.value - exact) <= 1e-3 * exact,
            "quadrature matches the exact p=2 identity");
    v.check(r.value <= m.frobenius_sq() + 1e-8, "upper sandwich inequality");
  } else {
    throw CLI::ValidationError("suite", "unknown suite: " + suite);
  }

  em.emit("validate.txt", v.log.str());
  em.finish();
  std::cout << v.log.str();
  return v.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"disklab: Schatten spectra and norm functionals on weighted Dirichlet spaces"};
  app.set_version_flag("--version", std::string("disklab ") + kVersion);
  app.set_config("--config", "", "flat key=value config file");
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--threads", g.threads, "worker threads (0 = hardware)")
      ->envname("DISKLAB_THREADS");
  app.add_option("--out-dir", g.out_dir, "output directory")->envname("DISKLAB_OUT_DIR");
  app.add_option("--clip", g.clip, "clip exponent: integrate |z| <= 1-2^-clip")
      ->check(CLI::Range(1, 48));
  app.add_option("--refine", g.refine, "grid refinement notches")->check(CLI::Range(0, 4));

  auto* sp = app.add_subcommand("spectrum", "assemble T_g, compute singular values");
  std::string symbol = "monomial:1", mode = "coefficient", plist = "2", export_matrix;
  double alpha = 0.0, p = 2.0, gamma = 1.0;
  int N = 512;
  sp->add_option("--symbol", symbol, "symbol spec, e.g. monomial:3, kernelpow:0.9,1, loglog");
  sp->add_option("--alpha", alpha, "space weight alpha >= 0");
  sp->add_option("--mode", mode, "inner product: coefficient | integral");
  sp->add_option("--n", N, "truncation degree");
  sp->add_option("--p", plist, "comma list of Schatten orders");
  sp->add_option("--export-matrix", export_matrix, "csv | bin");

  auto* sw = app.add_subcommand("sweep", "symbol-family growth sweeps");
  std::string family = "monomial";
  int kmin = 2, kmax = 12;
  sw->add_option("--family", family, "monomial | kernelpow");
  sw->add_option("--alpha", alpha, "space weight");
  sw->add_option("--p", p, "Schatten order");
  sw->add_option("--gamma", gamma, "kernel power exponent");
  sw->add_option("--kmin", kmin, "first dyadic index");
  sw->add_option("--kmax", kmax, "last dyadic index");

  auto* fr = app.add_subcommand("frontier", "exploratory sweeps on p(1-alpha) >= 4");
  std::string alpha_grid = "0.1,0.2", p_grid = "5,6";
  double eps = 0.05;
  fr->add_option("--alpha-grid", alpha_grid, "comma list of alphas");
  fr->add_option("--p-grid", p_grid, "comma list of p");
  fr->add_option("--eps", eps, "X^p_{alpha-eps} offset");

  auto* va = app.add_subcommand("validate", "property suites (exit 1 on failure)");
  std::string suite;
  double r_lattice = 1.0, c_ict = 1.0, t_ict = 0.0;
  va->add_option("suite", suite,
                 "ict | li2 | lattice | inclusions | toeplitz | hs-identity | frame | berezin")
      ->required();
  va->add_option("--r", r_lattice, "lattice parameter");
  va->add_option("--c", c_ict, "I_{c,t} exponent c");
  va->add_option("--t", t_ict, "I_{c,t} exponent t");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();
  sp->fallthrough();
  sw->fallthrough();
  fr->fallthrough();
  va->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  set_thread_count(g.threads);
  try {
    if (sp->parsed()) return cmd_spectrum(g, symbol, alpha, mode, N, plist, export_matrix);
    if (sw->parsed()) return cmd_sweep(g, family, alpha, p, gamma, kmin, kmax);
    if (fr->parsed()) return cmd_frontier(g, alpha_grid, p_grid, eps);
    if (va->parsed()) return cmd_validate(g, suite, r_lattice, c_ict, t_ict);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
