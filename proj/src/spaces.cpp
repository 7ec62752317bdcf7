#include "disklab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace disklab {

void SpaceParams::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("SpaceParams: alpha must be finite and >= 0");
}

std::string to_string(InnerProduct m) {
  return m == InnerProduct::Integral ? "integral" : "coefficient";
}

InnerProduct inner_product_from_string(const std::string& s) {
  if (s == "integral") return InnerProduct::Integral;
  if (s == "coefficient" || s == "coeff") return InnerProduct::Coefficient;
  throw std::invalid_argument("unknown inner product mode: " + s);
}

double monomial_norm(const SpaceParams& sp, int n) {
  sp.validate();
  if (n < 0) throw std::invalid_argument("monomial_norm: n < 0");
  if (sp.mode == InnerProduct::Coefficient)
    return std::pow(n + 1.0, 0.5 * (1.0 - sp.alpha));
  if (n == 0) return 1.0;
  // ||z^n||^2 = int |n z^{n-1}|^2 dA_alpha = n^2 (alpha+1) B(n, alpha+1)
  return n * std::sqrt((sp.alpha + 1.0) * std::exp(lbeta(n, sp.alpha + 1.0)));
}

BasisInfo orthonormal_basis(const SpaceParams& sp, int N) {
  sp.validate();
  if (N < 1) throw std::invalid_argument("orthonormal_basis: N must be >= 1");
  BasisInfo b;
  b.space = sp;
  b.norms.resize(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) b.norms[n] = monomial_norm(sp, n);
  return b;
}

cplx BasisInfo::eval(int n, cplx z) const {
  return std::pow(z, n) / norms[n];
}

cplx BasisInfo::eval_derivative(int n, cplx z) const {
  if (n == 0) return 0.0;
  return double(n) * std::pow(z, n - 1) / norms[n];
}

// ---------------------------------------------------------------------------
// Symbol
// ---------------------------------------------------------------------------

std::string to_string(SymbolKind k) {
  switch (k) {
    case SymbolKind::Taylor: return "taylor";
    case SymbolKind::Monomial: return "monomial";
    case SymbolKind::KernelPower: return "kernelpow";
    case SymbolKind::LogLog: return "loglog";
    case SymbolKind::Lacunary: return "lacunary";
  }
  return "?";
}

Symbol Symbol::taylor(std::vector<cplx> coeffs) {
  Symbol s;
  s.kind_ = SymbolKind::Taylor;
  s.taylor_ = std::move(coeffs);
  if (s.taylor_.empty()) s.taylor_.push_back(0.0);
  return s;
}

Symbol Symbol::constant(cplx c) { return taylor({c}); }

Symbol Symbol::monomial(int j) {
  if (j < 1) throw std::invalid_argument("monomial: j must be >= 1");
  Symbol s;
  s.kind_ = SymbolKind::Monomial;
  s.monomial_j_ = j;
  return s;
}

Symbol Symbol::kernel_power(cplx a, double gamma) {
  if (!(std::abs(a) < 1.0)) throw std::domain_error("kernel_power: |a| must be < 1");
  if (!(gamma > 0.0)) throw std::invalid_argument("kernel_power: gamma must be > 0");
  Symbol s;
  s.kind_ = SymbolKind::KernelPower;
  s.kp_a_ = a;
  s.kp_gamma_ = gamma;
  return s;
}

Symbol Symbol::log_log() {
  Symbol s;
  s.kind_ = SymbolKind::LogLog;
  return s;
}

Symbol Symbol::lacunary(std::vector<double> coeffs, std::vector<long> exponents) {
  if (coeffs.size() != exponents.size())
    throw std::invalid_argument("lacunary: coeffs/exponents size mismatch");
  for (std::size_t k = 0; k < exponents.size(); ++k) {
    if (exponents[k] < 1) throw std::invalid_argument("lacunary: exponents must be >= 1");
    if (k > 0 && exponents[k] <= exponents[k - 1])
      throw std::invalid_argument("lacunary: exponents must be strictly increasing (ratio > 1)");
  }
  Symbol s;
  s.kind_ = SymbolKind::Lacunary;
  s.lac_a_ = std::move(coeffs);
  s.lac_n_ = std::move(exponents);
  return s;
}

bool Symbol::is_constant() const {
  switch (kind_) {
    case SymbolKind::Taylor:
      return std::all_of(taylor_.begin() + 1, taylor_.end(),
                         [](cplx c) { return c == cplx(0.0); });
    case SymbolKind::Lacunary:
      return std::all_of(lac_a_.begin(), lac_a_.end(), [](double c) { return c == 0.0; });
    default:
      return false;
  }
}

bool Symbol::has_closed_form() const { return kind_ != SymbolKind::Taylor; }

namespace {

// g = log(u) with u(z) = 1 + log(1/(1-z)).  Coefficients of g' from the
// series division g' * u = u' = 1/(1-z); then b_k = d_{k-1}/k.
std::vector<double> loglog_coeffs(int M) {
  std::vector<double> d(std::max(M, 1));
  for (int k = 0; k < static_cast<int>(d.size()); ++k) {
    double acc = 1.0;
    for (int i = 1; i <= k; ++i) acc -= d[k - i] / i;
    d[k] = acc;
  }
  std::vector<double> b(static_cast<std::size_t>(M) + 1, 0.0);
  for (int k = 1; k <= M; ++k) b[k] = d[k - 1] / k;
  return b;
}

double loglog_sup_bound(double rho) {
  // |u| <= 1 + log(1/(1-rho)) + pi and |u| >= 1 - log 2 on |z| = rho < 1
  double umax = 1.0 + std::log(1.0 / (1.0 - rho)) + kPi;
  return std::log(umax) + kPi;
}

}  // namespace

CoeffSeq Symbol::coeffs(int M, double tail_radius) const {
  if (M < 0) throw std::invalid_argument("coeffs: M < 0");
  CoeffSeq out;
  out.tail_radius = tail_radius;
  out.b.assign(static_cast<std::size_t>(M) + 1, cplx(0.0));
  switch (kind_) {
    case SymbolKind::Taylor: {
      for (std::size_t k = 0; k < taylor_.size() && k <= static_cast<std::size_t>(M); ++k)
        out.b[k] = taylor_[k];
      if (taylor_.size() > static_cast<std::size_t>(M) + 1)
        for (std::size_t k = M + 1; k < taylor_.size(); ++k)
          out.tail_bound += std::abs(taylor_[k]) * std::pow(tail_radius, double(k));
      break;
    }
    case SymbolKind::Monomial: {
      if (monomial_j_ <= M) out.b[monomial_j_] = 1.0;
      else {
        out.dropped_terms = 1;
        out.tail_bound = std::pow(tail_radius, double(monomial_j_));
      }
      break;
    }
    case SymbolKind::KernelPower: {
      const double g = kp_gamma_;
      cplx abar = std::conj(kp_a_);
      cplx term = 1.0;
      for (int k = 0; k <= M; ++k) {
        out.b[k] = term;
        term *= abar * ((g + k) / (k + 1.0));
      }
      // geometric tail: ratio of consecutive magnitudes is eventually
      // below rho_hat < 1
      double r = std::abs(kp_a_) * tail_radius;
      double rho_hat = r * std::max(1.0, (g + M + 1.0) / (M + 2.0));
      if (rho_hat < 1.0)
        out.tail_bound = std::abs(term) * std::pow(tail_radius, double(M + 1)) / (1.0 - rho_hat);
      else
        out.tail_bound = INFINITY;
      break;
    }
    case SymbolKind::LogLog: {
      auto b = loglog_coeffs(M);
      for (int k = 0; k <= M; ++k) out.b[k] = b[k];
      // Cauchy estimate through the circle |z| = rho
      double rho = 0.5 * (1.0 + tail_radius);
      double q = tail_radius / rho;
      out.tail_bound = loglog_sup_bound(rho) * std::pow(q, double(M + 1)) / (1.0 - q);
      break;
    }
    case SymbolKind::Lacunary: {
      for (std::size_t k = 0; k < lac_n_.size(); ++k) {
        if (lac_n_[k] <= M) out.b[lac_n_[k]] = lac_a_[k];
        else {
          ++out.dropped_terms;
          out.tail_bound += std::abs(lac_a_[k]) * std::pow(tail_radius, double(lac_n_[k]));
        }
      }
      break;
    }
  }
  return out;
}

namespace {

cplx horner(const std::vector<cplx>& c, cplx z) {
  cplx acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

cplx loglog_u(cplx z) { return 1.0 - std::log(1.0 - z); }  // 1 + log(1/(1-z))

}  // namespace

cplx Symbol::value_at(cplx z) const {
  switch (kind_) {
    case SymbolKind::Taylor: return horner(taylor_, z);
    case SymbolKind::Monomial: return std::pow(z, monomial_j_);
    case SymbolKind::KernelPower:
      return std::pow(1.0 - std::conj(kp_a_) * z, -kp_gamma_);
    case SymbolKind::LogLog: return std::log(loglog_u(z));
    case SymbolKind::Lacunary: {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < lac_n_.size(); ++k)
        acc += lac_a_[k] * std::pow(z, double(lac_n_[k]));
      return acc;
    }
  }
  return 0.0;
}

cplx Symbol::derivative_at(cplx z) const {
  switch (kind_) {
    case SymbolKind::Taylor: {
      std::vector<cplx> d(taylor_.size() > 1 ? taylor_.size() - 1 : 1, 0.0);
      for (std::size_t k = 1; k < taylor_.size(); ++k) d[k - 1] = double(k) * taylor_[k];
      return horner(d, z);
    }
    case SymbolKind::Monomial:
      return double(monomial_j_) * std::pow(z, monomial_j_ - 1);
    case SymbolKind::KernelPower: {
      cplx abar = std::conj(kp_a_);
      return kp_gamma_ * abar * std::pow(1.0 - abar * z, -(kp_gamma_ + 1.0));
    }
    case SymbolKind::LogLog:
      return 1.0 / ((1.0 - z) * loglog_u(z));
    case SymbolKind::Lacunary: {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < lac_n_.size(); ++k)
        acc += lac_a_[k] * double(lac_n_[k]) * std::pow(z, double(lac_n_[k] - 1));
      return acc;
    }
  }
  return 0.0;
}

cplx Symbol::second_derivative_at(cplx z) const {
  switch (kind_) {
    case SymbolKind::Taylor: {
      std::vector<cplx> d(taylor_.size() > 2 ? taylor_.size() - 2 : 1, 0.0);
      for (std::size_t k = 2; k < taylor_.size(); ++k)
        d[k - 2] = double(k) * double(k - 1) * taylor_[k];
      return horner(d, z);
    }
    case SymbolKind::Monomial: {
      if (monomial_j_ < 2) return 0.0;
      return double(monomial_j_) * double(monomial_j_ - 1) * std::pow(z, monomial_j_ - 2);
    }
    case SymbolKind::KernelPower: {
      cplx abar = std::conj(kp_a_);
      return kp_gamma_ * (kp_gamma_ + 1.0) * abar * abar *
             std::pow(1.0 - abar * z, -(kp_gamma_ + 2.0));
    }
    case SymbolKind::LogLog: {
      cplx u = loglog_u(z);
      cplx q = 1.0 / ((1.0 - z) * (1.0 - z) * u);
      return q * (1.0 - 1.0 / u);
    }
    case SymbolKind::Lacunary: {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < lac_n_.size(); ++k) {
        if (lac_n_[k] < 2) continue;
        acc += lac_a_[k] * double(lac_n_[k]) * double(lac_n_[k] - 1) *
               std::pow(z, double(lac_n_[k] - 2));
      }
      return acc;
    }
  }
  return 0.0;
}

std::string Symbol::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case SymbolKind::Taylor:
      os << "taylor[deg<=" << taylor_.size() - 1 << "]";
      break;
    case SymbolKind::Monomial: os << "z^" << monomial_j_; break;
    case SymbolKind::KernelPower:
      os << "(1-conj(a)z)^-" << kp_gamma_ << " a=" << kp_a_.real();
      if (kp_a_.imag() != 0.0) os << "+" << kp_a_.imag() << "i";
      break;
    case SymbolKind::LogLog: os << "loglog(e/(1-z))"; break;
    case SymbolKind::Lacunary: os << "lacunary[" << lac_n_.size() << " terms]"; break;
  }
  return os.str();
}

std::string Symbol::to_json() const {
  nlohmann::json j;
  j["kind"] = to_string(kind_);
  nlohmann::json params = nlohmann::json::object();
  switch (kind_) {
    case SymbolKind::Taylor: {
      nlohmann::json coeffs = nlohmann::json::array();
      for (cplx c : taylor_) coeffs.push_back({c.real(), c.imag()});
      j["coeffs"] = coeffs;
      j["truncation"] = taylor_.size() - 1;
      break;
    }
    case SymbolKind::Monomial:
      params["j"] = monomial_j_;
      j["truncation"] = monomial_j_;
      break;
    case SymbolKind::KernelPower:
      params["a_re"] = kp_a_.real();
      params["a_im"] = kp_a_.imag();
      params["gamma"] = kp_gamma_;
      j["truncation"] = nullptr;
      break;
    case SymbolKind::LogLog:
      j["truncation"] = nullptr;
      break;
    case SymbolKind::Lacunary:
      params["coeffs"] = lac_a_;
      params["exponents"] = lac_n_;
      j["truncation"] = lac_n_.empty() ? 0 : lac_n_.back();
      break;
  }
  j["params"] = params;
  return j.dump();
}

Symbol Symbol::from_json(const std::string& doc) {
  nlohmann::json j = nlohmann::json::parse(doc);
  const std::string kind = j.at("kind").get<std::string>();
  const auto& params = j.at("params");
  if (kind == "taylor") {
    std::vector<cplx> c;
    for (const auto& e : j.at("coeffs")) c.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    return taylor(std::move(c));
  }
  if (kind == "monomial") return monomial(params.at("j").get<int>());
  if (kind == "kernelpow")
    return kernel_power(cplx(params.at("a_re").get<double>(), params.at("a_im").get<double>()),
                        params.at("gamma").get<double>());
  if (kind == "loglog") return log_log();
  if (kind == "lacunary")
    return lacunary(params.at("coeffs").get<std::vector<double>>(),
                    params.at("exponents").get<std::vector<long>>());
  throw std::invalid_argument("Symbol::from_json: unknown kind " + kind);
}

namespace {

std::vector<double> parse_number_list(const std::string& s) {
  std::vector<double> out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  return out;
}

}  // namespace

Symbol Symbol::parse(const std::string& text) {
  auto colon = text.find(':');
  std::string name = text.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (name == "monomial") return monomial(std::stoi(rest));
  if (name == "loglog") return log_log();
  if (name == "const") return constant(rest.empty() ? 1.0 : std::stod(rest));
  if (name == "taylor") {
    auto v = parse_number_list(rest);
    std::vector<cplx> c(v.begin(), v.end());
    return taylor(std::move(c));
  }
  if (name == "kernelpow") {
    auto v = parse_number_list(rest);
    if (v.size() == 2) return kernel_power(v[0], v[1]);
    if (v.size() == 3) return kernel_power(cplx(v[0], v[1]), v[2]);
    throw std::invalid_argument("kernelpow expects a,gamma or a_re,a_im,gamma");
  }
  if (name == "lacunary") {
    auto at = rest.find('@');
    if (at == std::string::npos)
      throw std::invalid_argument("lacunary expects coeffs@exponents");
    auto cs = parse_number_list(rest.substr(0, at));
    auto es = parse_number_list(rest.substr(at + 1));
    std::vector<long> n(es.size());
    for (std::size_t i = 0; i < es.size(); ++i) n[i] = static_cast<long>(es[i]);
    return lacunary(std::move(cs), std::move(n));
  }
  throw std::invalid_argument("unknown symbol spec: " + text);
}

// ---------------------------------------------------------------------------
// Kernels
// ---------------------------------------------------------------------------

namespace {

void require_inside(cplx z, const char* who) {
  if (!(std::abs(z) < 1.0)) throw std::domain_error(std::string(who) + ": point must satisfy |z| < 1");
}

// sum_{m>=0} C_m(alpha) u^{m+1}/(m+1)^2 with C_m(alpha) = binom coeffs of
// (1-x)^{-(2+alpha)}; certified geometric cut at |t_M| * rho/(1-rho) < tol.
cplx dirichlet_series(double alpha, cplx u, double tol) {
  cplx acc = 0.0;
  double c = 1.0;  // C_m
  cplx upow = u;
  const double au = std::abs(u);
  const std::size_t cap = 200000000;
  for (std::size_t m = 0;; ++m) {
    cplx t = c * upow / ((m + 1.0) * (m + 1.0));
    acc += t;
    double rho = au * (m + 2.0 + alpha) / (m + 1.0);
    if (rho < 1.0 && std::abs(t) * rho / (1.0 - rho) < tol) break;
    if (m > cap) throw std::runtime_error("kernel_value: tolerance unreachable at series cap");
    c *= (2.0 + alpha + m) / (m + 1.0);
    upow *= u;
  }
  return acc;
}

// sum_{k>=0} u^k/(k+1)^{1-alpha}  (coefficient-mode Dirichlet kernel)
cplx coeff_kernel_series(double alpha, cplx u, double tol) {
  if (alpha == 0.0) {
    if (std::abs(u) < 1e-12) return 1.0 + u / 2.0;
    return -std::log(1.0 - u) / u;
  }
  if (alpha == 1.0) return 1.0 / (1.0 - u);
  cplx acc = 0.0;
  cplx upow = 1.0;
  const double au = std::abs(u);
  const std::size_t cap = 200000000;
  for (std::size_t k = 0;; ++k) {
    cplx t = upow * std::pow(k + 1.0, alpha - 1.0);
    acc += t;
    double rho = au * std::pow((k + 2.0) / (k + 1.0), alpha - 1.0);
    rho = std::min(rho, au * std::max(1.0, std::pow(2.0, alpha - 1.0)));
    if (rho < 1.0 && std::abs(t) * rho / (1.0 - rho) < tol) break;
    if (k > cap) throw std::runtime_error("kernel_value: tolerance unreachable at series cap");
    upow *= u;
  }
  return acc;
}

}  // namespace

cplx kernel_value(const KernelEval& k, cplx z, cplx w, double tol) {
  require_inside(z, "kernel_value");
  require_inside(w, "kernel_value");
  const cplx u = std::conj(z) * w;
  switch (k.kind) {
    case KernelKind::BergmanB:
      return std::pow(1.0 - u, -(2.0 + k.alpha));
    case KernelKind::DerivativeJ: {
      if (std::abs(u) < 1e-3) {
        // J = w * sum_m beta_m(1+alpha) u^m/(m+1), short series
        cplx acc = 0.0, up = 1.0;
        double bm = 1.0;
        for (int m = 0; m < 12; ++m) {
          acc += bm * up / (m + 1.0);
          bm *= (1.0 + k.alpha + m) / (m + 1.0);
          up *= u;
        }
        return w * acc;
      }
      return (std::pow(1.0 - u, -(1.0 + k.alpha)) - 1.0) / ((1.0 + k.alpha) * std::conj(z));
    }
    case KernelKind::DirichletK: {
      if (k.mode == InnerProduct::Coefficient) return coeff_kernel_series(k.alpha, u, tol);
      if (k.alpha == 0.0) return 1.0 - std::log(1.0 - u);
      return 1.0 + dirichlet_series(k.alpha, u, tol);
    }
  }
  return 0.0;
}

double kernel_norm(const KernelEval& k, cplx z, double tol) {
  require_inside(z, "kernel_norm");
  const double s = std::norm(z);
  switch (k.kind) {
    case KernelKind::BergmanB:
    case KernelKind::DerivativeJ:
      return std::pow(1.0 - s, -0.5 * (2.0 + k.alpha));
    case KernelKind::DirichletK: {
      cplx v = kernel_value(k, z, z, tol * tol);
      return std::sqrt(v.real());
    }
  }
  return 0.0;
}

}  // namespace disklab
