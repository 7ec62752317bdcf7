#pragma once

#include <optional>
#include <string>
#include <vector>

#include "disklab/common.hpp"

namespace disklab {

// ---------------------------------------------------------------------------
// Turning comparability statements into measurable fits: power laws with an
// optional log factor, in either the large-parameter scale
//     y ~ C x^e (log x)^m
// or the boundary scale
//     y ~ C (1-x)^{-e} (log(e/(1-x)))^m.
// ---------------------------------------------------------------------------

enum class FitScale { Power, Boundary };

struct GrowthFit {
  double exponent = 0.0;
  double log_power = 0.0;
  double c = 0.0;          // log-intercept
  double r2 = 0.0;         // goodness of fit on log y
  double window_min = 0.0; // min/max of data/model after normalization
  double window_max = 0.0;
  double x_min = 0.0, x_max = 0.0;
  FitScale scale = FitScale::Power;
};

/// Alternating least-squares fit: exponent on the top decade first, then the
/// log regressor on the residuals, iterated to a fixpoint (exact on data
/// generated by the model).  Requires >= 6 samples spanning >= 2 decades in
/// the fitted scale.  Set fix_exponent to fit only the log power (used at
/// regime boundaries).
GrowthFit fit_power_log(const std::vector<double>& xs, const std::vector<double>& ys,
                        FitScale scale, bool with_log_factor = true,
                        std::optional<double> fix_exponent = std::nullopt);

// ---------------------------------------------------------------------------
// Regime selection for the Schatten membership statements.
// ---------------------------------------------------------------------------

enum class TgRegime {
  ConstantsOnly,    // p <= 1: no nonconstant symbols
  BesovEqualsXpa,   // p > 1, alpha > 0, p(1-alpha) < 2
  XpaCharacterizes, // p > 1, alpha > 0, 2 <= p(1-alpha) < 4
  DirichletAlphaZero,  // alpha = 0: necessary/sufficient pairs only
  Open              // p(1-alpha) >= 4
};

/// Growth regime of the monomial sweep ||T_{z^j}||_{S_p}:
///   exponent 1/p                 when (1-alpha) p < 2
///   (j log(j+1))^{1/p}           when (1-alpha) p = 2
///   exponent (1-alpha)/2         when (1-alpha) p > 2
enum class MonomialRegime { PowerOneOverP, LogBoundary, PowerHalfOneMinusAlpha };

struct RegimeReport {
  double alpha = 0.0, p = 0.0;
  TgRegime regime = TgRegime::Open;
  MonomialRegime monomial = MonomialRegime::PowerOneOverP;
  double predicted_exponent = 0.0;
  double predicted_log_power = 0.0;
  std::string summary;
};

RegimeReport regime_report(double alpha, double p);

}  // namespace disklab
