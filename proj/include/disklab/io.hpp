#pragma once

#include <map>
#include <string>
#include <vector>

#include "disklab/asymptotics.hpp"
#include "disklab/norms.hpp"
#include "disklab/spectra.hpp"

namespace disklab {

// All text output is deterministic: doubles through fmt17, '\n' newlines,
// fixed column orders.  Binary formats are documented in docs/formats.md.

/// CSV "n,lambda_n\n" rows for a spectrum.
std::string spectrum_csv(const Spectrum& s, long first_index = 1);

/// JSON summary {"p": {"norm":..., "tail":...}, ...} for requested orders.
std::string schatten_json(const Spectrum& s, const std::vector<double>& ps);

/// CSV row set for norm tables:
/// symbol,functional,p,alpha,gamma,clip,value,err,oracle
std::string norm_table_csv(const std::vector<std::pair<std::string, NormResult>>& rows);

/// Fit report JSON {exponent, log_power, r2, window, range}.
std::string fit_json(const GrowthFit& f);

/// Lattice CSV "k,re,im\n".
std::string lattice_csv(const Lattice& lat);

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> config;  // canonical key -> value
  std::vector<std::pair<std::string, std::string>> outputs;  // path, content hash
  double wall_seconds = 0.0;

  std::string config_hash() const;  // FNV-1a over canonical "key=value\n" lines
  std::string to_json() const;
};

/// Write a file atomically-ish (temp + rename); returns the FNV-1a hash hex.
std::string write_file(const std::string& path, const std::string& content);

}  // namespace disklab
