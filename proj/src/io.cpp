#include "disklab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace disklab {

std::string spectrum_csv(const Spectrum& s, long first_index) {
  std::ostringstream os;
  os << "n,lambda_n\n";
  for (std::size_t i = 0; i < s.values.size(); ++i)
    os << (first_index + long(i)) << "," << fmt17(s.values[i]) << "\n";
  return os.str();
}

std::string schatten_json(const Spectrum& s, const std::vector<double>& ps) {
  nlohmann::json j = nlohmann::json::object();
  for (double p : ps) {
    SchattenResult r = schatten_norm(s, p);
    nlohmann::json e;
    e["norm"] = r.norm;
    e["lo"] = r.lo;
    e["hi"] = r.hi;
    e["tail_bound"] = r.tail.bound;
    e["tail_heuristic"] = r.tail.heuristic;
    j[fmt17(p)] = e;
  }
  return j.dump(2) + "\n";
}

std::string norm_table_csv(const std::vector<std::pair<std::string, NormResult>>& rows) {
  std::ostringstream os;
  os << "symbol,functional,p,alpha,gamma,clip,value,err,oracle\n";
  for (const auto& [sym, r] : rows) {
    os << sym << "," << r.functional << "," << fmt17(r.p) << "," << fmt17(r.alpha) << ","
       << fmt17(r.log_power) << "," << fmt17(r.clip) << "," << fmt17(r.value) << ","
       << fmt17(r.error) << "," << (r.oracle ? fmt17(*r.oracle) : "") << "\n";
  }
  return os.str();
}

std::string fit_json(const GrowthFit& f) {
  nlohmann::json j;
  j["exponent"] = f.exponent;
  j["log_power"] = f.log_power;
  j["r2"] = f.r2;
  j["window"] = {f.window_min, f.window_max};
  j["range"] = {f.x_min, f.x_max};
  j["scale"] = f.scale == FitScale::Power ? "power" : "boundary";
  return j.dump(2) + "\n";
}

std::string lattice_csv(const Lattice& lat) {
  std::ostringstream os;
  os << "k,re,im\n";
  for (std::size_t k = 0; k < lat.points.size(); ++k)
    os << k << "," << fmt17(lat.points[k].real()) << "," << fmt17(lat.points[k].imag()) << "\n";
  return os.str();
}

std::string RunManifest::config_hash() const {
  std::string canon;
  for (const auto& [k, v] : config) canon += k + "=" + v + "\n";
  return hex64(fnv1a64(canon));
}

std::string RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["tool_version"] = kVersion;
  j["config"] = config;
  j["config_hash"] = config_hash();
  j["wall_seconds"] = wall_seconds;
  nlohmann::json outs = nlohmann::json::array();
  for (const auto& [path, hash] : outputs) outs.push_back({{"path", path}, {"hash", hash}});
  j["outputs"] = outs;
  return j.dump(2) + "\n";
}

std::string write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw std::runtime_error("write_file: cannot open " + tmp);
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("write_file: rename failed for " + path);
  return hex64(fnv1a64(content));
}

}  // namespace disklab
