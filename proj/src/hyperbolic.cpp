#include "disklab/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace disklab {

cplx mobius(cplx a, cplx z) { return (a - z) / (1.0 - std::conj(a) * z); }

double pseudo_hyperbolic(cplx z, cplx w) {
  return std::abs((z - w) / (1.0 - std::conj(w) * z));
}

double bergman_metric(cplx z, cplx w) {
  if (!(std::abs(z) < 1.0) || !(std::abs(w) < 1.0))
    throw std::domain_error("bergman_metric: points must lie inside the disk");
  const double rho = pseudo_hyperbolic(z, w);
  return std::atanh(rho);  // (1/2) log((1+rho)/(1-rho))
}

namespace {

// hyperbolic chord between two points on the circle of euclidean radius rho
// separated by angle dtheta
double ring_chord(double rho, double dtheta) {
  const double num = 2.0 * rho * rho * (1.0 - std::cos(dtheta));
  const double den = 1.0 - 2.0 * rho * rho * std::cos(dtheta) + std::pow(rho, 4.0);
  return std::atanh(std::sqrt(num / den));
}

}  // namespace

Lattice build_lattice(double r, double r_max) {
  if (!(r > 0.0) || r > 2.0) throw std::invalid_argument("build_lattice: need 0 < r <= 2");
  if (!(r_max > 0.0) || !(r_max < 1.0))
    throw std::invalid_argument("build_lattice: need 0 < r_max < 1");

  Lattice lat;
  lat.r = r;
  lat.r_max = r_max;
  const double h = r / 2.0;
  const double t_max = std::atanh(r_max);
  const int rings = static_cast<int>(std::ceil(t_max / h));

  lat.points.push_back(0.0);
  lat.ring_starts_.push_back(0);
  lat.ring_t_.push_back(0.0);

  for (int m = 1; m <= rings; ++m) {
    const double t = m * h;
    const double rho = std::tanh(t);
    // largest K with adjacent chord >= h (chord is increasing in the angle)
    double lo = 1e-9, hi = kPi;
    if (ring_chord(rho, hi) < h) {
      hi = kPi;  // even antipodal points too close: cannot happen for t >= h
    }
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      (ring_chord(rho, mid) >= h ? hi : lo) = mid;
    }
    int K = std::max(1, static_cast<int>(std::floor(2.0 * kPi / hi)));
    while (K > 1 && ring_chord(rho, 2.0 * kPi / K) < h) --K;
    const double offset = (m % 2 == 1) ? 0.0 : kPi / K;
    lat.ring_starts_.push_back(lat.points.size());
    lat.ring_t_.push_back(t);
    for (int k = 0; k < K; ++k)
      lat.points.push_back(std::polar(rho, offset + 2.0 * kPi * k / K));
  }
  lat.ring_starts_.push_back(lat.points.size());

  auto rep = lat.verify(20000);
  if (!rep.covering) {
    std::ostringstream os;
    os << "build_lattice: covering hole near z = " << rep.uncovered_witness->real() << "+"
       << rep.uncovered_witness->imag() << "i (r=" << r << ", r_max=" << r_max << ")";
    throw std::runtime_error(os.str());
  }
  if (rep.min_separation < r / 2.0 - 1e-12) {
    throw std::runtime_error("build_lattice: separation violation, min beta = " +
                             fmt17(rep.min_separation));
  }
  return lat;
}

std::vector<std::size_t> Lattice::disks_containing(cplx z, double radius) const {
  std::vector<std::size_t> out;
  for_each_in_ball(z, radius, [&](std::size_t idx) {
    out.push_back(idx);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Lattice::count_in_ball(cplx z, double radius) const {
  std::size_t n = 0;
  for_each_in_ball(z, radius, [&](std::size_t) {
    ++n;
    return true;
  });
  return n;
}

bool Lattice::any_in_ball(cplx z, double radius) const {
  bool found = false;
  for_each_in_ball(z, radius, [&](std::size_t) {
    found = true;
    return false;
  });
  return found;
}

LatticeVerification Lattice::verify(std::size_t probe_count) const {
  LatticeVerification rep;

  // separation: any pair below 0.6 r would show up in this scan; pairs
  // further apart cannot violate the r/2 requirement
  const double scan = 0.6 * r;
  double min_rho = std::tanh(scan);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for_each_in_ball(points[i], scan, [&](std::size_t j) {
      if (j != i)
        min_rho = std::min(min_rho, pseudo_hyperbolic(points[i], points[j]));
      return true;
    });
  }
  rep.min_separation = std::atanh(min_rho);

  // boundary-graded probe grid on |z| <= r_max
  const int octaves = std::max(1, static_cast<int>(std::ceil(-std::log2(1.0 - r_max))));
  const int radial_sub = 4;
  const std::size_t per_octave = std::max<std::size_t>(16, probe_count / octaves);
  rep.covering = true;
  std::size_t mult_r = 0, mult_2r = 0;
  for (int k = 0; k < octaves; ++k) {
    const double d_hi = std::exp2(-double(k));  // band: delta in [d_lo, d_hi]
    const double d_lo = std::max(1.0 - r_max, std::exp2(-double(k + 1)));
    const std::size_t m = std::max<std::size_t>(4, per_octave / radial_sub);
    for (int i = 0; i < radial_sub; ++i) {
      const double delta = d_lo + (d_hi - d_lo) * (i + 0.5) / radial_sub;
      const double rad = 1.0 - delta;
      if (rad < 0.0 || rad > r_max) continue;
      for (std::size_t l = 0; l < m; ++l) {
        const cplx z = std::polar(rad, 2.0 * kPi * (double(l) + 0.37) / double(m));
        ++rep.probes;
        if (!any_in_ball(z, r)) {
          rep.covering = false;
          if (!rep.uncovered_witness) rep.uncovered_witness = z;
        }
        mult_r = std::max(mult_r, count_in_ball(z, r));
        mult_2r = std::max(mult_2r, count_in_ball(z, 2.0 * r));
      }
    }
    if (d_lo == 1.0 - r_max) break;
  }
  rep.max_multiplicity_r = static_cast<int>(mult_r);
  rep.max_multiplicity_2r = static_cast<int>(mult_2r);
  return rep;
}

// ---------------------------------------------------------------------------
// Measures
// ---------------------------------------------------------------------------

MeasureRep MeasureRep::atomic(std::vector<std::pair<cplx, double>> atoms) {
  MeasureRep m;
  m.kind = MeasureKind::Atomic;
  m.atoms = std::move(atoms);
  m.validate();
  return m;
}

MeasureRep MeasureRep::radial_density(std::vector<std::pair<double, double>> samples) {
  MeasureRep m;
  m.kind = MeasureKind::RadialDensity;
  m.radial_samples = std::move(samples);
  std::sort(m.radial_samples.begin(), m.radial_samples.end());
  m.validate();
  return m;
}

MeasureRep MeasureRep::grid_density(std::vector<double> values) {
  MeasureRep m;
  m.kind = MeasureKind::GridDensity;
  m.grid_values = std::move(values);
  m.validate();
  return m;
}

void MeasureRep::validate() const {
  switch (kind) {
    case MeasureKind::Atomic:
      for (const auto& [z, w] : atoms) {
        if (!(std::abs(z) < 1.0))
          throw std::domain_error("MeasureRep: atom on or outside the unit circle");
        if (!(w >= 0.0)) throw std::invalid_argument("MeasureRep: negative atom weight");
      }
      break;
    case MeasureKind::RadialDensity:
      for (const auto& [r, f] : radial_samples) {
        if (!(r >= 0.0) || !(r < 1.0))
          throw std::domain_error("MeasureRep: radial sample outside [0,1)");
        if (!(f >= 0.0)) throw std::invalid_argument("MeasureRep: negative density");
      }
      break;
    case MeasureKind::GridDensity:
      for (double v : grid_values)
        if (!(v >= 0.0)) throw std::invalid_argument("MeasureRep: negative density");
      break;
  }
}

double MeasureRep::radial_density_at(double radius) const {
  if (radial_samples.empty()) return 0.0;
  if (radius <= radial_samples.front().first) return radial_samples.front().second;
  if (radius >= radial_samples.back().first) return 0.0;
  auto it = std::lower_bound(radial_samples.begin(), radial_samples.end(),
                             std::make_pair(radius, -1.0));
  auto prev = std::prev(it);
  const double t = (radius - prev->first) / (it->first - prev->first);
  return prev->second + t * (it->second - prev->second);
}

double MeasureRep::total_mass(const DiskGrid* grid) const {
  switch (kind) {
    case MeasureKind::Atomic: {
      double s = 0.0;
      for (const auto& [z, w] : atoms) s += w;
      return s;
    }
    case MeasureKind::RadialDensity: {
      // int f(|z|) dA = int_0^1 f(r) 2r dr, exact on the polyline
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < radial_samples.size(); ++i) {
        const auto [r0, f0] = radial_samples[i];
        const auto [r1, f1] = radial_samples[i + 1];
        // linear f on [r0, r1]: integral of 2 r f(r)
        const double a = (f1 - f0) / (r1 - r0);
        const double b = f0 - a * r0;
        s += a * (r1 * r1 * r1 - r0 * r0 * r0) * 2.0 / 3.0 + b * (r1 * r1 - r0 * r0);
      }
      return s;
    }
    case MeasureKind::GridDensity: {
      if (grid == nullptr || grid->nodes().size() != grid_values.size())
        throw std::invalid_argument("MeasureRep: grid density requires its matching grid");
      double s = 0.0;
      for (std::size_t i = 0; i < grid_values.size(); ++i)
        s += grid->nodes()[i].w * grid_values[i];
      return s;
    }
  }
  return 0.0;
}

std::string MeasureRep::to_json() const {
  nlohmann::json j;
  switch (kind) {
    case MeasureKind::Atomic: {
      j["kind"] = "atomic";
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& [z, w] : atoms) arr.push_back({z.real(), z.imag(), w});
      j["atoms"] = arr;
      break;
    }
    case MeasureKind::RadialDensity: {
      j["kind"] = "radial_density";
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& [r, f] : radial_samples) arr.push_back({r, f});
      j["samples"] = arr;
      break;
    }
    case MeasureKind::GridDensity:
      j["kind"] = "grid_density";
      j["values"] = grid_values;
      break;
  }
  return j.dump();
}

MeasureRep MeasureRep::from_json(const std::string& doc) {
  nlohmann::json j = nlohmann::json::parse(doc);
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "atomic") {
    std::vector<std::pair<cplx, double>> atoms;
    for (const auto& e : j.at("atoms"))
      atoms.emplace_back(cplx(e.at(0).get<double>(), e.at(1).get<double>()), e.at(2).get<double>());
    return atomic(std::move(atoms));
  }
  if (kind == "radial_density") {
    std::vector<std::pair<double, double>> s;
    for (const auto& e : j.at("samples"))
      s.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    return radial_density(std::move(s));
  }
  if (kind == "grid_density") return grid_density(j.at("values").get<std::vector<double>>());
  throw std::invalid_argument("MeasureRep::from_json: unknown kind " + kind);
}

std::vector<double> disk_masses(const MeasureRep& mu, const Lattice& lat, const DiskGrid* grid) {
  std::vector<double> mass(lat.points.size(), 0.0);
  switch (mu.kind) {
    case MeasureKind::Atomic:
      for (const auto& [z, w] : mu.atoms)
        for (std::size_t j : lat.disks_containing(z, lat.r)) mass[j] += w;
      break;
    case MeasureKind::RadialDensity:
    case MeasureKind::GridDensity: {
      if (grid == nullptr)
        throw std::invalid_argument("disk_masses: density measures need a quadrature grid");
      const auto& nodes = grid->nodes();
      if (mu.kind == MeasureKind::GridDensity && mu.grid_values.size() != nodes.size())
        throw std::invalid_argument("disk_masses: grid density does not match the grid");
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double f = mu.kind == MeasureKind::RadialDensity
                             ? mu.radial_density_at(std::abs(nodes[i].z))
                             : mu.grid_values[i];
        if (f == 0.0) continue;
        const double cell = nodes[i].w * f;
        for (std::size_t j : lat.disks_containing(nodes[i].z, lat.r)) mass[j] += cell;
      }
      break;
    }
  }
  return mass;
}

double luecking_sum(const MeasureRep& mu, const Lattice& lat, double alpha, double p,
                    const DiskGrid* grid) {
  if (!(p > 0.0)) throw std::invalid_argument("luecking_sum: p must be > 0");
  const auto mass = disk_masses(mu, lat, grid);
  std::vector<double> terms;
  terms.reserve(mass.size());
  for (std::size_t j = 0; j < mass.size(); ++j) {
    if (mass[j] == 0.0) continue;
    const double denom = std::pow(1.0 - std::abs(lat.points[j]), alpha);
    terms.push_back(std::pow(mass[j] / denom, p));
  }
  return pairwise_sum(terms);
}

}  // namespace disklab
