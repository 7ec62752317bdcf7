#include <cmath>
#include <random>

#include "disklab/hyperbolic.hpp"
#include "doctest.h"

using namespace disklab;

TEST_CASE("mobius maps and the bergman metric") {
  // beta(0, 0.6) = (1/2) log(1.6/0.4) = log 2
  CHECK(bergman_metric(0.0, 0.6) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(bergman_metric(cplx(0.3, -0.2), cplx(0.3, -0.2)) == 0.0);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-0.7, 0.7);
  for (int it = 0; it < 200; ++it) {
    const cplx a(U(rng), U(rng)), z(U(rng), U(rng)), w(U(rng), U(rng));
    // involution
    CHECK(std::abs(mobius(a, mobius(a, z)) - z) <= 1e-12);
    // symmetry and invariance
    CHECK(bergman_metric(z, w) == doctest::Approx(bergman_metric(w, z)).epsilon(1e-12));
    CHECK(bergman_metric(mobius(a, z), mobius(a, w)) ==
          doctest::Approx(bergman_metric(z, w)).epsilon(1e-11));
  }
  CHECK_THROWS_AS(bergman_metric(cplx(1.0, 0.0), 0.0), std::domain_error);
}

TEST_CASE("lattice construction and invariants") {
  const double r_max = 1.0 - std::exp2(-8);
  Lattice lat = build_lattice(1.0, r_max);
  CHECK(lat.points[0] == cplx(0.0));

  auto rep = lat.verify(20000);
  CHECK(rep.covering);
  CHECK(rep.min_separation >= 0.5 - 1e-12);
  CHECK(rep.max_multiplicity_r >= 1);
  CHECK(rep.max_multiplicity_2r < 200);  // finite and modest

  // invariants across the requested r values at a deeper clip; the overlap
  // count at 2r grows quickly with r (hyperbolic area), stays finite
  for (double r : {0.5, 2.0}) {
    Lattice l = build_lattice(r, 1.0 - std::exp2(-10));
    auto v = l.verify(20000);
    CHECK(v.covering);
    CHECK(v.min_separation >= r / 2.0 - 1e-12);
    CHECK(v.max_multiplicity_2r < 5000);
  }

  // point count grows like 1/(1-r_max) up to constants
  const double n8 = double(build_lattice(1.0, 1.0 - std::exp2(-8)).points.size());
  const double n10 = double(build_lattice(1.0, 1.0 - std::exp2(-10)).points.size());
  const double growth = n10 / n8;
  CHECK(growth > 2.0);
  CHECK(growth < 8.0);

  CHECK_THROWS_AS(build_lattice(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(build_lattice(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("measures: validation, mass, json") {
  auto mu = MeasureRep::atomic({{cplx(0.5, 0.0), 0.5}, {cplx(-0.5, 0.0), 0.5}});
  CHECK(mu.total_mass() == 1.0);
  CHECK_THROWS_AS(MeasureRep::atomic({{cplx(1.0, 0.0), 1.0}}), std::domain_error);
  CHECK_THROWS_AS(MeasureRep::atomic({{cplx(0.0, 0.0), -1.0}}), std::invalid_argument);

  // radial density f(r) = 1: total mass = int 2r dr = r1^2 span
  auto rho = MeasureRep::radial_density({{0.0, 1.0}, {0.9, 1.0}});
  CHECK(rho.total_mass() == doctest::Approx(0.81).epsilon(1e-14));

  MeasureRep mu2 = MeasureRep::from_json(mu.to_json());
  CHECK(mu2.atoms.size() == 2);
  CHECK(mu2.total_mass() == 1.0);
}

TEST_CASE("luecking sums") {
  Lattice lat = build_lattice(1.0, 1.0 - std::exp2(-8));

  // mu = 0
  CHECK(luecking_sum(MeasureRep::atomic({}), lat, 0.5, 1.0) == 0.0);

  // unit atom at 0: disks containing it each get mass 1
  auto delta0 = MeasureRep::atomic({{cplx(0.0, 0.0), 1.0}});
  const auto disks = lat.disks_containing(0.0, lat.r);
  const double sum = luecking_sum(delta0, lat, 0.5, 1.0);
  // every containing disk contributes (1/(1-|a_j|)^alpha)^p
  double expect = 0.0;
  for (std::size_t j : disks) expect += 1.0 / std::sqrt(1.0 - std::abs(lat.points[j]));
  CHECK(sum == doctest::Approx(expect).epsilon(1e-13));
  CHECK(!disks.empty());

  // homogeneity: L(c mu) = c^p L(mu)
  auto mu = MeasureRep::atomic({{cplx(0.3, 0.1), 0.25}, {cplx(-0.2, 0.6), 1.5}});
  auto mu3 = MeasureRep::atomic({{cplx(0.3, 0.1), 0.75}, {cplx(-0.2, 0.6), 4.5}});
  for (double p : {0.6, 1.0, 1.5}) {
    const double l1 = luecking_sum(mu, lat, 1.0, p);
    const double l3 = luecking_sum(mu3, lat, 1.0, p);
    CHECK(l3 == doctest::Approx(std::pow(3.0, p) * l1).epsilon(1e-12));
  }
}

TEST_CASE("luecking sums are lattice-robust on an atomic test set") {
  Lattice fine = build_lattice(0.5, 1.0 - std::exp2(-8));
  Lattice coarse = build_lattice(1.0, 1.0 - std::exp2(-8));
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<std::pair<cplx, double>> atoms;
  for (int i = 0; i < 12; ++i)
    atoms.emplace_back(std::polar(0.95 * U(rng), 2.0 * kPi * U(rng)), 0.1 + U(rng));
  auto mu = MeasureRep::atomic(atoms);
  for (double p : {0.6, 1.0, 1.5}) {
    const double a = luecking_sum(mu, fine, 0.5, p);
    const double b = luecking_sum(mu, coarse, 0.5, p);
    CHECK(a > 0.0);
    CHECK(b > 0.0);
    const double ratio = a / b;
    CHECK(ratio < 100.0);
    CHECK(ratio > 0.01);
  }
}
