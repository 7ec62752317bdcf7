#include <cstdio>
#include <fstream>

#include "disklab/io.hpp"
#include "doctest.h"

using namespace disklab;

TEST_CASE("deterministic formatting") {
  CHECK(fmt17(std::sqrt(2.0)) == "1.4142135623730951");
  CHECK(fmt17(0.0) == "0");
  CHECK(fmt17(-1.0 / 3.0) == "-0.33333333333333331");
  // round trip
  CHECK(std::stod(fmt17(0.1)) == 0.1);
}

TEST_CASE("spectrum and schatten exports") {
  Spectrum s;
  s.values = {2.0, 1.0, 0.5};
  const std::string csv = spectrum_csv(s, 1);
  CHECK(csv == "n,lambda_n\n1,2\n2,1\n3,0.5\n");
  const std::string js = schatten_json(s, {1.0, 2.0});
  CHECK(js.find("\"norm\": 3.5") != std::string::npos);
}

TEST_CASE("norm table csv") {
  NormResult r;
  r.functional = "Bp";
  r.p = 2.0;
  r.value = 2.0;
  r.oracle = 2.0;
  const std::string csv = norm_table_csv({{"z^2", r}});
  CHECK(csv.find("symbol,functional,p,alpha,gamma,clip,value,err,oracle\n") == 0);
  CHECK(csv.find("z^2,Bp,2,0,0,0,2,0,2\n") != std::string::npos);
}

TEST_CASE("manifest hashing is canonical") {
  RunManifest m1, m2;
  m1.command = m2.command = "spectrum";
  m1.config["alpha"] = "0.5";
  m1.config["n"] = "64";
  m2.config["n"] = "64";
  m2.config["alpha"] = "0.5";
  CHECK(m1.config_hash() == m2.config_hash());
  m2.config["alpha"] = "1";
  CHECK(m1.config_hash() != m2.config_hash());
  CHECK(m1.to_json().find("config_hash") != std::string::npos);
}

TEST_CASE("thread count does not change output bytes") {
  GridParams p;
  p.clip_log2 = 10;
  DiskGrid g = DiskGrid::uniform(p);
  auto f = [&]() {
    return g.integrate([](const DiskGrid::Node& nd) {
      return std::cos(3.0 * std::arg(nd.z)) * std::cos(3.0 * std::arg(nd.z)) /
             std::sqrt(nd.delta);
    });
  };
  set_thread_count(1);
  const std::string a = fmt17(f());
  set_thread_count(4);
  const std::string b = fmt17(f());
  set_thread_count(0);
  CHECK(a == b);
}

TEST_CASE("write_file returns the content hash") {
  const std::string path = "test_io_tmp_file.txt";
  const std::string h = write_file(path, "hello\n");
  CHECK(h == hex64(fnv1a64("hello\n")));
  std::ifstream is(path);
  std::string line;
  std::getline(is, line);
  CHECK(line == "hello");
  std::remove(path.c_str());
}
