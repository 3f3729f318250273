#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "critgabor/config.hpp"
#include "critgabor/io.hpp"
#include "support.hpp"

using namespace critgabor;
using nlohmann::json;
using testing::baseline;

namespace {

SampledSignal noisy(const Grid& g) {
  Rng rng(testing::kSeed);
  SampledSignal f(g);
  for (std::size_t n = 0; n < g.size(); ++n) f[n] = rng.complex_normal() * std::exp(-0.1 * g.x(n) * g.x(n));
  return f;
}

std::string field_of(const RunConfig& cfg) {
  try {
    validate(cfg);
  } catch (const ConfigError& e) {
    return e.field_name;
  }
  return "";
}

}  // namespace

TEST_CASE("shortest round-trip formatting") {
  Rng rng(testing::kSeed);
  for (int t = 0; t < 1000; ++t) {
    const double v = rng.normal() * std::pow(10.0, rng.uniform_int(-20, 20));
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-2.0) == "-2");
}

TEST_CASE("signal CSV and JSON round trips are exact") {
  const SampledSignal f = noisy(Grid(4.0, 1.0 / 32));
  std::stringstream ss;
  write_signal_csv(f, ss);
  const SampledSignal back = read_signal_csv(ss);
  CHECK(back.grid() == f.grid());
  CHECK(back.values() == f.values());

  const SampledSignal viaj = signal_from_json(json::parse(signal_to_json(f).dump()));
  CHECK(viaj.grid() == f.grid());
  CHECK(viaj.values() == f.values());

  const auto path = std::filesystem::temp_directory_path() / "critgabor_io_roundtrip.json";
  write_signal_file(f, path.string());
  CHECK(read_signal_file(path.string()).values() == f.values());
  std::filesystem::remove(path);
}

TEST_CASE("malformed signals") {
  std::stringstream empty;
  CHECK_THROWS_AS(read_signal_csv(empty), InputError);

  std::stringstream bad("x,re,im\n-1,0,0\n0,abc,0\n1,0,0\n");
  try {
    read_signal_csv(bad);
    FAIL("accepted a non-numeric cell");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  std::stringstream uneven("-1,0,0\n0,0,0\n0.7,0,0\n");
  CHECK_THROWS_AS(read_signal_csv(uneven), InputError);
  std::stringstream lopsided("-1,0,0\n0,0,0\n1,0,0\n2,0,0\n");
  CHECK_THROWS_AS(read_signal_csv(lopsided), InputError);

  CHECK_THROWS_AS(signal_from_json(json::parse(R"({"T": 1, "h": 0.5, "values": [[0,0]]})")), InputError);
  CHECK_THROWS_AS(read_signal_file("/nonexistent/critgabor.csv"), InputError);
}

TEST_CASE("coefficient JSON") {
  CoefficientSet c;
  c.set({1, -2, false}, cplx(0.25, -1.0 / 3));
  c.set({0, 0, true}, cplx(1e-17, 4.0));
  const CoefficientSet back = coefficients_from_json(json::parse(coefficients_to_json(c).dump()));
  CHECK(back.entries() == c.entries());
  const CoefficientSet bare = coefficients_from_json(json::parse(R"([{"k": 2, "j": 1, "sharp": false, "re": 1, "im": 0}])"));
  CHECK(bare.get({2, 1, false}) == cplx(1.0));
  CHECK_THROWS_AS(coefficients_from_json(json::parse(R"({"coefficients": 3})")), InputError);
  CHECK_THROWS_AS(coefficients_from_json(json::parse(R"([{"k": 1}])")), InputError);
}

TEST_CASE("order-m JSON") {
  OrderMExpansion e;
  e.m = 1;
  e.nodes = {{0, 0, true}, {1, 0, true}};
  e.sharp_block = {cplx(0.5, 0.5), cplx(-1, 0)};
  e.lattice.set({0, 0, false}, 2.0);
  OrderMExpansion back;
  REQUIRE(order_m_from_json(json::parse(expansion_to_json(e).dump()), back));
  CHECK(back.nodes == e.nodes);
  CHECK(back.sharp_block == e.sharp_block);
  OrderMExpansion none;
  CHECK_FALSE(order_m_from_json(coefficients_to_json(e.lattice), none));
}

TEST_CASE("Zak field JSON") {
  ZakField z(8);
  Rng rng(testing::kSeed);
  for (auto& v : z.values()) v = rng.complex_normal();
  const ZakField back = zak_from_json(json::parse(zak_to_json(z).dump()));
  CHECK(back.values() == z.values());
}

TEST_CASE("domain JSON") {
  const PhaseDomain d = domain_from_json(json::parse(R"({"type": "disk", "center": [1, 0], "radius": 2})"));
  CHECK(d.contains({2.5, 0}));
  CHECK_FALSE(d.contains({3.5, 0}));
  const PhaseDomain r = domain_from_json(json::parse(R"({"type": "rect", "p": [-1, 1], "theta": [0, 2]})"));
  CHECK(r.contains({0, 1.5}));
  const PhaseDomain poly = domain_from_json(json::parse(R"({"type": "polygon", "vertices": [[0,0],[2,0],[0,2]]})"));
  CHECK(poly.contains({0.5, 0.5}));
  const PhaseDomain u = domain_from_json(json::parse(
      R"({"type": "union", "parts": [{"type": "disk", "center": [0, 0], "radius": 1},
                                      {"type": "disk", "center": [4, 0], "radius": 1}]})"));
  CHECK(u.contains({4.5, 0}));
  CHECK_FALSE(u.contains({2, 0}));
  CHECK_THROWS_AS(domain_from_json(json::parse(R"({"type": "ellipse"})")), InputError);
}

TEST_CASE("config defaults and validation") {
  const RunConfig def;
  CHECK_NOTHROW(validate(def));
  CHECK(def.grid().size() == 1025);

  RunConfig odd;
  odd.N = 63;
  CHECK(field_of(odd) == "N");
  RunConfig q0;
  q0.Q = 0;
  CHECK(field_of(q0) == "Q");
  RunConfig m7;
  m7.m = 7;
  CHECK(field_of(m7) == "m");
  RunConfig box;
  box.box = {-9, 9, -8, 8};
  CHECK(field_of(box) == "box");
  RunConfig mismatch;
  mismatch.h = 1.0 / 48;
  CHECK_FALSE(field_of(mismatch).empty());
  RunConfig neg;
  neg.delta = -1;
  CHECK(field_of(neg) == "delta");
}

TEST_CASE("config JSON, overrides and hash") {
  const RunConfig def;
  const RunConfig back = config_from_json(config_to_json(def));
  CHECK(config_to_json(back) == config_to_json(def));
  CHECK(config_hash(back) == config_hash(def));
  CHECK(config_hash(def).size() == 16);

  CHECK_THROWS_AS(config_from_json(json::parse(R"({"bogus": 1})")), ConfigError);
  CHECK(config_from_json(json::parse(R"({"R": 9})")).cutoff == 9);

  RunConfig c;
  apply_override(c, "Q=2");
  CHECK(c.Q == 2);
  apply_override(c, "output=out.json");
  CHECK(c.output == "out.json");
  CHECK(config_hash(c) == config_hash([] {
          RunConfig q;
          q.Q = 2;
          return q;
        }()));
  apply_override(c, "sharp=[1,-1]");
  CHECK(c.sharp_k == 1);
  CHECK(c.sharp_j == -1);
  CHECK(config_hash(c) != config_hash(def));
  CHECK_THROWS_AS(apply_override(c, "novalue"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "N=\"sixty\""), ConfigError);

  const auto path = std::filesystem::temp_directory_path() / "critgabor_cfg.json";
  {
    std::ofstream os(path);
    os << R"({"N": 128, "h": 0.0078125})";
  }
  const RunConfig loaded = load_config(path.string());
  CHECK(loaded.N == 128);
  CHECK(loaded.T == 8.0);
  {
    std::ofstream os(path);
    os << "{ not json";
  }
  CHECK_THROWS_AS(load_config(path.string()), InputError);
  std::filesystem::remove(path);
}
