#include <doctest.h>

#include <cmath>
#include <sstream>

#include "krein/errors.hpp"
#include "krein/point_interaction.hpp"
#include "krein/serialize.hpp"
#include "krein/sweep.hpp"

using namespace krein;

TEST_CASE("twelve significant digits") {
  CHECK(fmt12(1.0 / 3.0) == "0.333333333333");
  CHECK(num(1.0 / 3.0).dump() == "0.333333333333");
  CHECK(num(NAN).is_null());
  CHECK(num(INFINITY).is_null());
  CHECK(num(-0.25).dump() == "-0.25");
}

TEST_CASE("JSON round trips") {
  const CMat2 m(1.0, kI, cplx(0.5, -0.25), -2.0);
  CHECK(distance(cmat2_from_json(to_json(m)), m) == 0.0);
  CHECK_THROWS_AS(cmat2_from_json(json::array({1, 2})), ConfigError);

  const ExtParams p(0.5, 1.0, 2.0, 3.0);
  const ExtParams q = ext_params_from_json(to_json(p));
  CHECK(q.zeta() == p.zeta());
  CHECK(q.omega() == p.omega());
  CHECK_THROWS_AS(ext_params_from_json(json{{"zeta", 1}}), ConfigError);

  const json cls = to_json(classify({0.3, 0.0, 0.0, 0.0}));
  CHECK(cls["stable"] == true);
  CHECK(cls["chi"].get<double>() == doctest::Approx(-0.3));
  CHECK(to_json(classify({1.0, 1.0, 0, 0}))["chi"].is_null());

  const json rep = to_json(closed_form_eigenvalues({0.0, kPi / 2, 0.0, 0.0}));
  CHECK(rep["eigenvalues"][0]["mult"] == 2);
  CHECK(rep["eigenvalues"][0]["r"].get<double>() == -0.25);
}

TEST_CASE("axis parsing") {
  auto a = parse_axis("0.5");
  CHECK(a.n == 1);
  CHECK(a.values() == std::vector<double>{0.5});
  a = parse_axis("-2:2:5");
  CHECK(a.values() == std::vector<double>{-2, -1, 0, 1, 2});
  for (const char* bad : {"", "1:2", "1:2:0", "a:b:3", "1:2:2.5", "1:2:3:4", "1:2:"}) {
    CHECK_THROWS_AS(parse_axis(bad), ConfigError);
  }
}

TEST_CASE("sweep matches per-cell classification") {
  SweepSpec spec{parse_axis("-2:2:41"), parse_axis("0:3.14159:41"), parse_axis("0"), parse_axis("0")};
  const auto rows = run_sweep(spec, 3);
  REQUIRE(rows.size() == 41 * 41);
  for (const auto& r : rows) {
    const bool predicted = std::abs(std::tanh(r.zeta)) < std::abs(std::cos(r.phi));
    CHECK(r.stable == predicted);
    CHECK(r.stable == r.chi.has_value());
  }
  CHECK(rows[0].zeta == -2.0);
  CHECK(rows[1].phi > rows[0].phi);
}

TEST_CASE("sweep output does not depend on worker count") {
  SweepSpec spec{parse_axis("-1:1:9"), parse_axis("0:3:9"), parse_axis("0:1:3"), parse_axis("0:2:2")};
  std::ostringstream one;
  std::ostringstream many;
  write_sweep_csv(one, run_sweep(spec, 1));
  write_sweep_csv(many, run_sweep(spec, 7));
  CHECK(one.str() == many.str());
  CHECK(one.str().rfind("zeta,phi,xi,omega,stable,upsilon,self_adjoint,chi,k_plus_abs,k_minus_abs,eig1,eig2\n", 0) == 0);
  CHECK_THROWS_AS(run_sweep(spec, 0), ConfigError);
}

TEST_CASE("degrees and single-cell grids") {
  SweepSpec spec{parse_axis("0"), parse_axis("90"), parse_axis("0"), parse_axis("0"), true};
  const auto rows = run_sweep(spec, 1);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].upsilon);
  REQUIRE(rows[0].eig1);
  CHECK(*rows[0].eig1 == doctest::Approx(-0.25));
  CHECK(*rows[0].eig2 == doctest::Approx(-0.25));
}
