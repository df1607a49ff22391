#include <cmath>
#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "fracradon/io.hpp"
#include "fracradon/radon.hpp"

using namespace fracradon;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "fracradon_io_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("body specs") {
  const auto ball = body_from_json({{"dim", 3}, {"family", "ball"}, {"params", {{"r", 2.0}}}});
  CHECK(ball.dim() == 3);
  CHECK(*ball.exact_volume() == Approx(unit_ball_volume(3) * 8.0));
  const auto cube = body_from_json(
      {{"dim", 2}, {"family", "cube"}, {"params", {{"a", 0.3}}}, {"volume_one", true}});
  CHECK(volume(cube).value == Approx(1.0).epsilon(1e-8));
  const auto ell = body_from_json({{"dim", 2}, {"family", "ellipsoid"}, {"params", {{"axes", {1.0, 2.0}}}}});
  CHECK(ell.dim() == 2);
  CHECK_THROWS_AS(body_from_json({{"dim", 2}, {"family", "pyramid"}}), ConfigError);
  CHECK_THROWS_AS(load_body(scratch("missing.json")), ConfigError);
  CHECK(volume(named_body("l1_ball", 3)).value == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("tabulated body") {
  const auto p = scratch("circle.csv");
  {
    std::ofstream out(p);
    out << "u1,u2,rho\n";
    for (int i = 0; i < 720; ++i) {
      const double a = 2.0 * M_PI * i / 720;
      out << std::cos(a) << "," << std::sin(a) << ",1.5\n";
    }
  }
  const auto K = read_tabulated_body(p, true);
  CHECK(volume(K).value == Approx(M_PI * 2.25).epsilon(1e-4));
}

TEST_CASE("density specs") {
  const auto f = density_from_json({{"family", "gaussian"}, {"params", {{"sigma", 0.5}}}}, 2);
  const double o[2] = {0.0, 0.0};
  CHECK(f(o) == Approx(1.0));
  const auto ind = density_from_json(
      {{"family", "indicator"}, {"params", {{"body", {{"dim", 2}, {"family", "ball"}, {"params", {{"r", 1.0}}}}}}}},
      2);
  const double out[2] = {1.1, 0.0};
  CHECK(ind(o) == 1.0);
  CHECK(ind(out) == 0.0);
  CHECK_THROWS_AS(density_from_json({{"family", "laplace"}}, 2), ConfigError);
}

TEST_CASE("field files") {
  GridField g(2, 3.0, 8);
  for (long i = 0; i < g.size(); ++i) g[i] = 0.25 * i - 1.0 / 3.0;
  const auto p = scratch("field.bin");
  write_field(g, p);
  const auto side = read_json(fs::path(p).replace_extension(".json"));
  CHECK(side["n"] == 2);
  CHECK(side["M"] == 8);
  CHECK(side["L"].get<double>() == 3.0);
  CHECK(fs::file_size(p) == 64 * sizeof(double));
  const auto h = read_field(p);
  CHECK(h.points() == 8);
  CHECK(h.half_width() == 3.0);
  for (long i = 0; i < g.size(); ++i) CHECK(h[i] == g[i]);

  const auto csv = field_csv(GridField(1, 1.0, 4));
  CHECK(std::count(csv.begin(), csv.end(), '\n') >= 4);
  CHECK_THROWS(field_csv(GridField(3, 1.0, 2)));
}

TEST_CASE("json output") {
  const auto s = dump_json({{"b", 1}, {"a", 2}});
  CHECK(s == "{\n  \"a\": 2,\n  \"b\": 1\n}\n");
}

TEST_CASE("profiles by name") {
  const auto p = named_profile("gaussian");
  CHECK(p(0.0) == Approx(1.0));
  CHECK_THROWS(named_profile("nonexistent_profile_family"));
}
