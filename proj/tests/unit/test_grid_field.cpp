#include <cmath>
#include <filesystem>
#include <fstream>
#include <algorithm>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "duhamel/diff.hpp"
#include "duhamel/field_io.hpp"
#include "duhamel/parallel.hpp"
#include "duhamel/spectral.hpp"

using namespace duhamel;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("grid geometry") {
  const auto g = Grid::periodic({8, 9}, {0.5, 1.0}, {1.0, -1.0});
  CHECK(g.size() == 72);
  CHECK(g.stride(0) == 9);
  CHECK(g.stride(1) == 1);
  CHECK(g.coord(0, 2) == 2.0);
  CHECK(g.extent(1) == 9.0);
  const auto idx = g.unflatten(19);
  CHECK(idx[0] == 2);
  CHECK(idx[1] == 1);
  CHECK(g.flatten(idx) == 19);
  CHECK(g.point(19)[1] == 0.0);
  CHECK(g.padded() == g);
  const auto f = Grid::free_space({10}, {0.1}, {0.0}, 2.0);
  CHECK(f.padded().points(0) == 20);
  CHECK(f.padding_offset()[0] == 5);
  CHECK(f.padded().coord(0, 5) == doctest::Approx(0.0));
  CHECK_THROWS_AS(Grid::periodic({4}, {1.0}, {0.0}), ConfigError);
  CHECK_THROWS_AS(Grid::periodic({8}, {-1.0}, {0.0}), ConfigError);
  CHECK_THROWS_AS(Grid::periodic({8, 8, 8, 8}, {1, 1, 1, 1}, {0, 0, 0, 0}), ConfigError);
  CHECK_THROWS_AS(Grid::free_space({8}, {1.0}, {0.0}, 0.5), ConfigError);
}

TEST_CASE("fields reject non-finite values and clamp-extend") {
  const auto g = Grid::free_space({8}, {1.0}, {0.0});
  CHECK_THROWS_AS(ScalarField(g, {1.0, NAN, 0, 0, 0, 0, 0, 0}), NumericalError);
  CHECK_THROWS_AS(ScalarField(g, {1.0}), ConfigError);
  const ScalarField f(g, {1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(f.max_abs() == 8.0);
  CHECK(f.min() == 1.0);
  const auto big = Grid::free_space({12}, {1.0}, {-2.0});
  const auto e = extend_clamped(f, big);
  CHECK(std::vector<double>(e.values().begin(), e.values().end()) ==
        std::vector<double>{1, 1, 1, 2, 3, 4, 5, 6, 7, 8, 8, 8});
  const auto back = extend_clamped(e, g);
  CHECK(max_abs_diff(back, f) == 0.0);
  const auto u = VectorField::sample(Grid::periodic_1d(8, 1.0), [](const Point& p) { return Point{p[0], 0, 0}; });
  CHECK(u.ncomp() == 1);
  CHECK(u.max_norm() == doctest::Approx(7.0 / 8));
}

TEST_CASE("trajectories validate their time axis") {
  const auto g = Grid::periodic_1d(8, 1.0);
  const auto z = ScalarField::constant(g, 0.0);
  CHECK_THROWS_AS(ScalarTrajectory({0.0, 0.0}, {z, z}), ConfigError);
  CHECK_THROWS_AS(ScalarTrajectory({0.0}, {z, z}), ConfigError);
  CHECK_THROWS_AS(ScalarTrajectory({0.0, 1.0}, {z, ScalarField::constant(Grid::periodic_1d(9, 1.0), 0.0)}),
                  ConfigError);
  const ScalarTrajectory ok({0.0, 0.5}, {z, z});
  CHECK(ok.size() == 2);
}

TEST_CASE("spectral round trip and derivatives") {
  const auto g = Grid::periodic({16, 8}, {2 * kPi / 16, 2 * kPi / 8}, {0, 0});
  const auto sp = Spectral::for_grid(g);
  CHECK(sp.get() == Spectral::for_grid(g).get());
  const auto f = ScalarField::sample(g, [](const Point& p) { return std::sin(2 * p[0]) * std::cos(p[1]) + 0.3; });
  std::vector<double> hat(2 * sp->modes()), back(g.size());
  sp->forward(f.values(), hat);
  sp->inverse(hat, back);
  CHECK(max_abs_diff(back, f.values()) <= 1e-14);

  const auto dx = derivative(f, 0);
  const auto want = ScalarField::sample(g, [](const Point& p) { return 2 * std::cos(2 * p[0]) * std::cos(p[1]); });
  CHECK(max_abs_diff(dx, want.values()) <= 1e-12);
  const auto lap = laplacian(f);
  const auto wl = ScalarField::sample(g, [](const Point& p) { return -5 * std::sin(2 * p[0]) * std::cos(p[1]); });
  CHECK(max_abs_diff(lap, wl) <= 1e-12);
}

TEST_CASE("free-space differences are fourth order inside") {
  auto err = [](std::size_t n) {
    const double h = 2.0 / (n - 1);
    const auto g = Grid::free_space({n}, {h}, {-1.0});
    const auto f = ScalarField::sample(g, [](const Point& p) { return std::sin(2 * p[0]); });
    const auto d = derivative(f, 0);
    double m = 0;
    for (std::size_t i = 2; i + 2 < n; ++i) m = std::max(m, std::abs(d[i] - 2 * std::cos(2 * g.coord(0, i))));
    return m;
  };
  CHECK(std::log2(err(41) / err(81)) == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("curl residual sees rotation, not gradients") {
  const auto g = Grid::periodic({32, 32}, {2 * kPi / 32, 2 * kPi / 32}, {0, 0});
  const auto grad = VectorField::sample(g, [](const Point& p) {
    return Point{std::cos(p[0]) * std::sin(p[1]), std::sin(p[0]) * std::cos(p[1]), 0};
  });
  CHECK(curl_residual(grad) <= 1e-12);
  const auto rot = VectorField::sample(g, [](const Point& p) { return Point{-std::sin(p[1]), std::sin(p[0]), 0}; });
  CHECK(curl_residual(rot) == doctest::Approx(2.0).epsilon(1e-10));
  const auto fg = Grid::free_space({10, 10}, {0.1, 0.1}, {0, 0});
  CHECK_FALSE(interior_node(fg, 0, 2));
  CHECK(interior_node(fg, fg.flatten({5, 5, 0}), 2));
}

TEST_CASE("CSF1 round trip and malformed input") {
  const auto g = Grid::free_space({8, 9}, {0.5, 0.25}, {-1.0, 2.0});
  const auto a = ScalarField::sample(g, [](const Point& p) { return p[0] + 10 * p[1]; });
  const auto b = ScalarField::sample(g, [](const Point& p) { return std::sin(p[0] * p[1]); });
  const auto path = (std::filesystem::temp_directory_path() / "duhamel_unit_io.csf1").string();
  write_csf1_file(path, {a, b});
  const auto recs = read_csf1_file(path);
  REQUIRE(recs.size() == 2);
  CHECK(recs[1].grid().points() == g.points());
  CHECK(recs[1].grid().boundary() == Boundary::FreeSpaceTruncated);
  CHECK(max_abs_diff(recs[1], b) == 0.0);
  const auto hdrs = read_csf1_headers(path);
  CHECK(hdrs.size() == 2);
  CHECK(hdrs[0].value_count() == 72);
  CHECK(hdrs[0].spacing[1] == 0.25);
  std::filesystem::remove(path);

  std::istringstream bad_magic(std::string("CSF2\x01\x00\x00\x00", 8));
  Csf1Header h;
  std::vector<double> v;
  CHECK_THROWS(read_csf1(bad_magic, h, v));
  std::stringstream trunc;
  write_csf1(trunc, a);
  std::string s = trunc.str();
  s.resize(s.size() - 3);
  std::istringstream cut(s);
  CHECK_THROWS(read_csf1(cut, h, v));
  std::istringstream empty("");
  CHECK_FALSE(read_csf1(empty, h, v));
}

TEST_CASE("CSV output uses 17 significant digits") {
  const auto g = Grid::periodic_1d(8, 1.0);
  const ScalarField f(g, {1.0 / 3, 2, 0, 0, 0, 0, 0, 0});
  std::ostringstream os;
  write_csv(os, f, "G");
  const auto text = os.str();
  CHECK(text.find("G") != std::string::npos);
  CHECK(text.find("0.33333333333333331") != std::string::npos);
}

TEST_CASE("parallel_for covers every index once") {
  const auto before = thread_count();
  set_thread_count(3);
  std::vector<int> hits(1001, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::count(hits.begin(), hits.end(), 1) == 1001);
  set_thread_count(before);
}
