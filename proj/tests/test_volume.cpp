#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "seqplic/oracle.hpp"
#include "seqplic/truncation.hpp"
#include "seqplic/volume.hpp"

using namespace seqplic;

namespace {
const Vec3 e1{1, 0, 0};
const Vec3 e2{0, 1, 0};
const Vec3 e3{0, 0, 1};

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec3 v;
  do {
    v = {g(rng), g(rng), g(rng)};
  } while (norm(v) < 1e-6);
  return normalized(v);
}

Vec3 pick_secondary(std::mt19937_64& rng, const Vec3& n1) {
  Vec3 n2;
  do {
    n2 = random_unit(rng);
  } while (std::abs(dot(n1, n2)) > 1.0 - 1e-6);
  return n2;
}

std::pair<double, double> projection_span(const Polyhedron& p, const Vec3& n) {
  double lo = 1e300, hi = -1e300;
  for (const Vec3& v : p.vertices()) {
    const double l = dot(v - p.base_point(), n);
    lo = std::min(lo, l);
    hi = std::max(hi, l);
  }
  return {lo, hi};
}

}  // namespace

TEST_CASE("bracket table construction") {
  const Polyhedron cube = make_unit_cube();
  const BracketTable bx = build_bracket_table(cube.vertices(), e1, cube.base_point());
  REQUIRE(bx.distances().size() == 2);
  CHECK(bx.min() == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(bx.max() == doctest::Approx(0.5).epsilon(1e-14));

  const Vec3 diag = normalized({1, 1, 1});
  const BracketTable bd = build_bracket_table(cube.vertices(), diag, cube.base_point());
  REQUIRE(bd.distances().size() == 4);
  const double h = std::sqrt(3.0) / 2.0;
  CHECK(bd.distances()[0] == doctest::Approx(-h).epsilon(1e-13));
  CHECK(bd.distances()[1] == doctest::Approx(-h / 3.0).epsilon(1e-13));
  CHECK(bd.distances()[2] == doctest::Approx(h / 3.0).epsilon(1e-13));
  CHECK(bd.distances()[3] == doctest::Approx(h).epsilon(1e-13));

  const std::vector<Vec3> close = {{0, 0, 0}, {1e-15, 0, 0}, {1, 0, 0}};
  const BracketTable bc = build_bracket_table(close, e1, Vec3{});
  CHECK(bc.distances().size() == 2);
}

TEST_CASE("bracket locate follows the right-closed convention") {
  const BracketTable bt(std::vector<double>{0.0, 1.0, 2.0, 3.0});
  CHECK(bt.locate(-1.0) == 0);
  CHECK(bt.locate(0.0) == 0);
  CHECK(bt.locate(0.5) == 0);
  CHECK(bt.locate(1.0) == 0);
  CHECK(bt.locate(1.5) == 1);
  CHECK(bt.locate(2.0) == 1);
  CHECK(bt.locate(2.5) == 2);
  CHECK(bt.locate(3.0) == 2);
  CHECK(bt.locate(9.0) == 2);
}

TEST_CASE("primary fraction on the cube") {
  const Polyhedron cube = make_unit_cube();
  const VolumeEvaluation mid = primary_volume_fraction(cube, e1, 0.0);
  CHECK(mid.value == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(mid.d1 == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(primary_volume_fraction(cube, e1, -0.5).value == doctest::Approx(0.0));
  CHECK(primary_volume_fraction(cube, e1, 0.5).value == doctest::Approx(1.0));
}

TEST_CASE("primary fraction near the cube corner matches the corner tetrahedron") {
  const Polyhedron cube = make_unit_cube();
  const Vec3 diag = normalized({1, 1, 1});
  const double smin = -std::sqrt(3.0) / 2.0;
  const double n1n2n3 = std::pow(1.0 / std::sqrt(3.0), 3);
  for (const double delta : {1e-3, 1e-2, 0.1}) {
    const double s = smin + delta;
    const double expected = delta * delta * delta / (6.0 * n1n2n3);
    CHECK(primary_volume_fraction(cube, diag, s).value ==
          doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("primary fraction equals the oracle on random planes") {
  std::mt19937_64 rng(41);
  for (const Polyhedron& p : {make_unit_cube(), make_dodecahedron(), make_notched_cube()}) {
    for (int i = 0; i < 150; ++i) {
      const Vec3 n = random_unit(rng);
      const auto [lo, hi] = projection_span(p, n);
      std::uniform_real_distribution<double> ud(lo, hi);
      const double s = ud(rng);
      const double frac = primary_volume_fraction(p, n, s).value;
      const double vol = oracle_truncated_volume(p, {HalfSpace{n, s}});
      CHECK(std::abs(frac * p.volume() - vol) < 1e-12 * p.volume());
    }
  }
}

TEST_CASE("immersed edge length") {
  CHECK(immersed_edge_length({0, 0, 0}, {1, 0, 0}, e1, {0, 0, 0}, 0.25) ==
        doctest::Approx(0.25).epsilon(1e-14));
  // both vertices on the plane: full length
  CHECK(immersed_edge_length({0, 0, 0}, {0, 1, 0}, e1, {0, 0, 0}, 0.0) ==
        doctest::Approx(1.0).epsilon(1e-14));
  // degenerate exterior: zero
  CHECK(immersed_edge_length({0, 0, 0}, {1, 0, 0}, e1, {0, 0, 0}, 0.0) == 0.0);
  // degenerate interior: full
  CHECK(immersed_edge_length({0, 0, 0}, {1, 0, 0}, e1, {0, 0, 0}, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("secondary fraction on the half cube") {
  const Polyhedron cube = make_unit_cube();
  const TruncatedPolyhedron t = truncate_faces(cube, e1, 0.0, e2);
  CHECK(secondary_volume_fraction(t, e2, 0.0).value == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(secondary_volume_fraction(t, e2, -0.6).value == doctest::Approx(0.0));
  CHECK(secondary_volume_fraction(t, e2, 0.6).value == doctest::Approx(1.0));
  CHECK(secondary_volume_fraction(t, e2, 0.25).value == doctest::Approx(0.75).epsilon(1e-13));
}

TEST_CASE("secondary fraction equals the oracle on random double truncations") {
  std::mt19937_64 rng(43);
  for (const Polyhedron& p : {make_unit_cube(), make_dodecahedron(), make_notched_cube()}) {
    for (int i = 0; i < 120; ++i) {
      const Vec3 n1 = random_unit(rng);
      const Vec3 n2 = pick_secondary(rng, n1);
      const auto [lo1, hi1] = projection_span(p, n1);
      std::uniform_real_distribution<double> u1(lo1 + 0.02 * (hi1 - lo1),
                                                hi1 - 0.02 * (hi1 - lo1));
      const double s = u1(rng);
      const TruncatedPolyhedron t = truncate_faces(p, n1, s, n2);
      const auto [lo2, hi2] = projection_span(p, n2);
      std::uniform_real_distribution<double> u2(lo2, hi2);
      for (int j = 0; j < 4; ++j) {
        const double tt = u2(rng);
        const double vol = secondary_volume_fraction(t, n2, tt).value * t.cut_volume();
        const double ref =
            oracle_truncated_volume(p, {HalfSpace{-1.0 * n1, -s}, HalfSpace{n2, tt}});
        CHECK(std::abs(vol - ref) < 1e-12 * p.volume());
      }
    }
  }
}

TEST_CASE("fully wetted limit reproduces the cut volume") {
  std::mt19937_64 rng(47);
  const Polyhedron dode = make_dodecahedron();
  for (int i = 0; i < 25; ++i) {
    const Vec3 n1 = random_unit(rng);
    const Vec3 n2 = pick_secondary(rng, n1);
    const auto [lo, hi] = projection_span(dode, n1);
    std::uniform_real_distribution<double> ud(lo + 0.1 * (hi - lo), hi - 0.1 * (hi - lo));
    const TruncatedPolyhedron t = truncate_faces(dode, n1, ud(rng), n2);
    const double high = t.sF_max_global() + 1.0;
    CHECK(secondary_volume_fraction(t, n2, high).value == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("secondary fraction is monotone") {
  std::mt19937_64 rng(53);
  const Polyhedron notched = make_notched_cube();
  for (int i = 0; i < 20; ++i) {
    const Vec3 n1 = random_unit(rng);
    const Vec3 n2 = pick_secondary(rng, n1);
    const auto [lo1, hi1] = projection_span(notched, n1);
    std::uniform_real_distribution<double> u1(lo1 + 0.1 * (hi1 - lo1), hi1 - 0.1 * (hi1 - lo1));
    const TruncatedPolyhedron t = truncate_faces(notched, n1, u1(rng), n2);
    const auto [lo2, hi2] = projection_span(notched, n2);
    double prev = -1.0;
    for (int j = 0; j <= 50; ++j) {
      const double tt = lo2 + (hi2 - lo2) * j / 50.0;
      const VolumeEvaluation e = secondary_volume_fraction(t, n2, tt);
      CHECK(e.value >= prev - 1e-13);
      CHECK(e.d1 >= 0.0);
      prev = e.value;
    }
  }
}

TEST_CASE("derivatives match finite differences at bracket interiors") {
  std::mt19937_64 rng(59);
  const Polyhedron dode = make_dodecahedron();
  int checked = 0;
  while (checked < 100) {
    const Vec3 n1 = random_unit(rng);
    const Vec3 n2 = pick_secondary(rng, n1);
    const auto [lo1, hi1] = projection_span(dode, n1);
    std::uniform_real_distribution<double> u1(lo1 + 0.1 * (hi1 - lo1), hi1 - 0.1 * (hi1 - lo1));
    const TruncatedPolyhedron t = truncate_faces(dode, n1, u1(rng), n2);
    const BracketTable bt = build_bracket_table(t.cut_vertices(), n2, dode.base_point());
    const auto& d = bt.distances();
    if (d.size() < 2) continue;
    std::uniform_int_distribution<std::size_t> ui(0, d.size() - 2);
    const std::size_t bi = ui(rng);
    const double width = d[bi + 1] - d[bi];
    if (width < 1e-6) continue;
    std::uniform_real_distribution<double> ut(d[bi] + 0.1 * width, d[bi + 1] - 0.1 * width);
    const double tt = ut(rng);
    const double h = 1e-5 * width;

    const VolumeEvaluation c = secondary_volume_fraction(t, n2, tt);
    const VolumeEvaluation pl = secondary_volume_fraction(t, n2, tt + h);
    const VolumeEvaluation mi = secondary_volume_fraction(t, n2, tt - h);
    const double fd1 = (pl.value - mi.value) / (2.0 * h);
    const double fd2 = (pl.d1 - mi.d1) / (2.0 * h);
    if (std::abs(c.d1) > 1e-12 / h) {
      CHECK(std::abs(fd1 - c.d1) <= 1e-6 * std::max(1.0, std::abs(c.d1)));
      ++checked;
    }
    if (std::abs(c.d2) > 1e-6)
      CHECK(std::abs(fd2 - c.d2) <= 1e-6 * std::max(1.0, std::abs(c.d2)));
    // third derivative constant inside the bracket
    CHECK(std::abs(pl.d3 - mi.d3) < 1e-10 * std::max(1.0, std::abs(c.d3)));
  }
}

TEST_CASE("fraction is a single cubic within each bracket") {
  std::mt19937_64 rng(61);
  const Polyhedron cube = make_unit_cube();
  for (int trial = 0; trial < 40; ++trial) {
    const Vec3 n1 = random_unit(rng);
    const Vec3 n2 = pick_secondary(rng, n1);
    const auto [lo1, hi1] = projection_span(cube, n1);
    std::uniform_real_distribution<double> u1(lo1 + 0.1 * (hi1 - lo1), hi1 - 0.1 * (hi1 - lo1));
    const TruncatedPolyhedron t = truncate_faces(cube, n1, u1(rng), n2);
    const BracketTable bt = build_bracket_table(t.cut_vertices(), n2, cube.base_point());
    const auto& d = bt.distances();
    for (std::size_t bi = 0; bi + 1 < d.size(); ++bi) {
      const double w = d[bi + 1] - d[bi];
      if (w < 1e-3) continue;
      std::array<double, 5> xs{};
      std::array<double, 5> ys{};
      for (int i = 0; i < 5; ++i) {
        xs[static_cast<std::size_t>(i)] = d[bi] + w * (0.12 + 0.19 * i);
        ys[static_cast<std::size_t>(i)] =
            secondary_volume_fraction(t, n2, xs[static_cast<std::size_t>(i)]).value;
      }
      // divided-difference cubic through the first four points
      std::array<double, 4> c = {ys[0], ys[1], ys[2], ys[3]};
      for (int lvl = 1; lvl < 4; ++lvl)
        for (int i = 3; i >= lvl; --i)
          c[static_cast<std::size_t>(i)] =
              (c[static_cast<std::size_t>(i)] - c[static_cast<std::size_t>(i - 1)]) /
              (xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(i - lvl)]);
      double fit = c[3];
      for (int i = 2; i >= 0; --i)
        fit = fit * (xs[4] - xs[static_cast<std::size_t>(i)]) + c[static_cast<std::size_t>(i)];
      CHECK(std::abs(fit - ys[4]) < 1e-12);
    }
  }
}

TEST_CASE("fraction is continuous across bracket boundaries") {
  std::mt19937_64 rng(67);
  const Polyhedron dode = make_dodecahedron();
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 n1 = random_unit(rng);
    const Vec3 n2 = pick_secondary(rng, n1);
    const auto [lo1, hi1] = projection_span(dode, n1);
    std::uniform_real_distribution<double> u1(lo1 + 0.1 * (hi1 - lo1), hi1 - 0.1 * (hi1 - lo1));
    const TruncatedPolyhedron t = truncate_faces(dode, n1, u1(rng), n2);
    const BracketTable bt = build_bracket_table(t.cut_vertices(), n2, dode.base_point());
    const auto& d = bt.distances();
    for (std::size_t j = 1; j + 1 < d.size(); ++j) {
      const double wl = d[j] - d[j - 1];
      const double wr = d[j + 1] - d[j];
      if (wl < 1e-6 || wr < 1e-6) continue;
      // Taylor-extrapolate the left and right cubics to the boundary
      const double xl = d[j] - 0.25 * wl;
      const double xr = d[j] + 0.25 * wr;
      const VolumeEvaluation el = secondary_volume_fraction(t, n2, xl);
      const VolumeEvaluation er = secondary_volume_fraction(t, n2, xr);
      const double hl = d[j] - xl;
      const double hr = d[j] - xr;
      const double from_left =
          el.value + el.d1 * hl + 0.5 * el.d2 * hl * hl + el.d3 * hl * hl * hl / 6.0;
      const double from_right =
          er.value + er.d1 * hr + 0.5 * er.d2 * hr * hr + er.d3 * hr * hr * hr / 6.0;
      CHECK(std::abs(from_left - from_right) < 1e-12);
    }
  }
}

TEST_CASE("triple and plain branches agree near the window edge with a grazing line") {
  // the plane intersection line grazes the z faces: |<mu, n_F>| ~ 1e-6,
  // with the in-face trace of the secondary plane transversal to the face
  // edges (the generic configuration of the case split)
  const Polyhedron cube = make_unit_cube();
  const Vec3 n1 = e1;
  const double c = 1e-6;
  const double a = -0.3;
  const Vec3 n2 = normalized({a, c, std::sqrt(1.0 - a * a - c * c)});
  const TruncatedPolyhedron t = truncate_faces(cube, n1, 0.0, n2);

  int probed = 0;
  for (std::size_t k = 0; k < t.faces().size(); ++k) {
    const TruncatedFace& f = t.faces()[k];
    if (f.empty || !f.has_cut || !f.mu_ok) continue;
    if (std::abs(cube.face(k).normal.z) < 0.5) continue;  // the z faces graze
    CHECK(std::abs(dot(t.frame().mu, cube.face(k).normal)) < 1e-5);
    CHECK(f.sF_min < f.sT_min - 1e-9);  // the plain branch is really used below
    for (const double tt : {f.sT_min - 1e-9, f.sT_min + 1e-9}) {
      const double a_triple = immersed_face_area(t, k, tt, FaceBranch::force_triple);
      const double a_plain = immersed_face_area(t, k, tt, FaceBranch::force_plain);
      CHECK(std::abs(a_triple - a_plain) < 1e-10);
      ++probed;
    }
  }
  CHECK(probed == 4);
}
