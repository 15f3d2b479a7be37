#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "seqplic/errors.hpp"
#include "seqplic/plane.hpp"

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
}  // namespace

TEST_CASE("degeneracy classification") {
  CHECK(degeneracy_class(e1, e1) == DegeneracyClass::parallel);
  CHECK(degeneracy_class(e1, -1.0 * e1) == DegeneracyClass::antiparallel);
  CHECK(degeneracy_class(e1, e2) == DegeneracyClass::general);
  // a 1e-5 tilt leaves gamma about 5e-11 away from 1: still general
  CHECK(degeneracy_class(e1, normalized({1.0, 1e-5, 0.0})) == DegeneracyClass::general);
  CHECK(degeneracy_class(e1, normalized({1.0, 1e-7, 0.0})) == DegeneracyClass::parallel);
}

TEST_CASE("intersection frame for orthogonal normals") {
  const IntersectionFrame fr = intersection_frame(e1, e2, 0.0, Vec3{0, 0, 0});
  CHECK(norm(fr.y0) < 1e-15);
  CHECK(norm(fr.tau - e2) < 1e-15);
  CHECK(norm(fr.mu - e3) < 1e-15);

  const IntersectionFrame fr2 = intersection_frame(e1, e2, 0.3, Vec3{0, 0, 0});
  CHECK(norm(fr2.y0 - Vec3{0.3, 0, 0}) < 1e-15);
}

TEST_CASE("frame satisfies its defining constraints") {
  const Vec3 n1 = e1;
  const Vec3 n2 = normalized(e1 + e2);
  const IntersectionFrame fr = intersection_frame(n1, n2, 0.0, Vec3{0, 0, 0});
  CHECK(dot(fr.tau, n2) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(dot(fr.tau, n1)) < 1e-13);
  CHECK(std::abs(dot(fr.mu, n1)) < 1e-13);
  CHECK(std::abs(dot(fr.mu, n2)) < 1e-13);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const Vec3 a = random_unit(rng);
    Vec3 b = random_unit(rng);
    if (std::abs(dot(a, b)) > 1.0 - 1e-6) continue;
    std::uniform_real_distribution<double> ud(-2.0, 2.0);
    const double s = ud(rng);
    const Vec3 base{ud(rng), ud(rng), ud(rng)};
    const IntersectionFrame fr3 = intersection_frame(a, b, s, base);
    CHECK(dot(fr3.y0 - base, a) == doctest::Approx(s).epsilon(1e-10));
    CHECK(std::abs(dot(fr3.y0 - base, b)) < 1e-10);
    CHECK(dot(fr3.tau, b) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(dot(fr3.tau, a)) < 1e-10);
  }
}

TEST_CASE("degenerate normals are rejected") {
  CHECK_THROWS_AS(intersection_frame(e1, e1, 0.0, Vec3{}), DegenerateNormals);
  CHECK_THROWS_AS(intersection_frame(e1, -1.0 * e1, 0.0, Vec3{}), DegenerateNormals);
}

TEST_CASE("frame conditioning close to parallel normals") {
  // gamma = +-(1 - 1e-6): the 1/(1-gamma^2) factors amplify roundoff by
  // ~5e5, so the defining constraints hold to a correspondingly reduced
  // precision
  for (const double sign : {1.0, -1.0}) {
    const double gamma = sign * (1.0 - 1e-6);
    const Vec3 n2{gamma, sign * std::sqrt(1.0 - gamma * gamma), 0.0};
    const IntersectionFrame fr = intersection_frame(e1, normalized(n2), 0.37, Vec3{});
    CHECK(dot(fr.y0, e1) == doctest::Approx(0.37).epsilon(1e-9));
    CHECK(std::abs(dot(fr.y0, n2)) < 1e-9);
    CHECK(dot(fr.tau, n2) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(dot(fr.tau, e1)) < 1e-9 * norm(fr.tau));
  }
}

TEST_CASE("face origin on the bottom cube face") {
  const Vec3 base{0.5, 0.5, 0.5};
  const IntersectionFrame fr = intersection_frame(e1, e2, 0.5, base);
  const Vec3 x0 = face_origin(fr, 0.2, Vec3{0, 0, 0}, -1.0 * e3);
  CHECK(norm(x0 - Vec3{1.0, 0.7, 0.0}) < 1e-13);

  // defining property: coplanar to both planes and to the face
  CHECK(std::abs(dot(x0 - base, e1) - 0.5) < 1e-12);
  CHECK(std::abs(dot(x0 - base, e2) - 0.2) < 1e-12);
  CHECK(std::abs(x0.z) < 1e-12);
}

TEST_CASE("face origin rejects a face parallel to the line") {
  // the line direction is mu = e3; a face with normal orthogonal to it never
  // meets the line in a unique point
  const IntersectionFrame fr = intersection_frame(e1, e2, 0.0, Vec3{});
  CHECK_THROWS_AS(face_origin(fr, 0.0, Vec3{0, 0, 0}, e1), LineParallelToFace);
  CHECK_NOTHROW(face_origin(fr, 0.0, Vec3{0, 0, 0}, e3));
}

TEST_CASE("face origin is affine in t with the projected tangent") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const Vec3 n1 = random_unit(rng);
    const Vec3 n2 = random_unit(rng);
    if (std::abs(dot(n1, n2)) > 1.0 - 1e-6) continue;
    const Vec3 nf = random_unit(rng);
    const IntersectionFrame fr = intersection_frame(n1, n2, ud(rng), Vec3{});
    if (std::abs(dot(fr.mu, nf)) < 1e-3) continue;
    const Vec3 fv{ud(rng), ud(rng), ud(rng)};
    const double t1 = ud(rng), t2 = ud(rng);
    const Vec3 x1 = face_origin(fr, t1, fv, nf);
    const Vec3 x2 = face_origin(fr, t2, fv, nf);
    const double mu_n = dot(fr.mu, nf);
    const Vec3 tauk = fr.tau - (dot(fr.tau, nf) / mu_n) * fr.mu;
    CHECK(norm((x2 - x1) - (t2 - t1) * tauk) < 1e-12);
  }
}

TEST_CASE("swapping the normals flips mu and keeps the line") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const Vec3 n1 = random_unit(rng);
    const Vec3 n2 = random_unit(rng);
    if (std::abs(dot(n1, n2)) > 1.0 - 1e-6) continue;
    const double s = ud(rng), t = ud(rng);
    const Vec3 base{ud(rng), ud(rng), ud(rng)};
    const IntersectionFrame fa = intersection_frame(n1, n2, s, base);
    const IntersectionFrame fb = intersection_frame(n2, n1, t, base);
    CHECK(norm(normalized(fa.mu) + normalized(fb.mu)) < 1e-10);
    // the same spatial line: points of one parametrization are at zero
    // distance from the other line
    const Vec3 pa = fa.y0 + t * fa.tau;  // on plane1(s) and plane2(t)
    const Vec3 pb = fb.y0 + s * fb.tau;  // same planes, swapped roles
    const Vec3 dir = normalized(fa.mu);
    const Vec3 diff = pa - pb;
    CHECK(norm(diff - dot(diff, dir) * dir) < 1e-10);
  }
}
