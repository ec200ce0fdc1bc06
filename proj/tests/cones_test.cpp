#include <doctest.h>

#include <cmath>

#include "copos/cones.hpp"
#include "copos/jacobi.hpp"
#include "copos/rng.hpp"

using namespace copos;

namespace {

SymMat sym2(double a, double b, double c) { return SymMat::from_rows({{a, b}, {b, c}}); }

Vector vecn(std::initializer_list<double> xs) {
  Vector v(static_cast<int>(xs.size()));
  int k = 0;
  for (double x : xs) v[k++] = x;
  return v;
}

}  // namespace

TEST_SUITE("cones") {

TEST_CASE("token parsing round-trips and rejects what it must") {
  ConeRef c = parse_cone("cp2");
  CHECK(c.kind == ConeKind::Cp);
  CHECK(c.param == 2);
  CHECK(c.token() == "cp2");
  CHECK(parse_cone("orthant3").kind == ConeKind::Orthant);
  CHECK(parse_cone("lorentz3").param == 3);
  CHECK(parse_cone("nn2").kind == ConeKind::NonnegSym);
  CHECK(parse_cone("psd4").param == 4);
  CHECK(parse_cone("cop3").kind == ConeKind::Cop);

  for (const char* bad : {"cop5", "cp1", "nn9", "banana", "psd", "orthant0"}) {
    try {
      parse_cone(bad);
      FAIL("expected a throw for " << bad);
    } catch (const Error& e) {
      CHECK(e.code() == Err::Unsupported);
    }
  }
}

TEST_CASE("orthant membership and certificates") {
  ConeRef orth = ConeRef::orthant(3);
  MembershipReport in = member(orth, vecn({1, 2, 3}));
  CHECK(in.status == MemberStatus::Interior);
  CHECK(in.margin == 1.0);

  CHECK(member(orth, vecn({0, 1, 2})).status == MemberStatus::Boundary);

  MembershipReport out = member(orth, vecn({-1, 1, 2}));
  REQUIRE(out.status == MemberStatus::Outside);
  REQUIRE(out.certificate.has_value());
  auto ev = std::get<EntryViolationCert>(*out.certificate);
  CHECK(ev.i == 0);
  CHECK(ev.value == -1.0);
}

TEST_CASE("lorentz membership and the dual-direction certificate") {
  ConeRef lor = ConeRef::lorentz(3);
  CHECK(member(lor, vecn({0, 0, 1})).margin == 1.0);
  CHECK(member(lor, vecn({1, 0, 1})).status == MemberStatus::Boundary);

  Vector x = vecn({2, 0, 1});
  MembershipReport out = member(lor, x);
  REQUIRE(out.status == MemberStatus::Outside);
  CHECK(out.margin == doctest::Approx(-1.0));
  REQUIRE(out.certificate.has_value());
  auto ec = std::get<EigViolationCert>(*out.certificate);
  CHECK(ec.value < 0.0);
  // the certificate direction lies in the (self-dual) Lorentz cone
  CHECK(ec.v[2] >= std::hypot(ec.v[0], ec.v[1]) - 1e-12);
  CHECK(ec.v.dot(x) == doctest::Approx(ec.value));
}

TEST_CASE("psd membership and eigenvector certificates") {
  ConeRef psd = ConeRef::psd(2);
  CHECK(member(psd, SymMat::identity(2)).margin == doctest::Approx(1.0));
  CHECK(member(psd, SymMat::ones(2)).status == MemberStatus::Boundary);

  MembershipReport out = member(psd, sym2(1, 2, 1));
  REQUIRE(out.status == MemberStatus::Outside);
  CHECK(out.margin == doctest::Approx(-1.0));
  auto ec = std::get<EigViolationCert>(*out.certificate);
  double q = ec.v.dot(sym2(1, 2, 1).mat() * ec.v);
  CHECK(q == doctest::Approx(ec.value).epsilon(1e-12));
  CHECK(std::abs(ec.v.norm() - 1.0) <= 1e-12);
}

TEST_CASE("nonnegative-symmetric membership is the minimum entry") {
  ConeRef nn = ConeRef::nonneg_sym(2);
  CHECK(member(nn, SymMat::ones(2)).margin == 1.0);
  CHECK(member(nn, SymMat::basis(2, 0, 0)).status == MemberStatus::Boundary);
  MembershipReport out = member(nn, sym2(1, -1, 1));
  CHECK(out.status == MemberStatus::Outside);
  CHECK(std::holds_alternative<EntryViolationCert>(*out.certificate));
}

TEST_CASE("cp membership: the all-ones matrix factors as a single column") {
  MembershipReport rep = member(ConeRef::cp(2), SymMat::ones(2));
  CHECK(rep.status == MemberStatus::Boundary);  // PSD margin 0, entry margin 1
  REQUIRE(rep.certificate.has_value());
  auto cf = std::get<CpFactorCert>(*rep.certificate);
  REQUIRE(cf.B.cols() == 1);
  CHECK(cf.B(0, 0) == doctest::Approx(1.0));
  CHECK(cf.B(1, 0) == doctest::Approx(1.0));
  CHECK((cf.B * cf.B.transpose() - SymMat::ones(2).mat()).norm() <= 1e-12);
}

TEST_CASE("cp rejections carry the violated side") {
  MembershipReport entry = member(ConeRef::cp(2), sym2(1, -1, 1));
  CHECK(entry.status == MemberStatus::Outside);
  CHECK(std::holds_alternative<EntryViolationCert>(*entry.certificate));

  MembershipReport eig = member(ConeRef::cp(2), sym2(1, 2, 1));
  CHECK(eig.status == MemberStatus::Outside);
  CHECK(std::holds_alternative<EigViolationCert>(*eig.certificate));
}

TEST_CASE("cop2 membership: closed form margin and simplex certificate") {
  MembershipReport out = member(ConeRef::cop(2), sym2(1, -2, 1));
  REQUIRE(out.status == MemberStatus::Outside);
  CHECK(out.margin == doctest::Approx(-0.5).epsilon(1e-12));
  auto sv = std::get<SimplexViolationCert>(*out.certificate);
  CHECK(sv.x[0] == doctest::Approx(0.5));
  CHECK(sv.x[1] == doctest::Approx(0.5));
  CHECK(sv.value == doctest::Approx(-0.5));
  CHECK(sv.x.sum() == doctest::Approx(1.0));

  CHECK(member(ConeRef::cop(2), sym2(1, -1, 1)).status == MemberStatus::Boundary);
  // copositive but not PSD: [[0,1],[1,0]]
  CHECK(member(ConeRef::cop(2), sym2(0, 1, 0)).status != MemberStatus::Outside);
}

TEST_CASE("cop3 membership at fixed matrices") {
  CHECK(member(ConeRef::cop(3), SymMat::identity(3)).margin == doctest::Approx(1.0 / 3.0));

  // (x1 - x2 + x3)^2: copositive, and zero on the simplex at x1 + x3 = x2
  SymMat rank_one = SymMat::from_rows({{1, -1, 1}, {-1, 1, -1}, {1, -1, 1}});
  MembershipReport rep = member(ConeRef::cop(3), rank_one);
  CHECK(rep.status == MemberStatus::Boundary);
  CHECK(std::abs(rep.margin) <= 1e-9);
}

TEST_CASE("quadform_min_simplex on fixed matrices") {
  auto [v1, x1] = quadform_min_simplex(sym2(1, -1, 1));
  CHECK(std::abs(v1) <= 1e-10);
  CHECK(x1[0] == doctest::Approx(0.5).epsilon(1e-6));

  auto [v2, x2] = quadform_min_simplex(sym2(0, -1, 0));
  CHECK(v2 == doctest::Approx(-0.5));
  CHECK(x2[0] == doctest::Approx(0.5).epsilon(1e-6));

  auto [v3, x3] = quadform_min_simplex(SymMat::identity(3));
  CHECK(v3 == doctest::Approx(1.0 / 3.0));
  CHECK(x3[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("closed form cop2 margin agrees with the simplex search") {
  Rng rng(31);
  for (int t = 0; t < 500; ++t) {
    SymMat a = random_gaussian_sym(2, rng);
    double closed = cop2_min(a).first;
    double grid = quadform_min_simplex(a).first;
    CHECK(std::abs(closed - grid) <= 1e-9 * (1.0 + a.max_abs()));
  }
}

TEST_CASE("cp_factor_2x2 closed forms") {
  CpFactorCert c = cp_factor_2x2(sym2(2, 1, 3));
  REQUIRE(c.B.rows() == 2);
  CHECK(c.B(0, 0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(c.B(1, 0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(c.B(1, 1) == doctest::Approx(std::sqrt(2.5)));
  CHECK((c.B * c.B.transpose() - sym2(2, 1, 3).mat()).norm() <= 1e-12);

  CpFactorCert z = cp_factor_2x2(SymMat::basis(2, 1, 1));  // zero leading entry
  CHECK(z.B(0, 0) == 0.0);
  CHECK(z.B(1, 1) == doctest::Approx(1.0));

  CHECK_THROWS_AS(cp_factor_2x2(sym2(1, 2, 1)), Error);
  try {
    cp_factor_2x2(sym2(1, -1, 1));
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == Err::NotInCone);
  }
}

TEST_CASE("cp_factor_2x2 on random members reproduces the matrix") {
  Rng rng(32);
  for (int t = 0; t < 200; ++t) {
    auto p = random_element(ConeRef::cp(2), rng, t % 2 == 0);
    const SymMat& a = std::get<SymMat>(p);
    CpFactorCert c = cp_factor_2x2(a);
    CHECK(c.B.minCoeff() >= 0.0);
    CHECK((c.B * c.B.transpose() - a.mat()).norm() <= 1e-10 * (1.0 + a.norm()));
  }
}

TEST_CASE("cop_split closed forms for order 2") {
  CopSplitResult nn = cop_split(sym2(0, 1, 0));
  CHECK(nn.ok);
  CHECK(nn.P.max_abs() == 0.0);
  CHECK((nn.N - sym2(0, 1, 0)).max_abs() == 0.0);

  CopSplitResult ps = cop_split(sym2(1, -1, 1));
  CHECK(ps.ok);
  CHECK(ps.N.max_abs() == 0.0);
  CHECK(min_eigenvalue(ps.P) >= -1e-12);

  CopSplitResult mx = cop_split(sym2(1, -1, 2));
  CHECK(mx.ok);
  CHECK((mx.P + mx.N - sym2(1, -1, 2)).max_abs() <= 1e-12);
  CHECK(min_eigenvalue(mx.P) >= -1e-10);
  CHECK(mx.N.min_entry() >= 0.0);

  CHECK_THROWS_AS(cop_split(sym2(1, -2, 1)), Error);  // not copositive
}

TEST_CASE("cop_split recovers a PSD plus nonnegative decomposition at order 3") {
  Rng rng(33);
  int solved = 0;
  for (int t = 0; t < 30; ++t) {
    const SymMat a = std::get<SymMat>(random_element(ConeRef::cop(3), rng, t % 3 != 0));
    CopSplitResult r = cop_split(a);
    CHECK((r.P + r.N - a).max_abs() <= 1e-10 * (1.0 + a.max_abs()));
    if (r.ok) {
      ++solved;
      CHECK(r.psd_margin >= -1e-10 * (1.0 + a.max_abs()));
      CHECK(r.entry_margin >= -1e-12);
    }
  }
  // alternating projections may stall in principle; on sampled inputs it did not
  CHECK(solved == 30);
}

TEST_CASE("random_element lands where asked") {
  Rng rng(34);
  for (const char* tok : {"orthant3", "lorentz3", "psd3", "nn3", "cop3", "cp3", "cp2", "cop2"}) {
    ConeRef cone = parse_cone(tok);
    for (int t = 0; t < 20; ++t) {
      CHECK(member(cone, random_element(cone, rng, true)).status == MemberStatus::Interior);
      CHECK(member(cone, random_element(cone, rng, false)).status != MemberStatus::Outside);
    }
  }
}

TEST_CASE("extreme rays sit on their cone boundaries") {
  Rng rng(35);
  for (int t = 0; t < 40; ++t) {
    SymMat cp = std::get<SymMat>(extreme_ray_sample(ConeRef::cp(2), rng));
    CHECK(std::abs(min_eigenvalue(cp)) <= 1e-12);
    CHECK(cp.min_entry() >= 0.0);

    SymMat nn = std::get<SymMat>(extreme_ray_sample(ConeRef::nonneg_sym(2), rng));
    CHECK(member(ConeRef::nonneg_sym(2), nn).status == MemberStatus::Boundary);

    Vector lz = std::get<Vector>(extreme_ray_sample(ConeRef::lorentz(3), rng));
    CHECK(std::abs(member(ConeRef::lorentz(3), lz).margin) <= 1e-12);

    Vector ox = std::get<Vector>(extreme_ray_sample(ConeRef::orthant(3), rng));
    CHECK(ox.sum() == 1.0);  // a coordinate vector
    CHECK(ox.maxCoeff() == 1.0);
  }
  try {
    extreme_ray_sample(ConeRef::cop(2), rng);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == Err::ExtremeRaysUnknown);
  }
}

TEST_CASE("parameterized ray families") {
  CHECK((cp2_ray(0.0) - SymMat::basis(2, 0, 0)).max_abs() <= 1e-15);
  CHECK((cp2_ray(std::acos(-1.0) / 4.0) - SymMat::ones(2) * 0.5).max_abs() <= 1e-15);
  CHECK((psd2_ray(std::acos(-1.0) / 2.0) - SymMat::basis(2, 1, 1)).max_abs() <= 1e-15);
  for (double phi : {0.0, 0.7, 2.1, 4.4}) {
    CHECK(std::abs(member(ConeRef::lorentz(3), lorentz3_ray(phi)).margin) <= 1e-12);
  }
}

TEST_CASE("cop and cp samples pair nonnegatively") {
  Rng rng(36);
  for (int t = 0; t < 300; ++t) {
    SymMat a = std::get<SymMat>(random_element(ConeRef::cop(2), rng, false));
    SymMat x = std::get<SymMat>(random_element(ConeRef::cp(2), rng, false));
    CHECK(trace_inner(a, x) >= -1e-9);
  }
  for (int t = 0; t < 300; ++t) {
    SymMat a = std::get<SymMat>(random_element(ConeRef::nonneg_sym(3), rng, false));
    SymMat b = std::get<SymMat>(random_element(ConeRef::nonneg_sym(3), rng, false));
    CHECK(trace_inner(a, b) >= 0.0);  // self-dual, exactly nonnegative here
  }
}

TEST_CASE("cp equals psd intersected with nonnegative at small orders") {
  Rng rng(37);
  for (int n = 2; n <= 4; ++n) {
    for (int t = 0; t < 50; ++t) {
      SymMat x = std::get<SymMat>(random_element(ConeRef::cp(n), rng, t % 2 == 0));
      CHECK(member(ConeRef::psd(n), x).status != MemberStatus::Outside);
      CHECK(member(ConeRef::nonneg_sym(n), x).status != MemberStatus::Outside);

      // and conversely: a PSD matrix with nonnegative entries passes Cp
      Matrix b(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = rng.uniform(0.0, 1.0);
      SymMat bb = SymMat::from_upper(Matrix(b * b.transpose()));
      CHECK(member(ConeRef::cp(n), bb).status != MemberStatus::Outside);
    }
  }
}

}  // TEST_SUITE
