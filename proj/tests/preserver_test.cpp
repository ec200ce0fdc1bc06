#include <doctest.h>

#include <cmath>

#include "copos/preserver.hpp"
#include "copos/semipos.hpp"

using namespace copos;

namespace {

Matrix mat22(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

SymMat sym2(double a, double b, double c) { return SymMat::from_rows({{a, b}, {b, c}}); }

Matrix positive_invertible(int n, Rng& rng, double floor_det = 0.05) {
  Matrix m(n, n);
  for (;;) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = rng.uniform(0.1, 1.1);
    if (std::abs(m.determinant()) > floor_det) return m;
  }
}

}  // namespace

TEST_SUITE("preserver") {

TEST_CASE("identity passes the into check on every supported matrix cone") {
  for (const char* tok : {"nn2", "nn3", "cp2", "psd2", "cop2"}) {
    ConeRef cone = parse_cone(tok);
    PreserverVerdict v = into_preserver_check(identity_map(cone.param), cone, 256);
    CHECK(v.preserves);
    CHECK(v.worst_margin >= -1e-12);
    CHECK_FALSE(v.counterexample.has_value());
  }
  CHECK(into_preserver_check(identity_map(2), ConeRef::nonneg_sym(2)).exact);
  CHECK_THROWS_AS(into_preserver_check(identity_map(3), ConeRef::psd(3)), const Error&);
}

TEST_CASE("a shear fails the cp check with a re-verifiable counterexample") {
  SymMap shear = standard_map(mat22(1, -1, 0, 1));
  SymMat img = shear.apply(SymMat::basis(2, 1, 1));
  CHECK((img - sym2(1, -1, 1)).max_abs() <= 1e-15);

  ConeRef cp = ConeRef::cp(2);
  PreserverVerdict v = into_preserver_check(shear, cp);
  CHECK_FALSE(v.preserves);
  REQUIRE(v.counterexample.has_value());
  const SymMat& cx = std::get<SymMat>(*v.counterexample);
  CHECK(v.cx_input_margin >= -1e-9);
  CHECK(v.cx_output_margin < 0.0);
  CHECK(member(cp, cx).margin >= -1e-9);
  CHECK(member(cp, shear.apply(cx)).margin < 0.0);
}

TEST_CASE("nonnegative congruences stay inside the cp cone") {
  Rng rng(91);
  ConeRef cp = ConeRef::cp(2);
  for (int t = 0; t < 100; ++t) {
    Matrix r(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r(i, j) = rng.uniform(0.0, 1.0);
    PreserverVerdict v = into_preserver_check(standard_map(r), cp, 512);
    CHECK(v.preserves);
    CHECK(v.worst_margin >= -1e-9);
  }
}

TEST_CASE("congruences preserve psd regardless of sign") {
  Rng rng(92);
  ConeRef psd = ConeRef::psd(2);
  Matrix flip = mat22(-1, 0, 0, 1);
  CHECK(into_preserver_check(standard_map(flip), psd, 512).preserves);
  for (int t = 0; t < 30; ++t) {
    Matrix r(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r(i, j) = rng.gaussian();
    CHECK(into_preserver_check(standard_map(r), psd, 512).preserves);
  }
  CHECK_FALSE(into_preserver_check(lyapunov_map(mat22(0, 1, 1, 0)), psd, 512).preserves);
}

TEST_CASE("vector cone checks decide polyhedral cases exactly") {
  ConeRef o3 = ConeRef::orthant(3);
  Matrix m = Matrix::Identity(3, 3);
  PreserverVerdict ok = into_preserver_check(m, o3);
  CHECK(ok.preserves);
  CHECK(ok.exact);

  m(0, 1) = -1.0;
  PreserverVerdict bad = into_preserver_check(m, o3);
  CHECK_FALSE(bad.preserves);
  CHECK(bad.exact);
  REQUIRE(bad.counterexample.has_value());
  const Vector& cx = std::get<Vector>(*bad.counterexample);
  CHECK(cx.minCoeff() >= 0.0);
  CHECK((m * cx).minCoeff() < 0.0);
}

TEST_CASE("lorentz checks accept rotations and reject reflections") {
  ConeRef l3 = ConeRef::lorentz(3);
  double a = 0.7;
  Matrix rot(3, 3);
  rot << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
  PreserverVerdict ok = into_preserver_check(rot, l3, 512);
  CHECK(ok.preserves);
  CHECK(ok.worst_margin >= -1e-9);

  Matrix refl = Matrix::Identity(3, 3);
  refl(2, 2) = -1.0;
  PreserverVerdict bad = into_preserver_check(refl, l3, 512);
  CHECK_FALSE(bad.preserves);
  REQUIRE(bad.counterexample.has_value());
  CHECK(member(l3, std::get<Vector>(*bad.counterexample)).margin >= -1e-9);
}

TEST_CASE("copositive evidence check flags guaranteed violations") {
  ConeRef cop = ConeRef::cop(2);
  CHECK(into_preserver_check(monomial_congruence({1, 0}, {2.0, 0.5}), cop, 512).preserves);

  // the image of E11 is a fixed probe, so this failure is deterministic
  SymMap bad = rank_one_map(SymMat::basis(2, 0, 0), sym2(1, -2, 1));
  PreserverVerdict v = into_preserver_check(bad, cop, 512);
  CHECK_FALSE(v.preserves);
  REQUIRE(v.counterexample.has_value());
  const SymMat& cx = std::get<SymMat>(*v.counterexample);
  CHECK(member(cop, cx).margin >= -1e-9);
  CHECK(member(cop, bad.apply(cx)).margin < 0.0);
}

TEST_CASE("lyapunov classification separates scalar matrices") {
  LyapClassify s3 = lyapunov_cp_classify(Matrix(3.0 * Matrix::Identity(2, 2)));
  CHECK(s3.scalar);
  CHECK(std::abs(s3.alpha - 3.0) <= 1e-12);

  LyapClassify s0 = lyapunov_cp_classify(Matrix::Zero(2, 2));
  CHECK(s0.scalar);
  CHECK(s0.alpha == 0.0);
}

TEST_CASE("lyapunov classification pins basis witnesses for non-scalars") {
  LyapClassify lower = lyapunov_cp_classify(mat22(1, 0, 1, 1));
  CHECK_FALSE(lower.scalar);
  CHECK((lower.witness - SymMat::basis(2, 0, 0)).max_abs() == 0.0);
  CHECK((lower.image - sym2(2, 1, 0)).max_abs() <= 1e-15);
  CHECK(lower.image_margin < 0.0);

  LyapClassify upper = lyapunov_cp_classify(mat22(1, 1, 0, 1));
  CHECK_FALSE(upper.scalar);
  CHECK((upper.witness - SymMat::basis(2, 1, 1)).max_abs() == 0.0);
  CHECK((upper.image - sym2(0, 1, 2)).max_abs() <= 1e-15);

  LyapClassify diag = lyapunov_cp_classify(mat22(1, 0, 0, 2));
  CHECK_FALSE(diag.scalar);
  CHECK((diag.witness - SymMat::ones(2)).max_abs() == 0.0);
  CHECK((diag.image - sym2(2, 3, 4)).max_abs() <= 1e-15);
  CHECK(diag.image_margin < 0.0);
}

TEST_CASE("random non-scalar lyapunov maps always get failing witnesses") {
  Rng rng(93);
  ConeRef cp = ConeRef::cp(2);
  int done = 0;
  while (done < 200) {
    Matrix a(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) a(i, j) = rng.gaussian();
    Matrix dev = a - 0.5 * a.trace() * Matrix::Identity(2, 2);
    if (dev.norm() <= 0.1) continue;
    ++done;
    LyapClassify c = lyapunov_cp_classify(a);
    CHECK_FALSE(c.scalar);
    CHECK((c.image - lyapunov_apply(a, c.witness)).max_abs() <= 1e-12);
    CHECK(member(cp, c.image).margin < 0.0);
    CHECK(c.image_margin == doctest::Approx(member(cp, c.image).margin));
  }
}

TEST_CASE("monomial detection recovers permutation and scales") {
  MonomialDetect id = monomial_detect(identity_map(2));
  CHECK(id.found);
  REQUIRE(id.perm.size() == 2);
  CHECK(id.perm[0] == 0);
  CHECK(id.perm[1] == 1);
  CHECK(std::abs(id.scales[0] - 1.0) <= 1e-12);

  Rng rng(94);
  for (int t = 0; t < 100; ++t) {
    int n = 2 + static_cast<int>(rng.uniform_int(0, 2));
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.uniform_int(0, i)]);
    std::vector<double> scales(n);
    for (int i = 0; i < n; ++i) scales[i] = rng.uniform(0.2, 3.0);
    MonomialDetect d = monomial_detect(monomial_congruence(perm, scales));
    REQUIRE(d.found);
    CHECK(d.perm == perm);
    for (int i = 0; i < n; ++i) CHECK(std::abs(d.scales[i] - scales[i]) <= 1e-10 * scales[i]);
    CHECK(d.max_err <= 1e-10);
  }

  CHECK_FALSE(monomial_detect(lyapunov_map(mat22(0, 1, 1, 0))).found);
  CHECK_FALSE(monomial_detect(standard_map(mat22(1, 1, 0, 1))).found);
}

TEST_CASE("strong check separates monomials from one-sided preservers") {
  ConeRef cop = ConeRef::cop(2);
  StrongCheck mono = strong_preserver_check(monomial_congruence({1, 0}, {1.5, 0.5}), cop, 512);
  CHECK(mono.invertible);
  CHECK(mono.forward.preserves);
  CHECK(mono.inverse.preserves);
  CHECK(mono.strong);
  CHECK(mono.monomial.found);
  CHECK(mono.agreement);

  ConeRef cp = ConeRef::cp(2);
  StrongCheck shear = strong_preserver_check(standard_map(mat22(1, 1, 0, 1)), cp, 512);
  CHECK(shear.invertible);
  CHECK(shear.forward.preserves);
  CHECK_FALSE(shear.inverse.preserves);
  CHECK_FALSE(shear.strong);
  CHECK_FALSE(shear.monomial.found);
  CHECK(shear.agreement);

  StrongCheck r1 = strong_preserver_check(rank_one_map(SymMat::identity(2), SymMat::ones(2)), cp,
                                          256);
  CHECK_FALSE(r1.invertible);
  CHECK_FALSE(r1.strong);
}

TEST_CASE("z-property probe pins the shear violation pair") {
  Rng rng(95);
  ZPropertyResult id = z_property_check(identity_map(2), 64, rng);
  CHECK_FALSE(id.violation);
  CHECK(id.checked > 0);

  ZPropertyResult dbl = z_property_check(map_scale(identity_map(2), 2.0), 64, rng);
  CHECK_FALSE(dbl.violation);

  ZPropertyResult sh = z_property_check(standard_map(mat22(1, 1, 0, 1)), 64, rng);
  CHECK(sh.violation);
  CHECK((sh.x - SymMat::basis(2, 1, 1)).max_abs() == 0.0);
  CHECK((sh.y - SymMat::basis(2, 0, 0)).max_abs() == 0.0);
  CHECK(sh.value == doctest::Approx(1.0));
}

TEST_CASE("shifting the identity keeps it a strong monomial preserver") {
  std::vector<AutShiftEntry> probe = aut_shift_probe(identity_map(2), {1.0}, 256);
  REQUIRE(probe.size() == 1);
  CHECK(probe[0].t == 1.0);
  CHECK(probe[0].strong);
  CHECK(probe[0].monomial_found);
  CHECK(probe[0].agreement);

  std::vector<AutShiftEntry> r1 = aut_shift_probe(
      rank_one_map(SymMat::identity(2), SymMat::ones(2)), {0.01}, 256);
  REQUIRE(r1.size() == 1);
  CHECK_FALSE(r1[0].monomial_found);
  CHECK(r1[0].agreement);
}

TEST_CASE("positive factorization of fixed orthant maps") {
  FactorResult id3 = semipositive_factor(Matrix::Identity(3, 3));
  CHECK(id3.epsilon == 1.0);
  CHECK((id3.witness - Vector::Ones(3)).norm() == 0.0);
  Matrix want = Matrix::Ones(3, 3) + Matrix::Identity(3, 3);
  CHECK((id3.X1 - want).norm() <= 1e-14);
  CHECK((id3.Y1 - id3.X1).norm() <= 1e-14);
  CHECK(id3.residual <= 1e-12);

  FactorResult dbl = semipositive_factor(Matrix(2.0 * Matrix::Identity(2, 2)));
  CHECK((dbl.Y1 - 2.0 * dbl.X1).norm() <= 1e-14);
  CHECK(dbl.residual <= 1e-12);

  FactorResult mix = semipositive_factor(mat22(-1, 2, 2, -1));
  CHECK(mix.X1.minCoeff() > 0.0);
  CHECK(mix.Y1.minCoeff() > 0.0);
  CHECK(std::abs(mix.X1.determinant()) > 1e-12);
  CHECK(mix.residual <= 1e-10);
  CHECK((mat22(-1, 2, 2, -1) * mix.X1 - mix.Y1).norm() <= 1e-12);

  try {
    semipositive_factor(Matrix(-Matrix::Identity(2, 2)));
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == Err::NotSemipositive);
  }
}

TEST_CASE("positive factorization of sampled semipositive maps") {
  Rng rng(96);
  for (int t = 0; t < 100; ++t) {
    OrthantGen g = sem_generate_orthant(3, rng);
    FactorResult f = semipositive_factor(g.M);
    CHECK(f.X1.minCoeff() > 0.0);
    CHECK(f.Y1.minCoeff() > 0.0);
    CHECK(std::abs(f.X1.determinant()) > 1e-12);
    CHECK(f.residual <= 1e-10 * (1.0 + g.M.norm()));
  }
}

TEST_CASE("structure decomposition reconstructs the identity exactly") {
  Matrix X(3, 3);
  X << 1, 0.1, 0.1, 0.1, 1, 0.1, 0.1, 0.1, 1;
  DecomposeOutcome out = structure_decompose(identity_map(2), X, X);
  REQUIRE(std::holds_alternative<Decomposition>(out));
  const Decomposition& dec = std::get<Decomposition>(out);
  CHECK(dec.epsilon == 1.0);
  Matrix want = Matrix::Ones(3, 3) + Matrix::Identity(3, 3);
  CHECK((dec.X1 - want).norm() <= 1e-9);
  CHECK(dec.reconstruction_error <= 1e-10);

  DecomposeOutcome d2 = structure_decompose(standard_map(mat22(1, 0, 0, 2)), X, X);
  REQUIRE(std::holds_alternative<Decomposition>(d2));
  CHECK(std::get<Decomposition>(d2).reconstruction_error <= 1e-8);
}

TEST_CASE("structure decomposition rejects bad inputs by kind") {
  Matrix X(3, 3);
  X << 1, 0.1, 0.1, 0.1, 1, 0.1, 0.1, 0.1, 1;
  try {
    structure_decompose(standard_map(mat22(1, -1, 0, 1)), X, X);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == Err::NotInCone);
  }
  try {
    structure_decompose(identity_map(2), Matrix(-X), X);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == Err::BadInput);
  }
  try {
    structure_decompose(identity_map(2), Matrix::Ones(3, 3), X);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == Err::SingularMatrix);
  }
  try {
    structure_decompose(rank_one_map(SymMat::ones(2), SymMat::ones(2)), X, X);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == Err::NotInvertible);
  }
  try {
    structure_decompose(identity_map(3), Matrix::Identity(3, 3), Matrix::Identity(3, 3));
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == Err::Unsupported);
  }
}

TEST_CASE("sampled congruence decompositions reconstruct within tolerance") {
  Rng rng(97);
  int violations = 0;
  for (int t = 0; t < 30; ++t) {
    SymMap l = standard_map(positive_invertible(2, rng));
    for (int p = 0; p < 3; ++p) {
      Matrix X = positive_invertible(3, rng);
      Matrix Y(3, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) Y(i, j) = rng.uniform(0.05, 1.05);
      DecomposeOutcome out = structure_decompose(l, X, Y, 512);
      if (std::holds_alternative<TheoremViolation>(out)) {
        ++violations;
        continue;
      }
      CHECK(std::get<Decomposition>(out).reconstruction_error <= 1e-8);
    }
  }
  CHECK(violations == 0);
}

}  // TEST_SUITE
