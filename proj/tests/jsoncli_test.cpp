#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "copos/cli.hpp"
#include "copos/json_io.hpp"

using namespace copos;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

Json parsed(const CliRun& r) { return Json::parse(r.out); }

Matrix mat22(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_SUITE("json") {

TEST_CASE("matrices and vectors round-trip exactly") {
  Matrix m(2, 3);
  m << 1, -2.5, 3, 0.125, 5, -6;
  CHECK((matrix_from_json(to_json(m)) - m).norm() == 0.0);

  Vector v(4);
  v << 0.5, -1, 2, 3.75;
  CHECK((vector_from_json(to_json(v)) - v).norm() == 0.0);

  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1,2],[3]]")), Error);
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[]")), Error);
  CHECK_THROWS_AS(vector_from_json(Json::parse("{\"a\":1}")), Error);
}

TEST_CASE("symmetric matrices carry their order and reject asymmetry") {
  SymMat a = SymMat::from_rows({{2, 1}, {1, 3}});
  Json j = to_json(a);
  CHECK(j["order"] == 2);
  SymMat back = symmat_from_json(j);
  CHECK((back - a).max_abs() == 0.0);

  Json bad = Json::parse("{\"order\":2,\"rows\":[[1,2],[3,4]]}");
  try {
    symmat_from_json(bad);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == Err::BadInput);
  }
  CHECK_THROWS_AS(symmat_from_json(Json::parse("{\"order\":3,\"rows\":[[1]]}")), Error);
}

TEST_CASE("coordinate vectors keep their frame tag") {
  for (Frame f : {Frame::Svec, Frame::Tvec, Frame::Ambient}) {
    Vector v(3);
    v << 1, 2, 3;
    CoordVec c{f, v};
    CoordVec back = coordvec_from_json(to_json(c));
    CHECK(back.frame == f);
    CHECK((back.values - v).norm() == 0.0);
  }
  CHECK_THROWS_AS(coordvec_from_json(Json::parse("{\"frame\":\"polar\",\"values\":[1]}")), Error);
}

TEST_CASE("operators round-trip with every provenance kind") {
  std::vector<SymMap> maps = {
      SymMap{},
      standard_map(mat22(1, 2, 3, 4)),
      lyapunov_map(mat22(0, 1, 1, 0)),
      gen_lyapunov_map(mat22(1, 0, 0, 2), mat22(1, 1, 0, 1)),
      rank_one_map(SymMat::identity(2), SymMat::ones(2)),
      monomial_congruence({1, 0}, {2.0, 0.5})};
  maps[0].order = 2;
  maps[0].m = Matrix::Identity(3, 3);
  for (const SymMap& L : maps) {
    SymMap back = symmap_from_json(to_json(L));
    CHECK(back.order == L.order);
    CHECK((back.m - L.m).norm() == 0.0);
    CHECK(std::string(provenance_kind(back.prov)) == provenance_kind(L.prov));
  }

  Json wrong_frame = to_json(maps[1]);
  wrong_frame["frame"] = "tvec";
  try {
    symmap_from_json(wrong_frame);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == Err::BadInput);
  }
}

TEST_CASE("constructor specs build the same operators as the constructors") {
  SymMap s = symmap_from_spec(Json::parse("{\"standard\":[[1,1],[0,1]]}"));
  CHECK((s.m - standard_map(mat22(1, 1, 0, 1)).m).norm() == 0.0);

  SymMap l = symmap_from_spec(Json::parse("{\"lyapunov\":[[0,1],[1,0]]}"));
  CHECK((l.m - lyapunov_map(mat22(0, 1, 1, 0)).m).norm() == 0.0);

  SymMap g = symmap_from_spec(Json::parse("{\"genlyap\":[[[1,0],[0,2]],[[1,0],[0,1]]]}"));
  CHECK((g.m - gen_lyapunov_map(mat22(1, 0, 0, 2), Matrix::Identity(2, 2)).m).norm() == 0.0);

  SymMap r = symmap_from_spec(Json::parse("{\"rankone\":[[[1,0],[0,1]],[[1,1],[1,1]]]}"));
  CHECK((r.m - rank_one_map(SymMat::identity(2), SymMat::ones(2)).m).norm() == 0.0);

  SymMap mo = symmap_from_spec(Json::parse("{\"monomial\":[[1,0],[2,3]]}"));
  CHECK((mo.m - monomial_congruence({1, 0}, {2.0, 3.0}).m).norm() == 0.0);

  CHECK_THROWS_AS(symmap_from_spec(Json::parse("{\"genlyap\":[[[1,0],[0,1]]]}")), Error);
  CHECK_THROWS_AS(symmap_from_spec(Json::parse("[1,2]")), Error);
  CHECK_THROWS_AS(symmap_from_spec(Json::parse("{}")), Error);
}

TEST_CASE("membership reports serialize status and certificates") {
  ConeRef cp = ConeRef::cp(2);
  Json onesj = membership_to_json(cp, member(cp, SymMat::ones(2)));
  CHECK(onesj["cone"] == "cp2");
  CHECK(onesj["status"] == "boundary");
  CHECK(onesj["in_cone"] == true);
  CHECK(onesj["certificate"]["type"] == "cp_factor");

  ConeRef cop = ConeRef::cop(2);
  SymMat bad = SymMat::from_rows({{1, -2}, {-2, 1}});
  Json badj = membership_to_json(cop, member(cop, bad));
  CHECK(badj["status"] == "outside");
  CHECK(badj["in_cone"] == false);
  CHECK(badj["certificate"]["type"] == "simplex_violation");
  CHECK(badj["certificate"]["value"].get<double>() == doctest::Approx(-0.5));
}

}  // TEST_SUITE

TEST_SUITE("cli") {

TEST_CASE("membership checks map status to exit codes") {
  CliRun in = cli({"check", "cp2", "[[1,1],[1,1]]"});
  CHECK(in.code == 0);
  Json j = parsed(in);
  CHECK(j["status"] == "boundary");
  CHECK(j["certificate"]["type"] == "cp_factor");
  Matrix b = matrix_from_json(j["certificate"]["B"]);
  CHECK(b.cols() == 1);
  CHECK((b - Matrix::Ones(2, 1)).norm() <= 1e-12);

  CliRun object_form = cli({"check", "cp2", "{\"order\":2,\"rows\":[[2,1],[1,3]]}"});
  CHECK(object_form.code == 0);
  CHECK(parsed(object_form)["status"] == "interior");

  CliRun out = cli({"check", "cop2", "[[1,-2],[-2,1]]"});
  CHECK(out.code == 1);
  Json jo = parsed(out);
  CHECK(jo["status"] == "outside");
  CHECK(jo["certificate"]["type"] == "simplex_violation");
  CHECK(jo["certificate"]["value"].get<double>() == doctest::Approx(-0.5));
  Vector x = vector_from_json(jo["certificate"]["x"]);
  CHECK(x(0) == doctest::Approx(0.5));
  CHECK(x(1) == doctest::Approx(0.5));

  CliRun vec = cli({"check", "orthant3", "[1,2,3]"});
  CHECK(vec.code == 0);
  CHECK(parsed(vec)["status"] == "interior");
  CHECK(parsed(vec)["margin"].get<double>() == 1.0);

  CliRun unsupported = cli({"check", "cop5", "[[1]]"});
  CHECK(unsupported.code == 3);
  CHECK(unsupported.err.find("error") != std::string::npos);
}

TEST_CASE("preserver analysis reports monomials as strong") {
  CliRun r = cli({"preserver", "{\"monomial\":[[1,0],[2,3]]}", "cp2"});
  CHECK(r.code == 0);
  Json j = parsed(r);
  CHECK(j["verdict"]["preserves"] == true);
  CHECK(j["monomial"]["found"] == true);
  Matrix m = matrix_from_json(j["monomial"]["M"]);
  CHECK(m(1, 0) == doctest::Approx(2.0));
  CHECK(m(0, 1) == doctest::Approx(3.0));
  CHECK(j["strong"]["strong"] == true);
  CHECK(j["strong"]["agrees_with_monomial"] == true);
}

TEST_CASE("preserver analysis surfaces counterexamples with exit 1") {
  CliRun r = cli({"preserver", "{\"standard\":[[1,-1],[0,1]]}", "cp2"});
  CHECK(r.code == 1);
  Json j = parsed(r);
  CHECK(j["verdict"]["preserves"] == false);
  CHECK(j["verdict"].contains("counterexample"));
  CHECK(j["verdict"]["output_margin"].get<double>() < 0.0);
}

TEST_CASE("lyapunov specs get the scalar classification block") {
  CliRun scalar = cli({"preserver", "{\"lyapunov\":[[1,0],[0,1]]}", "cp2"});
  CHECK(scalar.code == 0);
  Json js = parsed(scalar);
  CHECK(js["lyapunov"]["classification"] == "ScalarIdentity");
  CHECK(js["lyapunov"]["alpha"].get<double>() == doctest::Approx(1.0));

  CliRun shear = cli({"preserver", "{\"lyapunov\":[[1,1],[0,1]]}", "cp2"});
  CHECK(shear.code == 1);
  Json jn = parsed(shear);
  CHECK(jn["lyapunov"]["classification"] == "NotPreserver");
  SymMat w = symmat_from_json(jn["lyapunov"]["witness"]);
  CHECK((w - SymMat::basis(2, 1, 1)).max_abs() == 0.0);
  CHECK(jn["lyapunov"]["image_margin"].get<double>() < 0.0);
}

TEST_CASE("decompose refuses non-preservers and reconstructs preservers") {
  CliRun bad = cli({"decompose", "{\"standard\":[[1,-1],[0,1]]}"});
  CHECK(bad.code == 1);
  CHECK(parsed(bad).contains("error"));

  CliRun good = cli({"decompose", "{\"standard\":[[1,1],[1,2]]}"});
  CHECK(good.code == 0);
  Json j = parsed(good);
  CHECK(j["reconstruction_error"].get<double>() <= 1e-8);
  CHECK(j["epsilon"].get<double>() > 0.0);
  Matrix x1 = matrix_from_json(j["X1"]);
  Matrix y1 = matrix_from_json(j["Y1"]);
  CHECK(x1.minCoeff() > 0.0);
  CHECK(y1.minCoeff() > 0.0);

  Json xy;
  xy["X"] = to_json(Matrix(Matrix::Ones(3, 3) + Matrix::Identity(3, 3)));
  xy["Y"] = to_json(Matrix(Matrix::Ones(3, 3) + Matrix::Identity(3, 3)));
  CliRun pinned = cli({"decompose", "{\"standard\":[[1,0],[0,1]]}", "--xy", xy.dump()});
  CHECK(pinned.code == 0);
  CHECK(parsed(pinned)["reconstruction_error"].get<double>() <= 1e-8);
}

TEST_CASE("claims run end to end and deterministically") {
  CliRun a = cli({"claims", "--probes", "96", "--seed", "5", "--json"});
  CHECK(a.code == 0);
  Json j = parsed(a);
  CHECK(j["config"]["probes"] == 96);
  REQUIRE(j["claims"].size() == 9);
  for (const Json& c : j["claims"]) {
    CHECK(c.contains("id"));
    CHECK(c.contains("title"));
    CHECK(c.contains("status"));
    CHECK(c.contains("trials"));
    CHECK(c.contains("details"));
  }

  CliRun b = cli({"claims", "--probes", "96", "--seed", "5", "--json"});
  CHECK(a.out == b.out);
}

TEST_CASE("generators verify their own output") {
  CliRun el = cli({"generate", "cone-element", "--cone", "cp2", "--seed", "3"});
  CHECK(el.code == 0);
  CHECK(parsed(el)["membership"]["in_cone"] == true);

  CliRun sem = cli({"generate", "sem-map", "--cone", "nn2", "--seed", "7"});
  CHECK(sem.code == 0);
  CHECK(parsed(sem)["margin"].get<double>() > 0.0);

  CliRun sem2 = cli({"generate", "sem-map", "--cone", "nn2", "--seed", "7"});
  CHECK(sem.out == sem2.out);

  CliRun psd = cli({"generate", "sem-map", "--cone", "psd2", "--seed", "11"});
  CHECK((psd.code == 0 || psd.code == 2));
  Json jp = parsed(psd);
  CHECK(jp["witness_found"].get<bool>() == (psd.code == 0));

  CliRun pid = cli({"generate", "pi-dual", "--cone", "orthant3", "--count", "3", "--seed", "5"});
  CHECK(pid.code == 0);
  Json jd = parsed(pid);
  REQUIRE(jd["elements"].size() == 3);
  for (const Json& e : jd["elements"])
    CHECK(e["self_check_min_pairing"].get<double>() >= -1e-9);

  CliRun lor = cli({"generate", "lorentz-pi", "--terms", "3", "--seed", "9"});
  CHECK(lor.code == 0);
  Json jl = parsed(lor);
  REQUIRE(jl["boundary_sweep_margins"].size() == 64);
  CHECK(jl["boundary_sweep_min"].get<double>() >= -1e-9);
}

TEST_CASE("factor subcommands certify or reject") {
  CliRun split = cli({"factor", "cop-split", "[[0,1],[1,0]]"});
  CHECK(split.code == 0);
  Json js = parsed(split);
  CHECK(js["ok"] == true);
  CHECK(js["residual"].get<double>() <= 1e-10);

  CliRun cp = cli({"factor", "cp-factor", "[[2,1],[1,3]]"});
  CHECK(cp.code == 0);
  CHECK(parsed(cp)["residual"].get<double>() <= 1e-10);

  CliRun outside = cli({"factor", "cp-factor", "[[1,2],[2,1]]"});
  CHECK(outside.code == 1);
  CHECK(parsed(outside)["membership"]["status"] == "outside");

  CliRun big = cli({"factor", "cp-factor", "[[1,0,0],[0,1,0],[0,0,1]]"});
  CHECK(big.code == 3);
}

TEST_CASE("usage errors exit with code 3 and help with 0") {
  CliRun none = cli({});
  CHECK(none.code == 3);
  CHECK(none.err.find("usage") != std::string::npos);

  CliRun help = cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("membership") != std::string::npos);

  CliRun malformed = cli({"check", "cp2", "{bad"});
  CHECK(malformed.code == 3);

  CliRun unknown = cli({"generate", "frobnicate"});
  CHECK(unknown.code == 3);
}

}  // TEST_SUITE
