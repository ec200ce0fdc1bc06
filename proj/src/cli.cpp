#include "copos/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "copos/claims.hpp"
#include "copos/cones.hpp"
#include "copos/dualcone.hpp"
#include "copos/errors.hpp"
#include "copos/json_io.hpp"
#include "copos/preserver.hpp"
#include "copos/semipos.hpp"

namespace copos {

namespace {

Json load_json_arg(const std::string& arg) {
  std::string text;
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
    text = arg;
  } else {
    std::ifstream f(arg);
    if (!f) throw Error(Err::BadInput, "cannot open " + arg);
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(Err::BadInput, "malformed JSON: " + arg);
  return j;
}

void emit(const Json& j, const RunConfig& cfg, bool compact, std::ostream& out) {
  std::string text = (compact ? j.dump() : j.dump(2)) + "\n";
  if (!cfg.output.empty()) {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) throw Error(Err::BadInput, "cannot write " + cfg.output);
    f << text;
  } else {
    out << text;
  }
}

Point point_from_json(ConeRef cone, const Json& j) {
  if (cone.matrix_cone()) {
    SymMat A = j.is_array() ? SymMat::from_rows(j.get<std::vector<std::vector<double>>>())
                            : symmat_from_json(j);
    if (A.order() != cone.param)
      throw Error(Err::DimensionMismatch, "matrix order does not match " + cone.token());
    return A;
  }
  Vector x = vector_from_json(j);
  if (static_cast<int>(x.size()) != cone.param)
    throw Error(Err::DimensionMismatch, "vector length does not match " + cone.token());
  return x;
}

Json point_to_json(const Point& p) {
  if (std::holds_alternative<SymMat>(p)) return to_json(std::get<SymMat>(p));
  return to_json(std::get<Vector>(p));
}

Json verdict_to_json(const PreserverVerdict& v) {
  Json j;
  j["preserves"] = v.preserves;
  j["exact"] = v.exact;
  j["probes"] = v.probes;
  j["worst_margin"] = v.worst_margin;
  if (v.counterexample) {
    j["counterexample"] = point_to_json(*v.counterexample);
    j["input_margin"] = v.cx_input_margin;
    j["output_margin"] = v.cx_output_margin;
  }
  return j;
}

Json monomial_to_json(const MonomialDetect& md) {
  Json j;
  j["found"] = md.found;
  if (md.found) {
    j["M"] = to_json(md.M);
    j["perm"] = md.perm;
    j["scales"] = md.scales;
    j["max_err"] = md.max_err;
  }
  return j;
}

int cmd_check(const std::string& cone_token, const std::string& point_arg,
              const RunConfig& cfg, bool compact, std::ostream& out) {
  ConeRef cone = parse_cone(cone_token);
  Point p = point_from_json(cone, load_json_arg(point_arg));
  MembershipReport rep = member(cone, p, cfg.tol);
  emit(membership_to_json(cone, rep), cfg, compact, out);
  if (rep.status == MemberStatus::Outside) return 1;
  // The simplex minimum for orders 3 and 4 is only resolved to about 1e-7,
  // so a margin inside that band is not a certification either way.
  if (cone.kind == ConeKind::Cop && cone.param >= 3 && rep.margin <= 1e-6) return 2;
  return 0;
}

int cmd_preserver(const std::string& map_arg, const std::string& cone_token,
                  const RunConfig& cfg, bool compact, std::ostream& out) {
  SymMap L = symmap_from_spec(load_json_arg(map_arg));
  ConeRef cone = parse_cone(cone_token);
  if (!cone.matrix_cone())
    throw Error(Err::Unsupported, "preserver analysis needs a matrix cone");
  if (L.order != cone.param)
    throw Error(Err::DimensionMismatch, "map order does not match " + cone.token());

  Rng rng(seed_for(cfg.seed, "preserver", 0));
  PreserverVerdict v = into_preserver_check(L, cone, cfg.probes, cfg.tol, &rng);

  Json j;
  j["cone"] = cone.token();
  j["map"] = to_json(L);
  j["verdict"] = verdict_to_json(v);
  j["monomial"] = monomial_to_json(monomial_detect(L, cfg.tol));

  bool strong = false;
  if (cone.kind == ConeKind::Cop || cone.kind == ConeKind::Cp) {
    StrongCheck sc = strong_preserver_check(L, cone, cfg.probes, cfg.tol, &rng);
    Json js;
    js["invertible"] = sc.invertible;
    js["strong"] = sc.strong;
    js["inverse_verdict"] = verdict_to_json(sc.inverse);
    js["agrees_with_monomial"] = sc.agreement;
    j["strong"] = js;
    strong = sc.strong;
  }
  if (std::holds_alternative<ProvLyapunov>(L.prov)) {
    const Matrix& A = std::get<ProvLyapunov>(L.prov).A;
    LyapClassify lc = lyapunov_cp_classify(A, cfg.tol);
    Json jl;
    if (lc.scalar) {
      jl["classification"] = "ScalarIdentity";
      jl["alpha"] = lc.alpha;
    } else {
      jl["classification"] = "NotPreserver";
      jl["witness"] = to_json(lc.witness);
      jl["image"] = to_json(lc.image);
      jl["image_margin"] = lc.image_margin;
    }
    j["lyapunov"] = jl;
  }
  emit(j, cfg, compact, out);
  if (v.counterexample) return 1;
  if (cone.kind == ConeKind::Cop && !v.exact && !strong) return 2;  // evidence only
  return 0;
}

int cmd_decompose(const std::string& map_arg, const std::string& xy_arg,
                  const RunConfig& cfg, bool compact, std::ostream& out) {
  SymMap L = symmap_from_spec(load_json_arg(map_arg));
  if (L.order != 2) throw Error(Err::Unsupported, "decomposition is an order-2 construction");

  PreserverVerdict pv =
      into_preserver_check(L, ConeRef::cp(2), cfg.probes, cfg.tol, nullptr);
  if (!pv.preserves) {
    Json j;
    j["error"] = "map does not preserve cp2";
    j["verdict"] = verdict_to_json(pv);
    emit(j, cfg, compact, out);
    return 1;
  }

  Matrix X(3, 3), Y(3, 3);
  if (!xy_arg.empty()) {
    Json jxy = load_json_arg(xy_arg);
    if (!jxy.is_object() || !jxy.contains("X") || !jxy.contains("Y"))
      throw Error(Err::BadInput, "XY file needs {\"X\": rows, \"Y\": rows}");
    X = matrix_from_json(jxy["X"]);
    Y = matrix_from_json(jxy["Y"]);
  } else {
    Rng rng(seed_for(cfg.seed, "decompose", 0));
    for (;;) {
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) X(i, k) = rng.uniform(0.05, 1.05);
      if (std::abs(X.determinant()) > 1e-3) break;
    }
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) Y(i, k) = rng.uniform(0.05, 1.05);
  }

  DecomposeOutcome res = structure_decompose(L, X, Y, cfg.probes, cfg.tol);
  Json j;
  if (std::holds_alternative<TheoremViolation>(res)) {
    const auto& tv = std::get<TheoremViolation>(res);
    Json jv;
    jv["X"] = to_json(tv.X);
    jv["Y"] = to_json(tv.Y);
    jv["farkas"] = to_json(tv.farkas);
    j["violation"] = jv;
    emit(j, cfg, compact, out);
    return 1;
  }
  const auto& d = std::get<Decomposition>(res);
  j["X"] = to_json(d.X);
  j["Y"] = to_json(d.Y);
  j["X1"] = to_json(d.X1);
  j["Y1"] = to_json(d.Y1);
  j["epsilon"] = d.epsilon;
  j["witness"] = to_json(d.witness);
  j["reconstruction_error"] = d.reconstruction_error;
  emit(j, cfg, compact, out);
  return 0;
}

int cmd_claims(const RunConfig& cfg, bool compact, std::ostream& out) {
  ClaimsConfig cc;
  cc.seed = cfg.seed;
  cc.probes = cfg.probes;
  cc.tol = cfg.tol;
  std::vector<ClaimResult> rs = run_claims(cc);
  Json j;
  Json jc;
  jc["seed"] = cc.seed;
  jc["probes"] = cc.probes;
  jc["tol"] = cc.tol;
  j["config"] = jc;
  j["claims"] = claims_to_json(rs)["claims"];
  emit(j, cfg, compact, out);
  return 0;
}

Matrix random_nonneg(int r, int c, Rng& rng) {
  Matrix S(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) S(i, j) = rng.uniform(0.0, 1.0);
  return S;
}

double pi_dual_self_check_vec(ConeRef cone, const Matrix& G, Rng& rng) {
  double mn = std::numeric_limits<double>::infinity();
  for (int s = 0; s < 32; ++s) {
    if (cone.kind == ConeKind::Orthant) {
      mn = std::min(mn, operator_pairing(G, random_nonneg(cone.param, cone.param, rng)));
    } else {
      LorentzPiElement e = lorentz_pi_generate(1 + s % 3, rng);
      mn = std::min(mn, operator_pairing(G, e.op));
    }
  }
  return mn;
}

double pi_dual_self_check_map(ConeRef cone, const SymMap& G, Rng& rng) {
  double mn = std::numeric_limits<double>::infinity();
  for (int s = 0; s < 32; ++s) {
    SymMap S;
    if (cone.kind == ConeKind::NonnegSym) {
      S = from_tvec_matrix(cone.param, random_nonneg(sym_dim(cone.param), sym_dim(cone.param), rng));
    } else if (cone.kind == ConeKind::Psd) {
      Matrix P(cone.param, cone.param);
      for (int i = 0; i < cone.param; ++i)
        for (int j = 0; j < cone.param; ++j) P(i, j) = rng.gaussian();
      S = standard_map(P);
    } else {  // Cop / Cp: nonnegative congruences preserve both sides
      S = standard_map(random_nonneg(cone.param, cone.param, rng));
    }
    mn = std::min(mn, operator_pairing(G, S));
  }
  return mn;
}

int cmd_generate(const std::string& kind, const std::string& cone_token, int terms,
                 int count, bool boundary, const RunConfig& cfg, bool compact,
                 std::ostream& out) {
  Json j;
  j["kind"] = kind;
  j["seed"] = cfg.seed;
  Rng rng(seed_for(cfg.seed, "generate", 0));
  int code = 0;

  if (kind == "cone-element") {
    ConeRef cone = parse_cone(cone_token);
    j["cone"] = cone.token();
    Point p = random_element(cone, rng, !boundary);
    j["element"] = point_to_json(p);
    j["membership"] = membership_to_json(cone, member(cone, p, cfg.tol));
  } else if (kind == "sem-map") {
    ConeRef cone = parse_cone(cone_token);
    j["cone"] = cone.token();
    if (cone.kind == ConeKind::Orthant) {
      OrthantGen g = sem_generate_orthant(cone.param, rng);
      OrthantSemResult chk = sem_check_orthant(g.M);
      j["M"] = to_json(g.M);
      j["X"] = to_json(g.factors.X);
      j["Y"] = to_json(g.factors.Y);
      j["witness"] = to_json(chk.x);
      j["margin"] = chk.margin;
    } else if (cone.kind == ConeKind::NonnegSym && cone.param == 2) {
      NonnegSymGen g = sem_generate_nonnegsym(rng);
      j["map"] = to_json(g.L);
      j["witness"] = to_json(g.witness);
      j["margin"] = g.margin;
    } else if (cone.kind == ConeKind::Psd && cone.param == 2) {
      Psd2Gen g = sem_generate_psd2(rng);
      j["map"] = to_json(g.L);
      j["orthant_factor"] = to_json(g.B);
      j["witness_found"] = g.witness_found;
      if (g.witness_found) {
        j["witness"] = to_json(g.witness);
        j["margin"] = g.margin;
      } else {
        code = 2;  // generated, but no verified witness: inconclusive sample
      }
    } else {
      throw Error(Err::Unsupported, "sem-map generation: orthantN, nn2, or psd2");
    }
  } else if (kind == "pi-dual") {
    ConeRef cone = parse_cone(cone_token);
    j["cone"] = cone.token();
    Json arr = Json::array();
    if (cone.matrix_cone()) {
      auto gens = pi_dual_generate_map(cone, count, rng);
      for (const SymMap& G : gens) {
        Json row;
        row["op"] = to_json(G);
        row["self_check_min_pairing"] = pi_dual_self_check_map(cone, G, rng);
        arr.push_back(row);
      }
    } else {
      auto gens = pi_dual_generate_vec(cone, count, rng);
      for (const Matrix& G : gens) {
        Json row;
        row["op"] = to_json(G);
        row["self_check_min_pairing"] = pi_dual_self_check_vec(cone, G, rng);
        arr.push_back(row);
      }
    }
    j["elements"] = arr;
  } else if (kind == "lorentz-pi") {
    LorentzPiElement e = lorentz_pi_generate(terms, rng);
    j["op"] = to_json(e.op);
    j["alphas"] = e.alphas;
    Json ps = Json::array();
    for (const Matrix& P : e.ps) ps.push_back(to_json(P));
    j["ps"] = ps;
    ConeRef lor = ConeRef::lorentz(3);
    Json margins = Json::array();
    double mn = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 64; ++k) {
      Vector x = lorentz3_ray(2.0 * std::acos(-1.0) * k / 64.0);
      double m = member(lor, Vector(e.op * x), cfg.tol).margin;
      margins.push_back(m);
      mn = std::min(mn, m);
    }
    j["boundary_sweep_margins"] = margins;
    j["boundary_sweep_min"] = mn;
  } else {
    throw Error(Err::BadInput, "unknown generate kind: " + kind);
  }
  emit(j, cfg, compact, out);
  return code;
}

int cmd_factor(const std::string& mode, const std::string& point_arg, const RunConfig& cfg,
               bool compact, std::ostream& out) {
  Json jp = load_json_arg(point_arg);
  SymMat A = jp.is_array() ? SymMat::from_rows(jp.get<std::vector<std::vector<double>>>())
                           : symmat_from_json(jp);
  Json j;
  if (mode == "cop-split") {
    ConeRef cone = ConeRef::cop(A.order());
    MembershipReport rep = member(cone, A, cfg.tol);
    j["membership"] = membership_to_json(cone, rep);
    if (rep.status == MemberStatus::Outside) {
      emit(j, cfg, compact, out);
      return 1;
    }
    CopSplitResult s = cop_split(A, cfg.tol);
    j["ok"] = s.ok;
    j["P"] = to_json(s.P);
    j["N"] = to_json(s.N);
    j["iterations"] = s.iterations;
    j["psd_margin"] = s.psd_margin;
    j["entry_margin"] = s.entry_margin;
    j["residual"] = (A - s.P - s.N).norm();
    emit(j, cfg, compact, out);
    return s.ok ? 0 : 2;
  }
  if (mode == "cp-factor") {
    if (A.order() != 2)
      throw Error(Err::Unsupported, "closed-form factorization is an order-2 construction");
    ConeRef cone = ConeRef::cp(2);
    MembershipReport rep = member(cone, A, cfg.tol);
    j["membership"] = membership_to_json(cone, rep);
    if (rep.status == MemberStatus::Outside) {
      emit(j, cfg, compact, out);
      return 1;
    }
    CpFactorCert c = cp_factor_2x2(A, cfg.tol);
    j["B"] = to_json(c.B);
    j["residual"] = (A.mat() - c.B * c.B.transpose()).norm();
    emit(j, cfg, compact, out);
    return 0;
  }
  throw Error(Err::BadInput, "unknown factor mode: " + mode);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"membership, preservers, and decompositions for copositive and "
               "completely positive matrix cones"};
  app.require_subcommand(1);

  RunConfig cfg;
  bool compact = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "base seed for randomized routines");
    sub->add_option("--tol", cfg.tol, "membership tolerance");
    sub->add_option("--probes", cfg.probes, "probe budget for sweeps and searches");
    sub->add_flag("--json", compact, "compact single-line JSON");
    sub->add_option("--out", cfg.output, "write output to this path instead of stdout");
  };

  std::string cone_token, point_arg, map_arg, xy_arg, kind, mode;
  int terms = 3, count = 3;
  bool boundary = false;

  CLI::App* c_check = app.add_subcommand("check", "membership of a point in a cone");
  c_check->add_option("cone", cone_token, "cone token, e.g. cp2 cop2 psd2 nn2 orthant3 lorentz3")
      ->required();
  c_check->add_option("point", point_arg, "JSON file or inline JSON")->required();
  add_common(c_check);

  CLI::App* c_pres = app.add_subcommand("preserver", "analyze a linear map against a cone");
  c_pres->add_option("map", map_arg, "SymMap JSON, constructor spec, or file")->required();
  c_pres->add_option("cone", cone_token, "matrix cone token")->required();
  add_common(c_pres);

  CLI::App* c_dec = app.add_subcommand("decompose", "structure decomposition of a cp2 preserver");
  c_dec->add_option("map", map_arg, "SymMap JSON, constructor spec, or file")->required();
  c_dec->add_option("--xy", xy_arg, "JSON file {\"X\": rows, \"Y\": rows}; seeded when absent");
  add_common(c_dec);

  CLI::App* c_claims = app.add_subcommand("claims", "run the nine-claim probe suite");
  add_common(c_claims);

  CLI::App* c_gen = app.add_subcommand("generate", "seeded generators with self-verification");
  c_gen->add_option("what", kind, "cone-element, sem-map, pi-dual, or lorentz-pi")
      ->required()
      ->check(CLI::IsMember({"cone-element", "sem-map", "pi-dual", "lorentz-pi"}));
  c_gen->add_option("--cone", cone_token, "cone token for element/map generators");
  c_gen->add_option("--terms", terms, "terms in a lorentz-pi combination");
  c_gen->add_option("--count", count, "number of pi-dual elements");
  c_gen->add_flag("--boundary", boundary, "sample the cone boundary instead of the interior");
  add_common(c_gen);

  CLI::App* c_fac = app.add_subcommand("factor", "certificate factorizations");
  c_fac->add_option("mode", mode, "cop-split or cp-factor")
      ->required()
      ->check(CLI::IsMember({"cop-split", "cp-factor"}));
  c_fac->add_option("matrix", point_arg, "JSON file or inline JSON")->required();
  add_common(c_fac);

  std::vector<const char*> argv;
  argv.push_back("copos");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 3;
  }

  try {
    if (app.got_subcommand(c_check)) return cmd_check(cone_token, point_arg, cfg, compact, out);
    if (app.got_subcommand(c_pres)) return cmd_preserver(map_arg, cone_token, cfg, compact, out);
    if (app.got_subcommand(c_dec)) return cmd_decompose(map_arg, xy_arg, cfg, compact, out);
    if (app.got_subcommand(c_claims)) return cmd_claims(cfg, compact, out);
    if (app.got_subcommand(c_gen))
      return cmd_generate(kind, cone_token, terms, count, boundary, cfg, compact, out);
    if (app.got_subcommand(c_fac)) return cmd_factor(mode, point_arg, cfg, compact, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  err << "usage error: no subcommand\n";
  return 3;
}

}  // namespace copos
