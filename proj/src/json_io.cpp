#include "copos/json_io.hpp"

#include "copos/errors.hpp"

namespace copos {

namespace {

double number_at(const Json& j, const char* what) {
  if (!j.is_number()) throw Error(Err::BadInput, std::string(what) + " must be a number");
  return j.get<double>();
}

}  // namespace

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw Error(Err::BadInput, "matrix must be an array of rows");
  const size_t r = j.size();
  const size_t c = j[0].size();
  Matrix m(static_cast<int>(r), static_cast<int>(c));
  for (size_t i = 0; i < r; ++i) {
    if (!j[i].is_array() || j[i].size() != c)
      throw Error(Err::BadInput, "matrix rows have unequal lengths");
    for (size_t k = 0; k < c; ++k)
      m(static_cast<int>(i), static_cast<int>(k)) = number_at(j[i][k], "matrix entry");
  }
  if (!m.allFinite()) throw Error(Err::BadInput, "matrix has non-finite entries");
  return m;
}

Json to_json(const Vector& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error(Err::BadInput, "vector must be an array");
  Vector v(static_cast<int>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v[static_cast<int>(i)] = number_at(j[i], "vector entry");
  if (!v.allFinite()) throw Error(Err::BadInput, "vector has non-finite entries");
  return v;
}

Json to_json(const SymMat& a) {
  Json out;
  out["order"] = a.order();
  out["rows"] = to_json(a.mat());
  return out;
}

SymMat symmat_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("order") || !j.contains("rows"))
    throw Error(Err::BadInput, "symmetric matrix needs {order, rows}");
  int n = j["order"].get<int>();
  Matrix m = matrix_from_json(j["rows"]);
  if (m.rows() != n || m.cols() != n)
    throw Error(Err::BadInput, "rows do not match the declared order");
  std::vector<std::vector<double>> rows(static_cast<size_t>(n),
                                        std::vector<double>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) rows[static_cast<size_t>(i)][static_cast<size_t>(k)] = m(i, k);
  return SymMat::from_rows(rows);
}

Json to_json(const CoordVec& v) {
  Json out;
  switch (v.frame) {
    case Frame::Svec: out["frame"] = "svec"; break;
    case Frame::Tvec: out["frame"] = "tvec"; break;
    case Frame::Ambient: out["frame"] = "ambient"; break;
  }
  out["values"] = to_json(v.values);
  return out;
}

CoordVec coordvec_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("frame") || !j.contains("values"))
    throw Error(Err::BadInput, "coordinate vector needs {frame, values}");
  std::string f = j["frame"].get<std::string>();
  Frame frame;
  if (f == "svec")
    frame = Frame::Svec;
  else if (f == "tvec")
    frame = Frame::Tvec;
  else if (f == "ambient")
    frame = Frame::Ambient;
  else
    throw Error(Err::BadInput, "unknown frame '" + f + "'");
  return CoordVec{frame, vector_from_json(j["values"])};
}

Json provenance_to_json(const Provenance& p) {
  Json out;
  out["kind"] = provenance_kind(p);
  if (auto* s = std::get_if<ProvStandard>(&p)) out["R"] = to_json(s->R);
  if (auto* l = std::get_if<ProvLyapunov>(&p)) out["A"] = to_json(l->A);
  if (auto* g = std::get_if<ProvGenLyapunov>(&p)) {
    out["A"] = to_json(g->A);
    out["B"] = to_json(g->B);
  }
  if (auto* r = std::get_if<ProvRankOne>(&p)) {
    out["A"] = to_json(r->A);
    out["B"] = to_json(r->B);
  }
  if (auto* m = std::get_if<ProvMonomial>(&p)) out["M"] = to_json(m->M);
  return out;
}

Provenance provenance_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) throw Error(Err::BadInput, "provenance needs a kind");
  std::string kind = j["kind"].get<std::string>();
  if (kind == "general") return ProvGeneral{};
  if (kind == "standard") return ProvStandard{matrix_from_json(j.at("R"))};
  if (kind == "lyapunov") return ProvLyapunov{matrix_from_json(j.at("A"))};
  if (kind == "genlyap")
    return ProvGenLyapunov{matrix_from_json(j.at("A")), matrix_from_json(j.at("B"))};
  if (kind == "rankone")
    return ProvRankOne{symmat_from_json(j.at("A")), symmat_from_json(j.at("B"))};
  if (kind == "monomial") return ProvMonomial{matrix_from_json(j.at("M"))};
  throw Error(Err::BadInput, "unknown provenance kind '" + kind + "'");
}

Json to_json(const SymMap& L) {
  Json out;
  out["order"] = L.order;
  out["frame"] = "svec";
  out["matrix"] = to_json(L.m);
  out["provenance"] = provenance_to_json(L.prov);
  return out;
}

SymMap symmap_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("order") || !j.contains("matrix"))
    throw Error(Err::BadInput, "operator needs {order, frame, matrix}");
  if (j.contains("frame") && j["frame"].get<std::string>() != "svec")
    throw Error(Err::BadInput, "operators serialize in the svec frame");
  SymMap L;
  L.order = j["order"].get<int>();
  require_order(L.order);
  L.m = matrix_from_json(j["matrix"]);
  if (L.m.rows() != L.dim() || L.m.cols() != L.dim())
    throw Error(Err::BadInput, "operator matrix does not match the order");
  if (j.contains("provenance")) L.prov = provenance_from_json(j["provenance"]);
  return L;
}

SymMap symmap_from_spec(const Json& j) {
  if (!j.is_object()) throw Error(Err::BadInput, "operator spec must be an object");
  if (j.contains("standard")) return standard_map(matrix_from_json(j["standard"]));
  if (j.contains("lyapunov")) return lyapunov_map(matrix_from_json(j["lyapunov"]));
  if (j.contains("genlyap")) {
    const Json& ab = j["genlyap"];
    if (!ab.is_array() || ab.size() != 2)
      throw Error(Err::BadInput, "genlyap spec is [A, B]");
    return gen_lyapunov_map(matrix_from_json(ab[0]), matrix_from_json(ab[1]));
  }
  if (j.contains("rankone")) {
    const Json& ab = j["rankone"];
    if (!ab.is_array() || ab.size() != 2)
      throw Error(Err::BadInput, "rankone spec is [A, B]");
    auto read_sym = [](const Json& e) {
      return e.is_object() ? symmat_from_json(e) : SymMat::from_upper(matrix_from_json(e));
    };
    return rank_one_map(read_sym(ab[0]), read_sym(ab[1]));
  }
  if (j.contains("monomial")) {
    const Json& ps = j["monomial"];
    if (!ps.is_array() || ps.size() != 2)
      throw Error(Err::BadInput, "monomial spec is [perm, scales]");
    std::vector<int> perm;
    for (const Json& e : ps[0]) perm.push_back(e.get<int>());
    std::vector<double> scales;
    for (const Json& e : ps[1]) scales.push_back(number_at(e, "scale"));
    return monomial_congruence(perm, scales);
  }
  return symmap_from_json(j);
}

Json certificate_to_json(const Certificate& c) {
  Json out;
  if (auto* f = std::get_if<CpFactorCert>(&c)) {
    out["type"] = "cp_factor";
    out["B"] = to_json(f->B);
  } else if (auto* s = std::get_if<CopSplitCert>(&c)) {
    out["type"] = "cop_split";
    out["P"] = to_json(s->P);
    out["N"] = to_json(s->N);
  } else if (auto* v = std::get_if<SimplexViolationCert>(&c)) {
    out["type"] = "simplex_violation";
    out["x"] = to_json(v->x);
    out["value"] = v->value;
  } else if (auto* e = std::get_if<EntryViolationCert>(&c)) {
    out["type"] = "entry_violation";
    out["i"] = e->i;
    out["j"] = e->j;
    out["value"] = e->value;
  } else if (auto* g = std::get_if<EigViolationCert>(&c)) {
    out["type"] = "eig_violation";
    out["v"] = to_json(g->v);
    out["value"] = g->value;
  }
  return out;
}

Json membership_to_json(ConeRef cone, const MembershipReport& r) {
  Json out;
  out["cone"] = cone.token();
  switch (r.status) {
    case MemberStatus::Interior: out["status"] = "interior"; break;
    case MemberStatus::Boundary: out["status"] = "boundary"; break;
    case MemberStatus::Outside: out["status"] = "outside"; break;
  }
  out["in_cone"] = r.status != MemberStatus::Outside;
  out["margin"] = r.margin;
  out["scaled_tol"] = r.scaled_tol;
  if (r.certificate) out["certificate"] = certificate_to_json(*r.certificate);
  return out;
}

}  // namespace copos
