#pragma once

#include <json.hpp>

#include "copos/cones.hpp"
#include "copos/linmaps.hpp"
#include "copos/symspace.hpp"

namespace copos {

using Json = nlohmann::ordered_json;

Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json to_json(const Vector& v);
Vector vector_from_json(const Json& j);

Json to_json(const SymMat& a);
SymMat symmat_from_json(const Json& j);

Json to_json(const CoordVec& v);
CoordVec coordvec_from_json(const Json& j);

Json provenance_to_json(const Provenance& p);
Provenance provenance_from_json(const Json& j);

Json to_json(const SymMap& L);
SymMap symmap_from_json(const Json& j);

// Accepts either a serialized SymMap or one of the constructor specs
// {"standard": R}, {"lyapunov": A}, {"genlyap": [A,B]}, {"rankone": [A,B]},
// {"monomial": [perm, scales]}.
SymMap symmap_from_spec(const Json& j);

Json certificate_to_json(const Certificate& c);
Json membership_to_json(ConeRef cone, const MembershipReport& r);

}  // namespace copos
