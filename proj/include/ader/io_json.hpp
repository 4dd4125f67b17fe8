#pragma once

#include <json.hpp>

#include "ader/mean_ellipsoids.hpp"
#include "ader/optimizer.hpp"
#include "ader/separation.hpp"

namespace ader::io {

using nlohmann::json;

json vec_to_json(const Vector& v);
Vector vec_from_json(const json& j);
json mat_to_json(const Matrix& m);  // row-major nested arrays
Matrix mat_from_json(const json& j);

json body_to_json(const Body& b);
Body body_from_json(const json& j);

json chain_to_json(const ContainmentChain& chain);
ContainmentChain chain_from_json(const json& j);  // structural parse; no verification

json certificate_to_json(const AderCertificate& cert, const ContainmentChain* chain_ref = nullptr);
AderCertificate certificate_from_json(const json& j, const ContainmentChain& chain);

json report_to_json(const CertificateReport& rep);
json solve_result_to_json(const SolveResult& res, unsigned seed);

json mean_path_to_json(const MeanPath& path);
MeanPath mean_path_from_json(const json& j);
json mean_result_to_json(const MeanResult& res);

json point_set_to_json(const PointSet& ps);
PointSet point_set_from_json(const json& j);
json subspace_to_json(const Subspace& u);
Subspace subspace_from_json(const json& j);
json witness_to_json(const SeparationWitness& w);

/// Keys sorted (nlohmann default), lossless doubles: identical inputs give
/// byte-identical text.
std::string dump(const json& j);

}  // namespace ader::io
