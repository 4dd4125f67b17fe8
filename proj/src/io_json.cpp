#include "ader/io_json.hpp"

#include <stdexcept>

namespace ader::io {

json vec_to_json(const Vector& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Vector vec_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a JSON array for a vector");
  Vector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v(static_cast<int>(i)) = j[i].get<double>();
  return v;
}

json mat_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) rows.push_back(vec_to_json(m.row(i).transpose()));
  return rows;
}

Matrix mat_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a JSON array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) m(i, k) = j[i][k].get<double>();
  return m;
}

json body_to_json(const Body& b) {
  json j;
  if (b.is_polytope()) {
    j["type"] = "polytope";
    json verts = json::array();
    for (const auto& v : b.polytope().vertices()) verts.push_back(vec_to_json(v));
    j["vertices"] = verts;
  } else {
    j["type"] = "ellipsoid";
    j["center"] = vec_to_json(b.ellipsoid().center());
    j["shape"] = mat_to_json(b.ellipsoid().shape());
  }
  return j;
}

Body body_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "polytope") {
    if (j.contains("vertices")) {
      std::vector<Vector> pts;
      for (const auto& row : j.at("vertices")) pts.push_back(vec_from_json(row));
      return Body(Polytope::from_vertices(pts));
    }
    if (j.contains("facets")) {
      std::vector<Polytope::Facet> fs;
      for (const auto& f : j.at("facets"))
        fs.push_back({vec_from_json(f.at("normal")), f.at("offset").get<double>()});
      return Body(Polytope::from_facets(fs));
    }
    throw std::invalid_argument("polytope body needs \"vertices\" or \"facets\"");
  }
  if (type == "ellipsoid")
    return Body(Ellipsoid(vec_from_json(j.at("center")), mat_from_json(j.at("shape"))));
  throw std::invalid_argument("unknown body type: " + type);
}

json chain_to_json(const ContainmentChain& chain) {
  json j;
  j["inner_shape"] = body_to_json(chain.inner_shape);
  j["inner_center"] = vec_to_json(chain.c);
  j["inner_radius"] = chain.r;
  j["middle"] = body_to_json(chain.middle);
  j["outer_shape"] = body_to_json(chain.outer_shape);
  j["outer_center"] = vec_to_json(chain.d);
  j["outer_radius"] = chain.R;
  return j;
}

ContainmentChain chain_from_json(const json& j) {
  ContainmentChain chain{body_from_json(j.at("inner_shape")), vec_from_json(j.at("inner_center")),
                         j.at("inner_radius").get<double>(),  body_from_json(j.at("middle")),
                         body_from_json(j.at("outer_shape")), vec_from_json(j.at("outer_center")),
                         j.at("outer_radius").get<double>()};
  return chain;
}

json certificate_to_json(const AderCertificate& cert, const ContainmentChain* chain_ref) {
  json j;
  json inner = json::array();
  for (size_t i = 0; i < cert.inner.size(); ++i) {
    json p;
    p["y"] = vec_to_json(cert.inner[i].point);
    p["a"] = vec_to_json(cert.inner[i].normal);
    p["weight"] = cert.inner_weights(static_cast<int>(i));
    inner.push_back(p);
  }
  json outer = json::array();
  for (size_t i = 0; i < cert.outer.size(); ++i) {
    json p;
    p["y"] = vec_to_json(cert.outer[i].point);
    p["a"] = vec_to_json(cert.outer[i].normal);
    p["weight"] = cert.outer_weights(static_cast<int>(i));
    outer.push_back(p);
  }
  j["inner"] = inner;
  j["outer"] = outer;
  if (chain_ref) j["chain_ref"] = chain_to_json(*chain_ref);
  return j;
}

AderCertificate certificate_from_json(const json& j, const ContainmentChain& chain) {
  AderCertificate cert;
  const auto& ji = j.at("inner");
  const auto& jo = j.at("outer");
  cert.inner_weights.resize(ji.size());
  for (size_t i = 0; i < ji.size(); ++i) {
    cert.inner.push_back({vec_from_json(ji[i].at("y")), vec_from_json(ji[i].at("a")), chain.c});
    cert.inner_weights(static_cast<int>(i)) = ji[i].at("weight").get<double>();
  }
  cert.outer_weights.resize(jo.size());
  for (size_t i = 0; i < jo.size(); ++i) {
    cert.outer.push_back({vec_from_json(jo[i].at("y")), vec_from_json(jo[i].at("a")), chain.d});
    cert.outer_weights(static_cast<int>(i)) = jo[i].at("weight").get<double>();
  }
  return cert;
}

json report_to_json(const CertificateReport& rep) {
  json j;
  json checks = json::array();
  for (const auto& c : rep.checks) {
    json e;
    e["name"] = c.name;
    e["value"] = c.value;
    e["threshold"] = c.threshold;
    e["pass"] = c.pass;
    checks.push_back(e);
  }
  j["checks"] = checks;
  j["pass"] = rep.pass;
  j["inner_trace"] = rep.inner_trace;
  j["outer_trace"] = rep.outer_trace;
  j["weighted_inner_points"] = vec_to_json(rep.weighted_inner_points);
  j["weighted_outer_points"] = vec_to_json(rep.weighted_outer_points);
  return j;
}

json solve_result_to_json(const SolveResult& res, unsigned seed) {
  json j;
  j["status"] = to_string(res.status);
  j["ratio"] = res.chain.ratio();
  j["chain"] = chain_to_json(res.chain);
  if (res.certificate)
    j["certificate"] = certificate_to_json(*res.certificate, &res.chain);
  else
    j["certificate"] = nullptr;
  j["frame"] = mat_to_json(res.frame);
  json trace = json::array();
  for (const auto& t : res.trace) {
    json e;
    e["iter"] = t.iter;
    e["ratio"] = t.ratio;
    e["margin"] = t.margin;
    e["step"] = t.step;
    trace.push_back(e);
  }
  j["trace"] = trace;
  j["seed"] = seed;
  return j;
}

json mean_path_to_json(const MeanPath& path) {
  json j;
  j["axes"] = mat_to_json(path.axes);
  j["ratios"] = vec_to_json(path.ratios);
  j["inner_radii"] = json::array({path.r0, path.r1});
  j["outer_radii"] = json::array({path.big_r0, path.big_r1});
  j["inner_centers"] = json::array({vec_to_json(path.c0), vec_to_json(path.c1)});
  j["outer_centers"] = json::array({vec_to_json(path.d0), vec_to_json(path.d1)});
  return j;
}

MeanPath mean_path_from_json(const json& j) {
  MeanPath path;
  path.axes = mat_from_json(j.at("axes"));
  path.ratios = vec_from_json(j.at("ratios"));
  path.r0 = j.at("inner_radii")[0].get<double>();
  path.r1 = j.at("inner_radii")[1].get<double>();
  path.big_r0 = j.at("outer_radii")[0].get<double>();
  path.big_r1 = j.at("outer_radii")[1].get<double>();
  path.c0 = vec_from_json(j.at("inner_centers")[0]);
  path.c1 = vec_from_json(j.at("inner_centers")[1]);
  path.d0 = vec_from_json(j.at("outer_centers")[0]);
  path.d1 = vec_from_json(j.at("outer_centers")[1]);
  path.validate();
  return path;
}

json mean_result_to_json(const MeanResult& res) {
  json j;
  json e;
  e["type"] = "ellipsoid";
  e["center"] = vec_to_json(res.ellipsoid.center());
  e["shape"] = mat_to_json(res.ellipsoid.shape());
  j["ellipsoid"] = e;
  j["contact_subspace"] = mat_to_json(res.contact_subspace);
  j["center_equality_required"] = res.center_equality_required;
  return j;
}

json point_set_to_json(const PointSet& ps) {
  json j;
  json pts = json::array();
  for (const auto& p : ps.points) pts.push_back(vec_to_json(p));
  j["points"] = pts;
  return j;
}

PointSet point_set_from_json(const json& j) {
  PointSet ps;
  for (const auto& row : j.at("points")) ps.points.push_back(vec_from_json(row));
  return ps;
}

json subspace_to_json(const Subspace& u) {
  json j;
  json rows = json::array();
  for (int i = 0; i < u.basis.cols(); ++i) rows.push_back(vec_to_json(u.basis.col(i)));
  j["basis"] = rows;
  return j;
}

Subspace subspace_from_json(const json& j) {
  const auto& rows = j.at("basis");
  if (rows.empty()) throw std::invalid_argument("subspace needs an ambient dimension; give [] rows of it");
  const int d = static_cast<int>(rows[0].size());
  Matrix cols(d, rows.size());
  for (size_t i = 0; i < rows.size(); ++i) cols.col(static_cast<int>(i)) = vec_from_json(rows[i]);
  return Subspace::span(cols, d);
}

json witness_to_json(const SeparationWitness& w) {
  json j;
  if (std::holds_alternative<Separated>(w)) {
    const auto& s = std::get<Separated>(w);
    j["type"] = "separated";
    j["a"] = vec_to_json(s.a);
    j["v"] = vec_to_json(s.v);
    j["w"] = vec_to_json(s.w);
    j["margin"] = s.margin;
  } else {
    const auto& s = std::get<Intersecting>(w);
    j["type"] = "intersecting";
    j["point"] = vec_to_json(s.point);
    j["combo_k"] = vec_to_json(s.combo_k);
    j["combo_l"] = vec_to_json(s.combo_l);
  }
  return j;
}

std::string dump(const json& j) { return j.dump(2); }

}  // namespace ader::io
