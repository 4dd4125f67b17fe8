#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "ader/errors.hpp"
#include "ader/io_json.hpp"
#include "ader/shapes.hpp"
#include "ader/svg.hpp"

namespace {

using ader::io::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 2;
constexpr int kExitIterationCap = 3;
constexpr int kExitUsage = 64;
constexpr int kExitBadInput = 65;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  return json::parse(in);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << text;
}

void emit(const json& j, const std::string& out_path) {
  const std::string text = ader::io::dump(j) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_text(out_path, text);
}

int status_code(ader::SolveStatus st) {
  return st == ader::SolveStatus::IterationCap ? kExitIterationCap : kExitOk;
}

int run_solve(const std::string& body_path, double tol, int max_iter, unsigned seed,
              const std::string& out_path) {
  ader::Body body = ader::io::body_from_json(load_json(body_path));
  if (!body.is_polytope()) throw std::invalid_argument("solve expects a polytope body");
  ader::SolveOptions opts;
  opts.opt_tol = tol;
  opts.max_iter = max_iter;
  opts.seed = seed;
  ader::SolveResult res = ader::solve_distance_to_ball(body.polytope(), opts);
  emit(ader::io::solve_result_to_json(res, seed), out_path);
  return status_code(res.status);
}

int run_sandwich(const std::string& inner_path, const std::string& outer_path, double tol,
                 int max_iter, unsigned seed, const std::string& out_path) {
  ader::Body l1 = ader::io::body_from_json(load_json(inner_path));
  ader::Body l2 = ader::io::body_from_json(load_json(outer_path));
  ader::SolveOptions opts;
  opts.opt_tol = tol;
  opts.max_iter = max_iter;
  opts.seed = seed;
  ader::SolveResult res = ader::solve_ball_between(l1, l2, opts);
  emit(ader::io::solve_result_to_json(res, seed), out_path);
  return status_code(res.status);
}

int run_verify(const std::string& chain_path, const std::string& cert_path,
               const std::string& out_path) {
  ader::ContainmentChain chain = ader::io::chain_from_json(load_json(chain_path));
  json cj = load_json(cert_path);
  ader::AderCertificate cert = ader::io::certificate_from_json(cj, chain);
  ader::CertificateReport rep = ader::verify_certificate(chain, cert);
  emit(ader::io::report_to_json(rep), out_path);
  return rep.pass ? kExitOk : kExitVerifyFail;
}

int run_mean(const std::string& path_path, double lambda, const std::string& mu_path,
             const std::string& out_path) {
  ader::MeanPath path = ader::io::mean_path_from_json(load_json(path_path));
  std::optional<ader::Vector> mu;
  if (!mu_path.empty()) mu = ader::io::vec_from_json(load_json(mu_path));
  auto mean = ader::simultaneous_mean(path, lambda, mu);
  json j;
  j["inner"] = ader::io::mean_result_to_json(mean.inner);
  j["outer"] = ader::io::mean_result_to_json(mean.outer);
  j["r_lambda"] = mean.r_lambda;
  j["R_lambda"] = mean.big_r_lambda;
  j["log_ratio"] = mean.log_ratio;
  emit(j, out_path);
  return kExitOk;
}

int run_separate(const std::string& k_path, const std::string& l_path, const std::string& u_path,
                 const std::string& out_path) {
  ader::PointSet k = ader::io::point_set_from_json(load_json(k_path));
  ader::PointSet l = ader::io::point_set_from_json(load_json(l_path));
  ader::Subspace u = ader::io::subspace_from_json(load_json(u_path));
  auto witness = ader::separate(k, l, u);
  emit(ader::io::witness_to_json(witness), out_path);
  return kExitOk;
}

int run_maurey(const std::string& body_path, double tol, unsigned seed, int jobs,
               const std::string& out_path) {
  ader::Body body = ader::io::body_from_json(load_json(body_path));
  if (!body.is_polytope()) throw std::invalid_argument("maurey expects a polytope body");
  ader::MaureyResult res = ader::maurey_reduce(body.polytope(), tol, seed, 8, jobs);
  json j;
  j["unique_pair"] = res.unique_pair;
  j["via_distance_bound"] = res.via_distance_bound;
  j["center_spread"] = res.center_spread;
  j["depth"] = res.depth;
  j["subspace"] = ader::io::mat_to_json(res.subspace);
  j["result"] = ader::io::solve_result_to_json(res.result, seed);
  emit(j, out_path);
  return status_code(res.result.status);
}

int run_diamrad(const std::string& body_path, const std::string& norm_path, double tol,
                int max_iter, const std::string& out_path) {
  ader::Body body = ader::io::body_from_json(load_json(body_path));
  ader::Body norm = ader::io::body_from_json(load_json(norm_path));
  if (!body.is_polytope()) throw std::invalid_argument("diamrad expects a polytope body");
  ader::DiamRadResult res = ader::diameter_inradius_position(body.polytope(), norm, tol, max_iter);
  json j;
  j["diameter"] = res.diameter;
  j["inradius"] = res.inradius;
  j["ratio"] = res.diameter / res.inradius;
  j["solve"] = ader::io::solve_result_to_json(res.solve, 0);
  json triples = json::array();
  for (const auto& t : res.triples) {
    json e;
    e["y"] = ader::io::vec_to_json(t.y);
    e["z"] = ader::io::vec_to_json(t.z);
    e["functional"] = ader::io::vec_to_json(t.functional);
    triples.push_back(e);
  }
  j["diameter_triples"] = triples;
  emit(j, out_path);
  return status_code(res.solve.status);
}

int run_demo_figure1(const std::string& svg_path) {
  using ader::Vector;
  auto ellipse = [](double cx, double cy, double a1, double a2) {
    Vector c(2);
    c << cx, cy;
    Vector h(2);
    h << a1, a2;
    return ader::Ellipsoid::from_axes(c, ader::Matrix::Identity(2, 2), h);
  };
  const double s2 = std::sqrt(2.0);
  std::vector<ader::svg::EllipseSpec> figure;
  figure.push_back({ellipse(0.0, 0.0, 1.0, 1.0), "#1f4fd8", "8 6", "E0+c0"});
  figure.push_back({ellipse(1.4, 0.8, 2.0, 0.25), "#d81f1f", "2 4", "E1+c1"});
  figure.push_back({ellipse(0.7, 0.4, s2, 0.5), "#7a1fd8", "", "El+cl"});
  figure.push_back({ellipse(-0.6, 0.8, s2, 0.5), "#222222", "10 4 2 4", "El+x"});
  write_text(svg_path, ader::svg::render(figure));
  std::cout << "wrote " << svg_path << "\n";
  return kExitOk;
}

int run_demo_simplex(int n, const std::string& out_path) {
  ader::Polytope s = ader::shapes::regular_simplex(n);
  ader::SolveResult res = ader::solve_distance_to_ball(s, 1e-9, 500);
  emit(ader::io::solve_result_to_json(res, 0), out_path);
  return status_code(res.status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"containment-chain optimality toolkit: Banach-Mazur distance positions, "
               "Ader certificates, mean ellipsoids"};
  app.require_subcommand(1);

  std::string body_path, inner_path, outer_path, chain_path, cert_path, out_path;
  std::string path_path, mu_path, k_path, l_path, u_path, norm_path, svg_path;
  double tol = 1e-8;
  double lambda = 0.5;
  int max_iter = 500;
  unsigned seed = 0;
  int jobs = 1;
  int demo_n = 3;

  auto* solve = app.add_subcommand("solve", "distance-to-ball position of a polytope");
  solve->add_option("--body", body_path, "body JSON")->required();
  solve->add_option("--tol", tol, "optimality tolerance");
  solve->add_option("--max-iter", max_iter, "iteration cap");
  solve->add_option("--seed", seed, "seed recorded in the output");
  solve->add_option("--out", out_path, "output JSON path (stdout otherwise)");

  auto* sandwich = app.add_subcommand("sandwich", "optimal ball sandwich between two bodies");
  sandwich->add_option("--inner", inner_path, "inner body JSON")->required();
  sandwich->add_option("--outer", outer_path, "outer body JSON")->required();
  sandwich->add_option("--tol", tol, "optimality tolerance");
  sandwich->add_option("--max-iter", max_iter, "iteration cap");
  sandwich->add_option("--seed", seed, "seed recorded in the output");
  sandwich->add_option("--out", out_path, "output JSON path");

  auto* verify = app.add_subcommand("verify", "re-check a certificate against a chain");
  verify->add_option("--chain", chain_path, "chain JSON")->required();
  verify->add_option("--cert", cert_path, "certificate JSON")->required();
  verify->add_option("--out", out_path, "report JSON path");

  auto* mean = app.add_subcommand("mean", "mean-ellipsoid interpolation along a path");
  mean->add_option("--path", path_path, "mean path JSON")->required();
  mean->add_option("--lambda", lambda, "interpolation weight in [0,1]")->required();
  mean->add_option("--mu", mu_path, "translation coefficients JSON (array)");
  mean->add_option("--out", out_path, "output JSON path");

  auto* separate = app.add_subcommand("separate", "subspace-constrained separation of point hulls");
  separate->add_option("--k", k_path, "first point set JSON")->required();
  separate->add_option("--l", l_path, "second point set JSON")->required();
  separate->add_option("--subspace", u_path, "subspace JSON")->required();
  separate->add_option("--out", out_path, "witness JSON path");

  auto* maurey = app.add_subcommand("maurey", "uniqueness probe / projection reduction");
  maurey->add_option("--body", body_path, "body JSON")->required();
  maurey->add_option("--tol", tol, "optimality tolerance");
  maurey->add_option("--seed", seed, "restart seed");
  maurey->add_option("--jobs", jobs, "parallel restarts");
  maurey->add_option("--out", out_path, "output JSON path");

  auto* diamrad = app.add_subcommand("diamrad", "diameter-inradius optimal position");
  diamrad->add_option("--body", body_path, "body JSON")->required();
  diamrad->add_option("--norm", norm_path, "origin-symmetric norm body JSON")->required();
  diamrad->add_option("--tol", tol, "optimality tolerance");
  diamrad->add_option("--max-iter", max_iter, "iteration cap");
  diamrad->add_option("--out", out_path, "output JSON path");

  auto* demo = app.add_subcommand("demo", "built-in demonstrations");
  auto* fig1 = demo->add_subcommand("figure1", "outer-mean counterexample figure");
  fig1->add_option("--svg", svg_path, "SVG output path")->required();
  auto* dsimplex = demo->add_subcommand("simplex", "distance position of the regular simplex");
  dsimplex->add_option("--n", demo_n, "dimension");
  dsimplex->add_option("--out", out_path, "output JSON path");
  demo->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (solve->parsed()) return run_solve(body_path, tol, max_iter, seed, out_path);
    if (sandwich->parsed()) return run_sandwich(inner_path, outer_path, tol, max_iter, seed, out_path);
    if (verify->parsed()) return run_verify(chain_path, cert_path, out_path);
    if (mean->parsed()) return run_mean(path_path, lambda, mu_path, out_path);
    if (separate->parsed()) return run_separate(k_path, l_path, u_path, out_path);
    if (maurey->parsed()) return run_maurey(body_path, tol, seed, jobs, out_path);
    if (diamrad->parsed()) return run_diamrad(body_path, norm_path, tol, max_iter, out_path);
    if (demo->parsed()) {
      if (fig1->parsed()) return run_demo_figure1(svg_path);
      if (dsimplex->parsed()) return run_demo_simplex(demo_n, out_path);
    }
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "invalid JSON: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid JSON content: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFail;
  }
  return kExitUsage;
}
