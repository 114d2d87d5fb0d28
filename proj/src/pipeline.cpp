#include "fdattr/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "fdattr/error.hpp"

namespace fdattr {

namespace {

// Reads typed values from a parameter block and records every resolved
// value, defaults included.
class Params {
 public:
  Params(const json& in, const std::string& where) : in_(in), where_(where) {
    require(in_.is_object(), where_ + ": parameters must be a JSON object");
  }

  bool has(const std::string& key) const { return in_.contains(key); }

  double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
    if (!in_.contains(key)) {
      require(fallback.has_value(), where_ + ": missing required number '" + key + "'");
      resolved[key] = *fallback;
      return *fallback;
    }
    const json& v = in_.at(key);
    require(v.is_number(), where_ + ": '" + key + "' must be a number");
    const double d = v.get<double>();
    require(std::isfinite(d), where_ + ": '" + key + "' must be finite");
    resolved[key] = d;
    return d;
  }

  int integer(const std::string& key, std::optional<int> fallback = std::nullopt) {
    if (!in_.contains(key)) {
      require(fallback.has_value(), where_ + ": missing required integer '" + key + "'");
      resolved[key] = *fallback;
      return *fallback;
    }
    const json& v = in_.at(key);
    require(v.is_number_integer(), where_ + ": '" + key + "' must be an integer");
    const int i = v.get<int>();
    resolved[key] = i;
    return i;
  }

  bool flag(const std::string& key, bool fallback) {
    if (!in_.contains(key)) {
      resolved[key] = fallback;
      return fallback;
    }
    require(in_.at(key).is_boolean(), where_ + ": '" + key + "' must be a boolean");
    const bool b = in_.at(key).get<bool>();
    resolved[key] = b;
    return b;
  }

  std::string text(const std::string& key, std::optional<std::string> fallback = std::nullopt) {
    if (!in_.contains(key)) {
      require(fallback.has_value(), where_ + ": missing required string '" + key + "'");
      resolved[key] = *fallback;
      return *fallback;
    }
    require(in_.at(key).is_string(), where_ + ": '" + key + "' must be a string");
    const std::string s = in_.at(key).get<std::string>();
    resolved[key] = s;
    return s;
  }

  const json& raw(const std::string& key) {
    require(in_.contains(key), where_ + ": missing required entry '" + key + "'");
    resolved[key] = in_.at(key);
    return in_.at(key);
  }

  json block(const std::string& key) {
    if (!in_.contains(key)) return json::object();
    return in_.at(key);
  }

  json resolved = json::object();

 private:
  const json& in_;
  std::string where_;
};

// Rows of the JSON array are vectors; returns them as columns.
Eigen::MatrixXd vectors_from_json(const json& j, const std::string& what) {
  const Eigen::MatrixXd rows = matrix_from_json(j);
  require(rows.rows() > 0 && rows.cols() > 0, what + " must be a nonempty array of vectors");
  return rows.transpose();
}

NormDescriptor norm_param(Params& p, int default_dim) {
  if (!p.has("norm")) {
    require(default_dim > 0, "a 'norm' entry is required");
    const NormDescriptor nd = NormDescriptor::l2(default_dim);
    p.resolved["norm"] = norm_to_json(nd);
    return nd;
  }
  json j = p.raw("norm");
  if (j.is_object() && !j.contains("dimension") && default_dim > 0) j["dimension"] = default_dim;
  const NormDescriptor nd = norm_from_json(j);
  p.resolved["norm"] = norm_to_json(nd);
  return nd;
}

json certificate_to_json(const CoverageCertificate& c) {
  json j;
  j["probes"] = c.probes;
  j["uncovered"] = c.uncovered;
  j["worst_distance"] = c.worst_distance;
  j["inflation"] = c.inflation;
  j["passed"] = c.passed();
  return j;
}

// ---------------------------------------------------------------- auerbach

RunResult run_auerbach(const PipelineConfig& cfg) {
  Params p(cfg.params, "auerbach");
  const Eigen::MatrixXd basis = vectors_from_json(p.raw("basis"), "'basis'");
  const NormDescriptor nd = norm_param(p, static_cast<int>(basis.rows()));
  require(nd.dimension() == basis.rows(), "auerbach: basis vectors and norm differ in dimension");
  AuerbachOptions opt;
  opt.restarts = p.integer("restarts", opt.restarts);
  opt.tolerance = p.number("tolerance", opt.tolerance);
  opt.seed = cfg.seed;
  const AuerbachBasis b = auerbach_basis(Subspace(basis), nd, opt);
  const IsomorphismCertificate cert = bm_certificate(b);

  RunResult out;
  json cj;
  cj["J_norm_bound"] = cert.J_norm_bound;
  cj["Jinv_norm_bound"] = cert.Jinv_norm_bound;
  cj["product"] = cert.product();
  cj["log_distance_bound"] = std::log(cert.product());
  cj["log_n"] = std::log(static_cast<double>(b.dim()));
  out.report["auerbach"] = auerbach_to_json(b);
  out.report["certificate"] = cj;
  out.report["config"] = p.resolved;
  return out;
}

// ------------------------------------------------------------------- cover

RunResult run_cover(const PipelineConfig& cfg) {
  Params p(cfg.params, "cover");
  const double r = p.number("r", 1.0);
  const double rho = p.number("rho");
  const std::string method = p.text("method", "auto");
  require(method == "auto" || method == "grid" || method == "isomorphism",
          "cover: method must be 'auto', 'grid' or 'isomorphism'");
  std::optional<Eigen::MatrixXd> basis;
  int n = 0;
  if (p.has("basis")) {
    basis = vectors_from_json(p.raw("basis"), "'basis'");
    n = static_cast<int>(basis->cols());
  } else {
    n = p.integer("n");
    require(n >= 1, "cover: n must be positive");
  }
  const int m = basis ? static_cast<int>(basis->rows()) : n;
  const NormDescriptor nd = norm_param(p, m);
  require(nd.dimension() == m, "cover: basis and norm differ in dimension");
  const Subspace U = basis ? Subspace(*basis) : Subspace::full(m);

  CoveringOptions opt;
  opt.hilbert_constant = cfg.hilbert_constant;
  opt.auerbach.seed = cfg.seed;
  p.resolved["hilbert_constant"] = cfg.hilbert_constant;

  bool use_grid = method == "grid";
  if (method == "auto") use_grid = !basis && nd.kind() == NormKind::linf;
  require(!use_grid || (!basis && nd.kind() == NormKind::linf), "cover: grid method needs the full linf space");
  p.resolved["method"] = use_grid ? "grid" : "isomorphism";
  const CoverResult cover = use_grid ? cover_linf_ball(n, r, rho) : cover_subspace_ball(U, nd, r, rho, opt);

  const int probes = p.integer("probes", 4096);
  const CoverageCertificate cert = certify_coverage(cover, sample_subspace_ball(U, nd, r, probes), nd);

  RunResult out;
  out.report["count"] = cover.count();
  out.report["bound"] = cover.bound;
  out.report["theoretical_bound"] = subspace_cover_bound(n, r, rho, cfg.hilbert_constant);
  out.report["radius"] = cover.radius;
  out.report["method"] = to_string(cover.method);
  out.report["certificate"] = certificate_to_json(cert);
  out.report["config"] = p.resolved;
  out.files.emplace_back("cover.csv", cover_to_csv(cover));
  out.files.emplace_back("cover.json", cover_to_json(cover).dump(2) + "\n");
  return out;
}

// --------------------------------------------------------------- nu-lambda

RunResult run_nu_lambda(const PipelineConfig& cfg) {
  Params p(cfg.params, "nu-lambda");
  const double lambda = p.number("lambda");
  require(lambda > 0.0, "nu-lambda: lambda must be positive");
  std::optional<OperatorSplit> split;
  if (p.has("T")) {
    const Eigen::MatrixXd T = matrix_from_json(p.raw("T"));
    require(T.rows() == T.cols() && T.rows() > 0, "nu-lambda: T must be a nonempty square matrix");
    const NormDescriptor nd = norm_param(p, static_cast<int>(T.rows()));
    const double target = p.number("contraction_target", 0.45 * lambda);
    split = split_by_svd(T, nd, target);
  } else {
    const Eigen::MatrixXd L = matrix_from_json(p.raw("L"));
    const Eigen::MatrixXd C = matrix_from_json(p.raw("C"));
    require(L.rows() == L.cols() && L.rows() > 0, "nu-lambda: L must be a nonempty square matrix");
    const NormDescriptor nd = norm_param(p, static_cast<int>(L.rows()));
    split = make_split(L, C, nd, p.number("contraction_bound", 0.0));
  }
  const NuLambdaResult nu = nu_lambda(*split, lambda);

  RunResult out;
  out.report["nu_lambda"] = nu_lambda_to_json(nu);
  out.report["split"] = split_to_json(*split);
  const bool cover = p.flag("cover", lambda < 0.5);
  if (cover) {
    CoveringOptions opt;
    opt.hilbert_constant = cfg.hilbert_constant;
    opt.auerbach.seed = cfg.seed;
    const ImageCover ic = cover_image_ball(*split, lambda, opt);
    const int probes = p.integer("probes", 4096);
    const Eigen::MatrixXd images = split->T() * sample_unit_ball(split->nd, probes);
    const CoverageCertificate cert = certify_coverage(ic.cover, images, split->nd);
    json cj;
    cj["count"] = ic.cover.count();
    cj["radius"] = ic.cover.radius;
    cj["D"] = ic.D;
    cj["bound"] = ic.bound;
    cj["certificate"] = certificate_to_json(cert);
    out.report["image_cover"] = cj;
    out.files.emplace_back("image_cover.csv", cover_to_csv(ic.cover));
  }
  out.report["config"] = p.resolved;
  return out;
}

// ------------------------------------------------------------------- bound

SemilinearConstants constants_from_json(Params& p) {
  SemilinearConstants c;
  c.M = p.number("M", 1.0);
  c.M_bar = p.number("M_bar", c.M);
  c.N = p.number("N");
  c.alpha = p.number("alpha");
  c.t = p.number("t", 1.0);
  const std::string form = p.text("tail_form", "corrected");
  require(form == "corrected" || form == "displayed", "bound: tail_form must be 'corrected' or 'displayed'");
  c.form = form == "corrected" ? TailForm::corrected : TailForm::displayed;
  const json& rates = p.raw("rates");
  require(rates.is_array() && !rates.empty(), "bound: 'rates' must be a nonempty array");
  for (const auto& r : rates) {
    require(r.is_number() && r.get<double>() > 0.0, "bound: rates must be positive numbers");
    c.rates.push_back(r.get<double>());
  }
  if (p.has("projection_dims")) {
    for (const auto& d : p.raw("projection_dims")) {
      require(d.is_number_integer(), "bound: projection_dims must be integers");
      c.projection_dims.push_back(d.get<int>());
    }
  } else {
    for (std::size_t n = 0; n < c.rates.size(); ++n) c.projection_dims.push_back(static_cast<int>(n));
    p.resolved["projection_dims"] = c.projection_dims;
  }
  c.provenance = {{"M", "input"}, {"M_bar", p.has("M_bar") ? "input" : "taken equal to M"}, {"N", "input"},
                  {"alpha", "input"}, {"rates", "input"}, {"t", "input"}};
  return c;
}

RunResult run_bound(const PipelineConfig& cfg) {
  Params p(cfg.params, "bound");
  const BoundFormula formula = bound_formula_from_string(p.text("formula", "mane"));
  DimBoundReport report;
  RunResult out;
  switch (formula) {
    case BoundFormula::lemma1: {
      report.formula = BoundFormula::lemma1;
      report.M = p.number("M");
      report.contraction = p.number("contraction");
      report.bound = lemma1_bound(report.M, report.contraction);
      report.provenance = {{"M", "input"}, {"contraction", "input"}};
      break;
    }
    case BoundFormula::mane:
      report = mane_bound(p.integer("n"), p.number("D"), p.number("lambda"), p.integer("field_factor", 1));
      break;
    case BoundFormula::rank_limit:
      report = rank_limit_bound(p.integer("nu"), p.number("D"), p.integer("steps", 12));
      break;
    case BoundFormula::semilinear: {
      SemilinearConstants c = constants_from_json(p);
      choose_projection(c);
      const int nu = p.integer("nu", c.projection_dims[c.n0]);
      report = semilinear_bound(c, nu, p.number("D"));
      out.report["tails"] = c.tails;
      out.report["n0"] = c.n0;
      break;
    }
    case BoundFormula::power_iterate:
      throw InvalidInput("bound: power_iterate needs operator splits; use the nu-lambda or pipeline commands");
  }
  out.report["report"] = report_to_json(report);
  out.report["config"] = p.resolved;
  out.files.emplace_back("bound.csv", report_to_csv(report));
  return out;
}

// ---------------------------------------------------------------- boxcount

PointCloud cloud_param(Params& p) {
  if (p.has("points")) return PointCloud(vectors_from_json(p.raw("points"), "'points'"));
  if (p.has("csv")) {
    const std::string path = p.text("csv");
    std::ifstream in(path);
    require(static_cast<bool>(in), "boxcount: cannot open '" + path + "'");
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::vector<double> row;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) {
        try {
          row.push_back(std::stod(cell));
        } catch (const std::exception&) {
          throw InvalidInput("boxcount: non-numeric cell '" + cell + "' in '" + path + "'");
        }
      }
      require(rows.empty() || row.size() == rows.front().size(), "boxcount: ragged rows in '" + path + "'");
      rows.push_back(std::move(row));
    }
    require(!rows.empty(), "boxcount: no points in '" + path + "'");
    Eigen::MatrixXd P(rows.front().size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < rows[i].size(); ++j) P(j, i) = rows[i][j];
    }
    return PointCloud(P);
  }
  const std::string gen = p.text("generator", "square");
  if (gen == "cantor") return cantor_cloud(p.integer("level", 12));
  if (gen == "square") return square_cloud(p.integer("count", 1 << 18));
  if (gen == "segment") return segment_cloud(p.integer("count", 1 << 16));
  if (gen == "sierpinski") return ifs_cloud(sierpinski_maps(), p.integer("level", 10));
  throw InvalidInput("boxcount: unknown generator '" + gen + "'");
}

RunResult run_boxcount(const PipelineConfig& cfg) {
  Params p(cfg.params, "boxcount");
  const PointCloud K = cloud_param(p);
  NormDescriptor nd = NormDescriptor::linf(K.ambient_dim());
  if (p.has("norm")) nd = norm_param(p, K.ambient_dim());
  else p.resolved["norm"] = norm_to_json(nd);
  const BoxCountCurve curve =
      boxcount_estimate(K, nd, p.number("eps0", 0.5), p.integer("k_max", 7), p.integer("window", 4));
  RunResult out;
  out.report["points"] = K.size();
  out.report["curve"] = curve_to_json(curve);
  out.report["config"] = p.resolved;
  out.files.emplace_back("boxcount.csv", curve_to_csv(curve));
  return out;
}

// ----------------------------------------------------------------- systems

struct BuiltSystem {
  DynamicalSystem sys;
  std::optional<GalerkinParabolic> galerkin;
  std::optional<Forcing> forcing;
  int k = 0;
  json resolved;
};

BuiltSystem build_system(const json& block) {
  Params p(block, "system");
  BuiltSystem b;
  const std::string name = p.text("name", "damped_coupled");
  if (name == "damped_coupled") {
    b.k = p.integer("k", 1);
    const double beta = p.number("beta", 1.0);
    const std::string f = p.text("forcing", "cubic");
    if (f == "cubic") {
      b.forcing = cubic_forcing();
    } else if (f == "linear") {
      b.forcing = linear_forcing(p.number("c", 1.0));
    } else {
      throw InvalidInput("system: unknown forcing '" + f + "'");
    }
    b.sys = damped_coupled_system(b.k, beta, *b.forcing);
  } else if (name == "chafee_infante") {
    b.galerkin = chafee_infante_galerkin(p.integer("modes", 16), p.number("mu", 10.5), p.number("shift", 9.5),
                                         p.number("alpha", 0.1), p.number("theta", 0.9));
    b.sys = b.galerkin->system();
  } else if (name == "linear") {
    const Eigen::MatrixXd A = matrix_from_json(p.raw("A"));
    require(A.rows() == A.cols() && A.rows() > 0, "system: A must be a nonempty square matrix");
    b.sys.state_dim = static_cast<int>(A.rows());
    b.sys.name = "linear";
    b.sys.vector_field = [A](const Eigen::VectorXd& x) -> Eigen::VectorXd { return A * x; };
    b.sys.jacobian = [A](const Eigen::VectorXd&) -> Eigen::MatrixXd { return A; };
  } else {
    throw InvalidInput("system: unknown name '" + name + "'");
  }
  b.resolved = p.resolved;
  return b;
}

SamplingOptions sampling_param(const json& block, json& resolved) {
  Params p(block, "sampling");
  SamplingOptions o;
  o.n_initial = p.integer("n_initial", o.n_initial);
  o.initial_radius = p.number("initial_radius", o.initial_radius);
  o.t_transient = p.number("t_transient", o.t_transient);
  o.t_sample = p.number("t_sample", o.t_sample);
  o.dt = p.number("dt", o.dt);
  o.stride = p.integer("stride", o.stride);
  resolved = p.resolved;
  return o;
}

RunResult run_simulate(const PipelineConfig& cfg) {
  Params p(cfg.params, "simulate");
  BuiltSystem b = build_system(p.block("system"));
  p.resolved["system"] = b.resolved;
  Eigen::VectorXd x0;
  if (p.has("x0")) {
    x0 = vector_from_json(p.raw("x0"));
  } else {
    x0 = initial_grid(b.sys.state_dim, 1, 1.0).col(0);
    p.resolved["x0"] = vector_to_json(x0);
  }
  require(x0.size() == b.sys.state_dim, "simulate: x0 has the wrong dimension");
  const double T = p.number("T", 10.0);
  const double dt = p.number("dt", 1e-3);
  const int every = p.integer("record_every", 10);
  const Trajectory traj = simulate(b.sys, x0, T, dt, every);
  RunResult out;
  out.report["steps_recorded"] = traj.times.size();
  out.report["final_state"] = vector_to_json(traj.states.col(traj.states.cols() - 1));
  out.report["warnings"] = b.sys.warnings;
  out.report["config"] = p.resolved;
  out.files.emplace_back("trajectory.csv", trajectory_to_csv(traj));
  return out;
}

// ---------------------------------------------------------------- pipeline

std::vector<int> spread_indices(int size, int count) {
  std::vector<int> idx;
  count = std::min(count, size);
  for (int i = 0; i < count; ++i) {
    idx.push_back(static_cast<int>((static_cast<long long>(i) * size) / count));
  }
  return idx;
}

RunResult run_pipeline(const PipelineConfig& cfg) {
  Params p(cfg.params, "pipeline");
  BuiltSystem b = build_system(p.block("system"));
  p.resolved["system"] = b.resolved;
  json sampling_resolved;
  const SamplingOptions so = sampling_param(p.block("sampling"), sampling_resolved);
  p.resolved["sampling"] = sampling_resolved;
  const double t_map = p.number("map_time", 1.0);
  const int n_points = p.integer("derivative_points", 24);
  const double lambda = p.number("lambda", 0.2);
  require(lambda > 0.0 && lambda < 0.5, "pipeline: lambda must lie in (0, 1/2)");
  const double eps0 = p.number("eps0", 0.25);
  const int k_max = p.integer("k_max", 8);
  const int window = p.integer("window", 4);
  const bool write_cloud = p.flag("write_cloud", false);

  const NormDescriptor nd = b.galerkin ? b.galerkin->phase_norm() : NormDescriptor::l2(b.sys.state_dim);
  const PointCloud cloud = sample_attractor(b.sys, so);
  const std::vector<int> idx = spread_indices(cloud.size(), n_points);

  std::vector<Eigen::MatrixXd> derivatives;
  double D = 0.0;
  for (int i : idx) {
    derivatives.push_back(time_T_derivative(b.sys, cloud.points().col(i), t_map, so.dt));
    D = std::max(D, nd.operator_norm(derivatives.back()));
  }

  RunResult out;
  json rep;
  rep["samples"] = cloud.size();
  rep["derivative_points"] = static_cast<int>(idx.size());
  rep["D"] = D;
  rep["norm"] = norm_to_json(nd);

  DimBoundReport theoretical;
  if (b.galerkin) {
    const GalerkinParabolic& g = *b.galerkin;
    SemilinearConstants c;
    c.alpha = g.alpha;
    c.M = g.admissibility_constant();
    c.M_bar = c.M;
    double N = 0.0;
    for (int i : spread_indices(cloud.size(), p.integer("nonlinearity_points", 4096))) {
      N = std::max(N, g.derivative_norm(cloud.points().col(i)));
    }
    c.N = N;
    c.rates = g.tail_rates();
    for (int n = 0; n < g.modes; ++n) c.projection_dims.push_back(n);
    c.t = t_map;
    c.provenance = {{"M", "admissibility constant of the diagonal semigroup"},
                    {"M_bar", "taken equal to M"},
                    {"N", "measured sup of ||f'(u)||_{L(X^alpha, X)} over the sampled attractor"},
                    {"alpha", "input"},
                    {"rates", "theta (lambda_{n+1} - shift)"},
                    {"t", "map_time"}};
    choose_projection(c);
    const int n0 = c.n0;

    // Split every sampled derivative as P_n0 S + Q_n0 S.
    double worst_tail = 0.0;
    int nu_measured = 0;
    for (const auto& S : derivatives) {
      Eigen::MatrixXd C = Eigen::MatrixXd::Zero(g.modes, g.modes);
      C.topRows(n0) = S.topRows(n0);
      const Eigen::MatrixXd L = S - C;
      const OperatorSplit split = make_split(L, C, nd);
      worst_tail = std::max(worst_tail, split.contraction_bound);
      if (split.contraction_bound < c.lambda / 2.0) {
        nu_measured = std::max(nu_measured, nu_lambda(split, c.lambda).nu);
      }
    }
    theoretical = semilinear_bound(c, c.projection_dims[n0], D);
    json sc;
    sc["M"] = c.M;
    sc["M_bar"] = c.M_bar;
    sc["N"] = c.N;
    sc["alpha"] = c.alpha;
    sc["t"] = c.t;
    sc["n0"] = n0;
    sc["lambda"] = c.lambda;
    sc["tails"] = c.tails;
    sc["rates"] = c.rates;
    sc["gronwall_bound"] = gronwall_bound(c.M_bar, c.M, c.N, c.alpha, c.t);
    sc["measured_tail_norm"] = worst_tail;
    sc["split_in_L_lambda_half"] = worst_tail < c.lambda / 2.0;
    sc["nu_lambda_measured"] = nu_measured;
    rep["semilinear_constants"] = sc;
  } else {
    if (b.forcing) {
      int nu = 0;
      for (int i = 0; i < cloud.size(); ++i) {
        nu = std::max(nu, damped_nonlinear_rank(*b.forcing, b.k, cloud.points().col(i)));
      }
      theoretical = rank_limit_bound(nu, D);
      theoretical.provenance["n"] = "max rank of the Jacobian of the nonlinear part (0, f(x)) over the sample";
    }
    int n = 0;
    for (const auto& S : derivatives) {
      const OperatorSplit split = split_by_svd(S, nd, 0.45 * lambda);
      n = std::max(n, nu_lambda(split, lambda).nu);
    }
    const DimBoundReport mane = mane_bound(n, D, lambda, 1);
    rep["mane"] = report_to_json(mane);
    if (!b.forcing) theoretical = mane;
  }

  const BoxCountCurve curve = boxcount_estimate(cloud, nd, eps0, k_max, window);
  rep["theoretical"] = report_to_json(theoretical);
  rep["empirical"] = curve_to_json(curve);
  rep["theoretical_bound"] = theoretical.bound;
  rep["empirical_estimate"] = curve.estimate;
  rep["consistent"] = curve.estimate <= theoretical.bound;
  rep["warnings"] = b.sys.warnings;
  rep["config"] = p.resolved;
  out.report = rep;
  out.files.emplace_back("boxcount.csv", curve_to_csv(curve));
  if (write_cloud) out.files.emplace_back("cloud.csv", cloud_to_csv(cloud));
  return out;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"auerbach", "cover",    "nu-lambda", "bound",
                                                 "boxcount", "simulate", "pipeline"};
  return names;
}

RunResult run(const PipelineConfig& cfg) {
  RunResult out;
  if (cfg.command == "auerbach") out = run_auerbach(cfg);
  else if (cfg.command == "cover") out = run_cover(cfg);
  else if (cfg.command == "nu-lambda") out = run_nu_lambda(cfg);
  else if (cfg.command == "bound") out = run_bound(cfg);
  else if (cfg.command == "boxcount") out = run_boxcount(cfg);
  else if (cfg.command == "simulate") out = run_simulate(cfg);
  else if (cfg.command == "pipeline") out = run_pipeline(cfg);
  else throw InvalidInput("unknown command '" + cfg.command + "'");

  json report;
  report["command"] = cfg.command;
  report["seed"] = cfg.seed;
  report["status"] = "ok";
  for (auto& [k, v] : out.report.items()) report[k] = v;
  out.report = std::move(report);
  return out;
}

}  // namespace fdattr
