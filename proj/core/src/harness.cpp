#include "sovxxz/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sovxxz/errors.hpp"
#include "sovxxz/sov_basis.hpp"
#include "sovxxz/spectrum.hpp"
#include "sovxxz/tq_hom.hpp"
#include "sovxxz/tq_inhom.hpp"

namespace nlohmann {

template <>
struct adl_serializer<std::complex<double>> {
  static void to_json(json& j, const std::complex<double>& z) { j = json::array({z.real(), z.imag()}); }
  static void from_json(const json& j, std::complex<double>& z) {
    if (!j.is_array() || j.size() != 2) throw sovxxz::ConfigError("complex value must be [re, im]");
    z = {j[0].get<double>(), j[1].get<double>()};
  }
};

}  // namespace nlohmann

namespace sovxxz {

using nlohmann::json;

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(Tolerances, discrete, eigen, biorthogonality,
                                                isospectral, grid, bethe, roundtrip,
                                                zeta_independence, determinant, wronskian,
                                                sum_rule, angle, state, quasi_periodicity,
                                                matching, exceptional_alpha)

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(EigenRecord, t_at_xi, discrete_residual, eigen_residual,
                                   inhom_done, inhom_roots, alpha_used, alpha_retries, inhom_grid,
                                   inhom_bethe, inhom_roundtrip, inhom_zeta, inhom_determinant,
                                   inhom_state, hom_done, hom_roots, epsilon, m, hom_rank_ratio,
                                   hom_grid, hom_wronskian, hom_sum_rule, hom_angle, hom_bethe,
                                   hom_roundtrip, hom_state, hom_quasi_bethe,
                                   hom_quasi_pair, cross_agreement)

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(RunSummary, hilbert_dim, eigen_count, isospectral,
                                   biorthogonality, min_separation, hom_root_separation, eta_margin,
                                   overlap_residual, failures, pass)

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(RunReport, two_s, xi, eta, kappa, pipeline, eigen, summary)

const char* to_string(Pipeline p) {
  switch (p) {
    case Pipeline::Sov: return "sov";
    case Pipeline::TqInhom: return "tq-inhom";
    case Pipeline::TqHom: return "tq-hom";
    case Pipeline::All: return "all";
  }
  return "all";
}

Pipeline pipeline_from_string(const std::string& s) {
  if (s == "sov") return Pipeline::Sov;
  if (s == "tq-inhom") return Pipeline::TqInhom;
  if (s == "tq-hom") return Pipeline::TqHom;
  if (s == "all") return Pipeline::All;
  throw ConfigError("unknown pipeline '" + s + "' (expected sov, tq-inhom, tq-hom or all)");
}

namespace {

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j, {"model", "tolerances", "pipeline", "seed", "alpha_retries", "output"}, "config");

  RunConfig c;
  try {
    if (!j.contains("model")) throw ConfigError("config has no 'model' section");
    const json& m = j.at("model");
    reject_unknown(m, {"n_sites", "two_s", "xi", "seed", "delta_min", "eta", "kappa", "alpha"},
                   "model");
    c.model.two_s = m.at("two_s").get<std::vector<int>>();
    if (m.contains("n_sites") &&
        m.at("n_sites").get<int>() != static_cast<int>(c.model.two_s.size())) {
      throw ConfigError("n_sites does not match the length of two_s");
    }
    if (m.contains("xi")) {
      const json& xi = m.at("xi");
      if (xi.is_string()) {
        if (xi.get<std::string>() != "random") throw ConfigError("xi must be a list or \"random\"");
      } else {
        c.model.xi = xi.get<std::vector<cplx>>();
      }
    }
    c.model.xi_seed = m.value("seed", std::uint64_t{0});
    c.model.delta_min = m.value("delta_min", 0.05);
    if (m.contains("eta")) c.model.eta = m.at("eta").get<cplx>();
    if (m.contains("kappa")) c.model.kappa = m.at("kappa").get<std::vector<cplx>>();
    if (m.contains("alpha")) c.model.alpha = m.at("alpha").get<cplx>();

    if (j.contains("tolerances")) {
      reject_unknown(j.at("tolerances"), {"discrete", "eigen", "biorthogonality", "isospectral",
                                          "grid", "bethe", "roundtrip", "zeta_independence",
                                          "determinant", "wronskian", "sum_rule", "angle", "state",
                                          "quasi_periodicity", "matching",
                                          "exceptional_alpha"},
                     "tolerances");
      c.tol = j.at("tolerances").get<Tolerances>();
    }
    if (j.contains("pipeline")) c.pipeline = pipeline_from_string(j.at("pipeline").get<std::string>());
    c.seed = j.value("seed", std::uint64_t{1});
    c.alpha_retries = j.value("alpha_retries", 3);
    if (j.contains("output")) {
      const json& o = j.at("output");
      reject_unknown(o, {"report", "roots_csv"}, "output");
      c.report_path = o.value("report", std::string());
      c.roots_csv_path = o.value("roots_csv", std::string());
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (c.model.kappa.empty()) throw ConfigError("kappa list is empty");
  if (c.alpha_retries < 0) throw ConfigError("alpha_retries must be non-negative");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string emit_config(const RunConfig& c) {
  json m;
  m["n_sites"] = c.model.two_s.size();
  m["two_s"] = c.model.two_s;
  if (c.model.xi) {
    m["xi"] = *c.model.xi;
  } else {
    m["xi"] = "random";
  }
  m["seed"] = c.model.xi_seed;
  m["delta_min"] = c.model.delta_min;
  m["eta"] = c.model.eta;
  m["kappa"] = c.model.kappa;
  m["alpha"] = c.model.alpha;
  json j;
  j["model"] = m;
  j["tolerances"] = c.tol;
  j["pipeline"] = to_string(c.pipeline);
  j["seed"] = c.seed;
  j["alpha_retries"] = c.alpha_retries;
  json o = json::object();
  if (!c.report_path.empty()) o["report"] = c.report_path;
  if (!c.roots_csv_path.empty()) o["roots_csv"] = c.roots_csv_path;
  if (!o.empty()) j["output"] = o;
  return j.dump(2) + "\n";
}

ChainModel generate_model(std::uint64_t seed, const std::vector<int>& two_s, double delta_min,
                          cplx eta) {
  Rng rng(seed);
  constexpr int kMaxRejections = 10000;
  std::vector<cplx> xi(two_s.size());
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    for (cplx& x : xi) x = random_point(rng, 0.0, 2.0, -0.3, 0.3);
    if (xi.size() > 1 && cond_inh_margin(two_s, xi, eta).margin < delta_min) continue;
    try {
      return ChainModel(two_s, xi, eta);
    } catch (const InvalidModel&) {
    }
  }
  throw GenerationExhausted("no inhomogeneities with margin >= " + std::to_string(delta_min) +
                            " after " + std::to_string(kMaxRejections) + " draws");
}

ChainModel build_model(const RunConfig& config, cplx kappa) {
  const ModelSpec& s = config.model;
  try {
    if (s.two_s.empty()) throw InvalidModel("model has no sites");
    std::vector<cplx> xi;
    if (s.xi) {
      xi = *s.xi;
    } else {
      xi = generate_model(s.xi_seed, s.two_s, s.delta_min, s.eta).xi();
    }
    return ChainModel(s.two_s, xi, s.eta, kappa, s.alpha);
  } catch (const InvalidModel& e) {
    throw ConfigError(std::string("invalid model: ") + e.what());
  } catch (const GenerationExhausted& e) {
    throw ConfigError(std::string("cannot generate model: ") + e.what());
  }
}

void check_config(const RunConfig& config) {
  for (const cplx& k : config.model.kappa) build_model(config, k);
}

namespace {

std::string describe(const Error& e) { return std::string(e.kind()) + ": " + e.what(); }

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

struct Checker {
  std::vector<std::string>& failures;
  void below(double value, double tol, const std::string& what, int k) {
    if (!(value < tol)) {
      failures.push_back("eigenvalue " + std::to_string(k + 1) + ": " + what + " " +
                         fmt_double(value) + " exceeds " + fmt_double(tol));
    }
  }
  void error(int k, const std::string& stage, const Error& e) {
    failures.push_back("eigenvalue " + std::to_string(k + 1) + ": " + stage + " failed (" +
                       describe(e) + ")");
  }
};

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

void run_inhom(const ChainModel& model, const RunConfig& config, const OracleEntry& e,
               const SOVBasis& basis, Rng& rng, EigenRecord& rec) {
  InhomOptions opts;
  opts.det_tol = config.tol.exceptional_alpha;
  const InhomRetryResult r = solve_q_inhom_retry(model, e.t, rng, config.alpha_retries, opts);
  const QFunctionInhom& q = r.q;
  rec.inhom_roots = q.roots;
  rec.alpha_used = q.alpha;
  rec.alpha_retries = r.retries;
  rec.inhom_grid = eq_inh_residual(model, e.t, q, residual_grid(40));
  const InhomTReport tr = t_from_q_inhom(model, q);
  rec.inhom_bethe = max_of(tr.bethe);
  rec.inhom_roundtrip = eigenvalue_distance(model, tr.t, e.t);

  const cplx zeta1 = draw_zeta0(model, rng);
  const QFunctionInhom q2 = solve_q_inhom(model, e.t, q.alpha, zeta1, opts);
  rec.inhom_zeta = multiset_distance(q.roots, q2.roots, kPi);

  const NullspaceVectors nv = nullspace_vectors(model, e.t);
  const cplx closed = det_m_at_zero_closed_form(model, q.zeta0);
  rec.inhom_determinant =
      std::abs(m_matrix(model, nv, 0.0, q.zeta0).determinant() - closed) / std::abs(closed);

  const Eigenstates st = eigenstates_from_q_inhom(model, basis, q);
  rec.inhom_state = std::max(overlap_deficiency(st.right, e.right),
                             overlap_deficiency(st.left.transpose(), e.left.transpose()));
  rec.inhom_done = true;
}

void run_hom(const ChainModel& model, const RunConfig& config, const OracleEntry& e,
             const SOVBasis& basis, Rng& rng, EigenRecord& rec) {
  HomOptions opts;
  opts.wronskian_tol = std::max(config.tol.wronskian, 1e-7);
  const cplx zeta0 = draw_zeta0(model, rng, 1e-2, 2.0 * kPi);
  rec.hom_rank_ratio = n_bar_rank_ratio(model, e.t, zeta0);
  const QFunctionHom q = solve_q_hom(model, e.t, zeta0, opts);
  rec.hom_roots = q.roots;
  rec.epsilon = q.epsilon;
  rec.m = q.m;
  rec.hom_sum_rule = q.sum_rule_residual;
  rec.hom_grid = bax_hom_residual(model, e.t, q, residual_grid(40));
  const WronskianFit fit = verify_wronskian_identity(model, q, residual_grid(40), opts.wronskian_tol);
  rec.hom_wronskian = fit.residual;
  rec.hom_angle = q_vector_proportionality(model, q).max_angle();
  rec.hom_bethe = max_of(bethe_residuals_hom(model, q.roots));
  rec.hom_roundtrip = eigenvalue_distance(model, t_from_q_pair(model, q, fit.epsilon).t, e.t);
  const std::vector<cplx> pts = residual_grid(10);
  rec.hom_quasi_bethe = bethe_t_quasi_periodicity(model, q.roots, pts);
  rec.hom_quasi_pair = pair_t_quasi_periodicity(model, q, fit.epsilon, pts);

  const HomEigenstates hs = eigenstates_from_q_hom(model, basis, q);
  double worst = 0.0;
  for (const auto* st : {&hs.plus, &hs.minus}) {
    if (!*st) continue;
    worst = std::max({worst, overlap_deficiency((*st)->right, e.right),
                      overlap_deficiency((*st)->left.transpose(), e.left.transpose())});
  }
  rec.hom_state = worst;
  rec.hom_done = true;
}

}  // namespace

RunReport run(const RunConfig& config) {
  check_config(config);
  const Tolerances& tol = config.tol;
  Rng rng(config.seed);

  const ChainModel model = build_model(config, config.model.kappa.front());
  RunReport rep;
  rep.two_s = model.two_s();
  rep.xi = model.xi();
  rep.eta = model.eta();
  rep.kappa = model.kappa();
  rep.pipeline = to_string(config.pipeline);
  RunSummary& sum = rep.summary;
  sum.hilbert_dim = model.hilbert_dim();
  int max_two_s = 0;
  for (int t : model.two_s()) max_two_s = std::max(max_two_s, t);
  sum.eta_margin = std::abs(std::sinh(model.eta()));
  for (int k = 2; k <= max_two_s + 1; ++k)
    sum.eta_margin = std::min(sum.eta_margin, std::abs(std::sinh(static_cast<double>(k) * model.eta())));
  Checker check{sum.failures};

  OracleOptions oo;
  oo.match_tol = tol.matching;
  std::vector<OracleEntry> oracle;
  try {
    oracle = brute_force_spectrum(model, rng, oo);
  } catch (const Error& e) {
    sum.failures.push_back("oracle failed (" + describe(e) + ")");
    return rep;
  }
  sum.eigen_count = static_cast<int>(oracle.size());
  if (sum.eigen_count != sum.hilbert_dim) {
    sum.failures.push_back("oracle found " + std::to_string(sum.eigen_count) +
                           " eigenvalues, expected " + std::to_string(sum.hilbert_dim));
  }
  std::vector<EigenvalueFunction> spectrum;
  for (const auto& e : oracle) spectrum.push_back(e.t);
  sum.min_separation = oracle.size() > 1 ? min_separation(spectrum) : 0.0;

  for (std::size_t k = 1; k < config.model.kappa.size(); ++k) {
    try {
      const ChainModel mk = build_model(config, config.model.kappa[k]);
      std::vector<EigenvalueFunction> other;
      for (const auto& e : brute_force_spectrum(mk, rng, oo)) other.push_back(e.t);
      sum.isospectral = std::max(sum.isospectral, spectrum_distance(spectrum, other));
    } catch (const Error& e) {
      sum.failures.push_back("oracle for kappa " + std::to_string(k + 1) + " failed (" +
                             describe(e) + ")");
    }
  }
  if (!(sum.isospectral < tol.isospectral)) {
    sum.failures.push_back("kappa isospectrality " + fmt_double(sum.isospectral) + " exceeds " +
                           fmt_double(tol.isospectral));
  }

  const bool want_inhom = config.pipeline == Pipeline::TqInhom || config.pipeline == Pipeline::All;
  const bool want_hom = config.pipeline == Pipeline::TqHom || config.pipeline == Pipeline::All;

  SOVBasis basis;
  try {
    basis = build_sov_basis(model);
  } catch (const Error& e) {
    sum.failures.push_back("SOV basis failed (" + describe(e) + ")");
    return rep;
  }
  sum.overlap_residual = overlap_residual(model, basis);
  std::vector<cplx> lambdas;
  for (int i = 0; i < 5; ++i) lambdas.push_back(random_point(rng, -1.0, 1.0, -1.0, 1.0));

  std::vector<Eigenstates> states;
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    const int k = static_cast<int>(i);
    const OracleEntry& e = oracle[i];
    EigenRecord rec;
    rec.t_at_xi = e.t.t_at_xi();
    rec.discrete_residual = discrete_residual(model, e.t);
    check.below(rec.discrete_residual, tol.discrete, "discrete residual", k);
    try {
      const Eigenstates st = build_eigenstates(model, basis, nullspace_vectors(model, e.t));
      rec.eigen_residual = std::max(eigen_residual(model, st.right, e.t, lambdas),
                                    eigen_residual(model, st.left, e.t, lambdas));
      check.below(rec.eigen_residual, tol.eigen, "SOV eigenstate residual", k);
      states.push_back(st);
    } catch (const Error& err) {
      check.error(k, "SOV eigenstates", err);
    }

    if (want_inhom) {
      try {
        run_inhom(model, config, e, basis, rng, rec);
        check.below(rec.inhom_grid, tol.grid, "inhomogeneous T-Q grid residual", k);
        check.below(rec.inhom_bethe, tol.bethe, "inhomogeneous Bethe residual", k);
        check.below(rec.inhom_roundtrip, tol.roundtrip, "inhomogeneous round trip", k);
        check.below(rec.inhom_zeta, tol.zeta_independence, "zeta_0 dependence of roots", k);
        check.below(rec.inhom_determinant, tol.determinant, "det M(0) closed form", k);
        check.below(rec.inhom_state, tol.state, "inhomogeneous eigenstate deficiency", k);
      } catch (const Error& err) {
        check.error(k, "inhomogeneous T-Q", err);
      }
    }
    if (want_hom) {
      try {
        run_hom(model, config, e, basis, rng, rec);
        check.below(rec.hom_grid, tol.grid, "Baxter grid residual", k);
        check.below(rec.hom_wronskian, tol.wronskian, "Wronskian residual", k);
        check.below(rec.hom_sum_rule, tol.sum_rule, "sum rule residual", k);
        check.below(rec.hom_angle, tol.angle, "Q-vector principal angle", k);
        check.below(rec.hom_bethe, tol.bethe, "homogeneous Bethe residual", k);
        check.below(rec.hom_roundtrip, tol.roundtrip, "homogeneous round trip", k);
        check.below(rec.hom_state, tol.state, "homogeneous eigenstate deficiency", k);
        check.below(rec.hom_quasi_bethe, tol.quasi_periodicity, "Bethe-form quasi-periodicity", k);
        check.below(rec.hom_quasi_pair, tol.quasi_periodicity, "pair-form quasi-periodicity", k);
      } catch (const Error& err) {
        check.error(k, "homogeneous T-Q", err);
      }
    }
    rec.cross_agreement = std::max(rec.inhom_roundtrip, rec.hom_roundtrip);
    rep.eigen.push_back(std::move(rec));
  }

  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = 0; j < states.size(); ++j) {
      if (i == j) continue;
      const double v = std::abs((states[i].left * states[j].right)(0, 0)) /
                       (states[i].left.norm() * states[j].right.norm());
      sum.biorthogonality = std::max(sum.biorthogonality, v);
    }
  }
  if (!(sum.biorthogonality < tol.biorthogonality)) {
    sum.failures.push_back("biorthogonality " + fmt_double(sum.biorthogonality) + " exceeds " +
                           fmt_double(tol.biorthogonality));
  }

  if (want_hom) {
    std::vector<const EigenRecord*> solved;
    for (const auto& r : rep.eigen) {
      if (r.hom_done) solved.push_back(&r);
    }
    double sep = std::numeric_limits<double>::max();
    for (std::size_t i = 0; i < solved.size(); ++i) {
      for (std::size_t j = i + 1; j < solved.size(); ++j) {
        sep = std::min(sep, multiset_distance(solved[i]->hom_roots, solved[j]->hom_roots, 2.0 * kPi));
      }
    }
    sum.hom_root_separation = solved.size() > 1 ? sep : 0.0;
    if (static_cast<int>(solved.size()) != sum.hilbert_dim) {
      sum.failures.push_back("homogeneous Q found for " + std::to_string(solved.size()) + " of " +
                             std::to_string(sum.hilbert_dim) + " eigenvalues");
    }
    if (solved.size() > 1 && !(sep > 1e-6)) {
      sum.failures.push_back("two eigenvalues share homogeneous Bethe roots");
    }
  }

  sum.pass = sum.failures.empty();
  return rep;
}

std::string emit_report(const RunReport& report) { return json(report).dump(2) + "\n"; }

RunReport parse_report(const std::string& text) {
  try {
    return json::parse(text).get<RunReport>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
}

std::string roots_csv(const RunReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << "eigenvalue,family,index,re,im\n";
  for (std::size_t k = 0; k < report.eigen.size(); ++k) {
    const EigenRecord& r = report.eigen[k];
    for (std::size_t i = 0; i < r.inhom_roots.size(); ++i) {
      os << k + 1 << ",inhom," << i + 1 << ',' << r.inhom_roots[i].real() << ','
         << r.inhom_roots[i].imag() << '\n';
    }
    for (std::size_t i = 0; i < r.hom_roots.size(); ++i) {
      os << k + 1 << ",hom," << i + 1 << ',' << r.hom_roots[i].real() << ','
         << r.hom_roots[i].imag() << '\n';
    }
  }
  return os.str();
}

}  // namespace sovxxz
