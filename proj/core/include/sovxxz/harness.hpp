#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sovxxz/chain_model.hpp"

namespace sovxxz {

enum class Pipeline { Sov, TqInhom, TqHom, All };

const char* to_string(Pipeline p);
Pipeline pipeline_from_string(const std::string& s);

struct Tolerances {
  double discrete = 1e-8;
  double eigen = 1e-8;
  double biorthogonality = 1e-9;
  double isospectral = 1e-9;
  double grid = 1e-8;
  double bethe = 1e-7;
  double roundtrip = 1e-8;
  double zeta_independence = 1e-7;
  double determinant = 1e-8;
  double wronskian = 1e-9;
  double sum_rule = 1e-7;
  double angle = 1e-7;
  double state = 1e-8;
  double quasi_periodicity = 1e-9;
  /// Oracle eigenvector matching.
  double matching = 1e-6;
  /// Relative determinant below which alpha is exceptional.
  double exceptional_alpha = 1e-11;

  bool operator==(const Tolerances&) const = default;
};

struct ModelSpec {
  std::vector<int> two_s;
  /// Explicit inhomogeneities; drawn with generate_model when absent.
  std::optional<std::vector<cplx>> xi;
  std::uint64_t xi_seed = 0;
  double delta_min = 0.05;
  cplx eta{0.31, 0.07};
  std::vector<cplx> kappa{cplx(1.0)};
  cplx alpha = 0.0;

  bool operator==(const ModelSpec&) const = default;
};

struct RunConfig {
  ModelSpec model;
  Tolerances tol;
  Pipeline pipeline = Pipeline::All;
  std::uint64_t seed = 1;
  int alpha_retries = 3;
  std::string report_path;
  std::string roots_csv_path;

  bool operator==(const RunConfig&) const = default;
};

/// Parses a JSON configuration. Throws ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string emit_config(const RunConfig& config);

/// Draws xi_n with Re in [0, 2], Im in [-0.3, 0.3] until the shift-lattice
/// margin reaches delta_min. Throws GenerationExhausted after 10^4 rejections.
ChainModel generate_model(std::uint64_t seed, const std::vector<int>& two_s, double delta_min,
                          cplx eta = cplx(0.31, 0.07));

/// Model of the configuration with the given twist; InvalidModel is reported
/// as ConfigError.
ChainModel build_model(const RunConfig& config, cplx kappa);

/// Validates every model the configuration describes. Throws ConfigError.
void check_config(const RunConfig& config);

struct EigenRecord {
  std::vector<cplx> t_at_xi;
  double discrete_residual = 0.0;
  double eigen_residual = 0.0;

  bool inhom_done = false;
  std::vector<cplx> inhom_roots;
  cplx alpha_used = 0.0;
  int alpha_retries = 0;
  double inhom_grid = 0.0;
  double inhom_bethe = 0.0;
  double inhom_roundtrip = 0.0;
  double inhom_zeta = 0.0;
  double inhom_determinant = 0.0;
  double inhom_state = 0.0;

  bool hom_done = false;
  std::vector<cplx> hom_roots;
  int epsilon = 0;
  int m = 0;
  double hom_rank_ratio = 0.0;
  double hom_grid = 0.0;
  double hom_wronskian = 0.0;
  double hom_sum_rule = 0.0;
  double hom_angle = 0.0;
  double hom_bethe = 0.0;
  double hom_roundtrip = 0.0;
  double hom_state = 0.0;
  /// i*pi quasi-periodicity of the Bethe-form and pair-form eigenvalue.
  double hom_quasi_bethe = 0.0;
  double hom_quasi_pair = 0.0;

  /// Largest disagreement between the eigenvalue and its reconstructions.
  double cross_agreement = 0.0;

  bool operator==(const EigenRecord&) const = default;
};

struct RunSummary {
  int hilbert_dim = 0;
  int eigen_count = 0;
  double isospectral = 0.0;
  double biorthogonality = 0.0;
  double min_separation = 0.0;
  /// Smallest distance between homogeneous root multisets of different eigenvalues.
  double hom_root_separation = 0.0;
  /// min_k |sinh(k eta)|, k = 1..max(2s)+1.
  double eta_margin = 0.0;
  /// Overlaps of the built SOV basis against the closed form.
  double overlap_residual = 0.0;
  std::vector<std::string> failures;
  bool pass = false;

  bool operator==(const RunSummary&) const = default;
};

struct RunReport {
  std::vector<int> two_s;
  std::vector<cplx> xi;
  cplx eta = 0.0;
  cplx kappa = 1.0;
  std::string pipeline;
  std::vector<EigenRecord> eigen;
  RunSummary summary;

  bool operator==(const RunReport&) const = default;
};

/// Executes the selected pipelines and checks every tolerance. Module errors
/// are recorded as failures with eigenvalue context. Throws ConfigError.
RunReport run(const RunConfig& config);

std::string emit_report(const RunReport& report);
RunReport parse_report(const std::string& text);
/// One line per (eigenvalue, root): eigenvalue, family, index, re, im.
std::string roots_csv(const RunReport& report);

}  // namespace sovxxz
