#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace iuclab {

/// Parsed and validated experiment configuration. The on-disk format is
/// INI-style sections of key = value lines; unknown sections or keys are
/// rejected (see docs/formats.md for the full schema).
struct RunConfig {
  // [potential]
  std::string family = "power";  // power | power-log | table
  double alpha = 2.0;
  double c = 1.0;
  int log_depth = 1;
  double log_exponent = 1.0;
  std::vector<double> table_r, table_q;

  // [params]
  double k = 1.0;
  int m = 1;
  double d = 1.0;

  // [grid]
  int dim = 1;
  std::optional<double> half_width;
  std::vector<double> half_width_list;
  std::optional<int> points_per_axis;
  std::optional<double> spacing;

  // [spectral]
  int rank = 0;  // 0 = full spectrum
  double tol = 1e-8;
  std::int64_t dense_threshold = 1200;
  int max_iterations = 0;

  // [times]
  std::vector<double> t_list{0.1};

  // [checks]
  std::vector<std::string> checks;
  std::map<std::string, std::string> expectations;  // check -> stable|diverging|pass|fail
  std::vector<double> eps_list{0.05, 0.1, 0.2, 0.5, 1.0};
  double p_exp = 2.0;
  int u_count = 5;
  int s_points = 11;
  std::vector<double> alt_path;  // optional alternate exponent path {q1, q2}
  double window_margin = 1.0;
  double window_phi_fraction = 1e-10;
  double tail_tol = 0.01;
  double r_max = 50.0;
  int r_points = 600;
  int domination_count = 6;
  double stable_ratio = 1.05;
  double diverging_ratio = 2.0;

  // [study]
  std::string study_vary;  // "h" | "L"
  std::vector<double> h_list;
  std::vector<double> study_half_widths;

  // [output]
  std::string out_dir = "out";
  std::string formats = "csv";
  std::uint64_t seed = 1;

  /// Largest configured half-width (single-grid checks use this when only a
  /// list is given).
  double primary_half_width() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& file);

}  // namespace iuclab
