#pragma once

// Contact-angle sweep tables: the exact solver value plus both truncated
// expansions per (s, sigma) row, emitted as CSV or JSON. CSV output is
// byte-identical across runs with identical flags; run metadata lives only
// in the JSON form.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nlcap/quadrature.hpp"

namespace nlcap {

struct SweepRow {
  double s = 0.0;
  double sigma = 0.0;
  double theta_exact = 0.0;
  /// Truncated expansions; empty when outside their validity window or when
  /// the truncation leaves (0, pi). Never encoded as zero.
  std::optional<double> theta_at1;
  std::optional<double> theta_at0;
};

struct SweepMeta {
  double abs_tol = 0.0;
  double rel_tol = 0.0;
  std::string version;
  std::string generated_at;  // ISO timestamp; JSON only
};

struct SweepTable {
  SweepMeta meta;
  std::vector<SweepRow> rows;  // sorted by (s, sigma)
};

/// Uniform sigma grid of `count` points on [-0.975, 0.975]; a single point
/// degenerates to sigma = 0.
std::vector<double> sweep_sigma_grid(int count);

/// Default s grid for the sweep command.
std::vector<double> default_sweep_s_list();

SweepTable compute_sweep(const std::vector<double>& s_list, int sigma_count,
                         const QuadratureSpec& spec = {}, bool parallel = true);

/// Fixed header "s,sigma,theta_exact,theta_at1,theta_at0"; 17 significant
/// digits; missing expansions written as "nan".
void write_sweep_csv(const SweepTable& table, std::ostream& out);

nlohmann::json sweep_to_json(const SweepTable& table);
SweepTable sweep_from_json(const nlohmann::json& j);

}  // namespace nlcap
