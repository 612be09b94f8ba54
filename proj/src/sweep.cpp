#include "nlcap/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "nlcap/angle_solver.hpp"
#include "nlcap/asymptotics.hpp"
#include "nlcap/parallel.hpp"

namespace nlcap {

namespace {

constexpr double kPi = std::numbers::pi;

std::optional<double> clip_to_angle_range(double v) {
  if (v > 0.0 && v < kPi) return v;
  return std::nullopt;
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string iso_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
  return buf;
}

}  // namespace

std::vector<double> sweep_sigma_grid(int count) {
  if (count < 1) throw std::invalid_argument("sweep: sigma count must be positive");
  if (count == 1) return {0.0};
  std::vector<double> grid(count);
  const double lo = -0.975, hi = 0.975;
  for (int i = 0; i < count; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  return grid;
}

std::vector<double> default_sweep_s_list() {
  return {0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99};
}

SweepTable compute_sweep(const std::vector<double>& s_list, int sigma_count,
                         const QuadratureSpec& spec, bool parallel) {
  if (s_list.empty()) throw std::invalid_argument("sweep: s list must not be empty");
  for (double s : s_list)
    if (!(s > 0.0 && s < 1.0))
      throw std::invalid_argument("sweep: s values must lie in (0, 1)");
  const std::vector<double> sigmas = sweep_sigma_grid(sigma_count);

  SweepTable table;
  table.meta.abs_tol = spec.abs_tol;
  table.meta.rel_tol = spec.rel_tol;
  table.meta.version = NLCAP_GIT_DESC;
  table.meta.generated_at = iso_now();
  table.rows.resize(s_list.size() * sigmas.size());

  std::vector<double> s_sorted = s_list;
  std::sort(s_sorted.begin(), s_sorted.end());

  parallel_for(table.rows.size(), [&](std::size_t idx) {
    const double s = s_sorted[idx / sigmas.size()];
    const double sigma = sigmas[idx % sigmas.size()];
    SweepRow row;
    row.s = s;
    row.sigma = sigma;
    row.theta_exact = solve_theta({s, sigma}, spec).theta;
    row.theta_at1 = clip_to_angle_range(truncated_theta(expand_at_one(sigma), s));
    if (std::abs(sigma) <= 1.0 - 1e-6) {
      row.theta_at0 = clip_to_angle_range(truncated_theta(expand_at_zero(sigma, spec), s));
    }
    table.rows[idx] = row;
  }, parallel);
  return table;
}

void write_sweep_csv(const SweepTable& table, std::ostream& out) {
  out << "s,sigma,theta_exact,theta_at1,theta_at0\n";
  for (const SweepRow& r : table.rows) {
    out << format_g17(r.s) << ',' << format_g17(r.sigma) << ','
        << format_g17(r.theta_exact) << ','
        << (r.theta_at1 ? format_g17(*r.theta_at1) : "nan") << ','
        << (r.theta_at0 ? format_g17(*r.theta_at0) : "nan") << '\n';
  }
}

nlohmann::json sweep_to_json(const SweepTable& table) {
  nlohmann::json j;
  j["meta"] = {{"abs_tol", table.meta.abs_tol},
               {"rel_tol", table.meta.rel_tol},
               {"version", table.meta.version},
               {"generated_at", table.meta.generated_at}};
  auto& rows = j["rows"] = nlohmann::json::array();
  for (const SweepRow& r : table.rows) {
    nlohmann::json row = {{"s", r.s}, {"sigma", r.sigma}, {"theta_exact", r.theta_exact}};
    row["theta_at1"] = r.theta_at1 ? nlohmann::json(*r.theta_at1) : nlohmann::json(nullptr);
    row["theta_at0"] = r.theta_at0 ? nlohmann::json(*r.theta_at0) : nlohmann::json(nullptr);
    rows.push_back(std::move(row));
  }
  return j;
}

SweepTable sweep_from_json(const nlohmann::json& j) {
  SweepTable table;
  const auto& meta = j.at("meta");
  table.meta.abs_tol = meta.at("abs_tol").get<double>();
  table.meta.rel_tol = meta.at("rel_tol").get<double>();
  table.meta.version = meta.at("version").get<std::string>();
  table.meta.generated_at = meta.at("generated_at").get<std::string>();
  for (const auto& row : j.at("rows")) {
    SweepRow r;
    r.s = row.at("s").get<double>();
    r.sigma = row.at("sigma").get<double>();
    r.theta_exact = row.at("theta_exact").get<double>();
    if (!row.at("theta_at1").is_null()) r.theta_at1 = row.at("theta_at1").get<double>();
    if (!row.at("theta_at0").is_null()) r.theta_at0 = row.at("theta_at0").get<double>();
    table.rows.push_back(r);
  }
  return table;
}

}  // namespace nlcap
