#pragma once

// 2D kernel-energy computations for |x - y|^{-2-s}:
//
//  * halfdisk_F: the boundary functional F(x) of the half-disk droplet
//    B = H cap B_rho(0) in the upper half-plane H, with R the reflection of
//    B across the tangent line at the evaluation point x on the arc.
//    F(x) integrates the kernel over {y in H : y not in B, y not in R}.
//    Rays from x admit closed-form radial integrals over explicitly
//    computed admissible intervals, so only the angular integral is
//    numerical; the integrable |cusp direction|^{-s} singularities are
//    removed by a power substitution.
//
//  * interaction_energy: I_s(A, B) = int_A int_B |x-y|^{-2-s} for disjoint
//    regions built from disks and simple polygons (with holes and
//    complements). The inner integral uses exact circle-arc measures; the
//    outer one adaptive panels over the bounded set.
//
//  * s_to_zero_limit_check: the scaled small-s energies
//    s [ I_s(E, E^c cap Omega) + sigma I_s(E, Omega^c) ] against the limit
//    2 pi sigma |E|.
//
// Monte Carlo estimators with reproducible per-stream seeding serve as
// cross-checks for both deterministic paths and run in parallel; every
// deterministic path has a serial twin used by the tests.

#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "nlcap/geometry2d.hpp"
#include "nlcap/quadrature.hpp"

namespace nlcap {

struct PlanarScene {
  double rho = 1.0;   // droplet radius
  double s = 0.5;     // kernel exponent in (0, 1)
  double omega = 0.0; // polar angle of the evaluation point on the arc, [0, pi]

  static PlanarScene at_p(double rho, double s) { return {rho, s, std::numbers::pi}; }
  static PlanarScene at_q(double rho, double s) { return {rho, s, std::numbers::pi / 2}; }
  void validate() const;
};

/// F at the scene's evaluation point (ray path; primary).
double halfdisk_F(const PlanarScene& scene, const QuadratureSpec& spec = {});

/// F through the swapped integration order: radial integral of the exact
/// angular measure profile. Independent of the ray path; used as an oracle.
double halfdisk_F_profile(const PlanarScene& scene, const QuadratureSpec& spec = {});

/// F with the excluded reflected disk shrunk about the contact point by
/// `reflected_scale` in (0, 1]; excluding less must increase F.
double halfdisk_F_shrunk_reflection(const PlanarScene& scene, double reflected_scale,
                                    const QuadratureSpec& spec = {});

/// Principal-value difference int_{B^c cap H} k - int_B k at the evaluation
/// point. Both terms diverge individually; their angular-measure difference
/// is integrable and equals F by the reflection cancellation.
double halfdisk_pv_difference(const PlanarScene& scene, const QuadratureSpec& spec = {});

/// Angular measure of the admissible set at radius r from the evaluation
/// point (exact arcs, with the analytic cusp formula at small r).
double halfdisk_profile_measure(const PlanarScene& scene, double r);

struct HalfdiskAudit {
  double F_p;
  double F_q;
  double direct_gap;        // F_q - F_p from the ray path
  double surplus_integral;  // int r^{-1-s} (m_q - m_p) dr
  double min_profile_surplus;  // min over the r grid of m_q - m_p
};

/// Radius-by-radius comparison of the integration domains at q and p: the
/// angular profile at q dominates the one at p, and the surplus integral
/// reproduces F_q - F_p.
HalfdiskAudit halfdisk_region_audit(double rho, double s, const QuadratureSpec& spec = {});

struct McResult {
  double value;
  double std_error;
  double bias_bound;  // truncation bias of the stratified radial range
  std::uint64_t samples;
  std::uint64_t seed;
};

/// Stratified Monte Carlo estimate of F (importance sampling in radius,
/// indicator tests in angle). Fixed seed; bitwise reproducible at any
/// thread count. Cross-check only, never the primary value.
McResult mc_halfdisk_F(const PlanarScene& scene, std::uint64_t samples,
                       std::uint64_t seed, bool parallel = true);

/// I_s(A, B) for disjoint regions; throws std::invalid_argument when the
/// overlap check trips or both regions are unbounded.
double interaction_energy(const Region& A, const Region& B, double s,
                          const QuadratureSpec& spec = {});

/// Monte Carlo cross-check of interaction_energy. Needs a bounded side;
/// unbounded partners are sampled by radial importance from each x.
McResult mc_interaction_energy(const Region& A, const Region& B, double s,
                               std::uint64_t samples, std::uint64_t seed,
                               bool parallel = true);

/// Droplet and container for the small-s limit law.
struct RegionSpec {
  Shape E;
  Shape Omega;
  void validate() const;  // E strictly inside Omega
};

struct ScaledEnergyRow {
  double s;
  double scaled_total;     // s [ I_s(E, E^c cap Omega) + sigma I_s(E, Omega^c) ]
  double scaled_interior;  // s I_s(E, E^c cap Omega); vanishes as s -> 0
  double target;           // 2 pi sigma |E|
};

std::vector<ScaledEnergyRow> s_to_zero_limit_check(const RegionSpec& rs, double sigma,
                                                   std::span<const double> s_grid,
                                                   const QuadratureSpec& spec = {},
                                                   bool parallel = true);

namespace detail {
/// int_0^cut r^{-1-s} g(r) dr for g vanishing linearly at 0, via the power
/// substitution r = xi^p; g_over_r evaluates g(r)/r.
double power_substituted_near_integral(const std::function<double(double)>& g_over_r,
                                       double cut, double s, const QuadratureSpec& spec);
/// Inner kernel integral int_B |x-y|^{-2-s} dy via the arc profile.
double region_kernel_integral(const Region& B, Vec2 x, double s,
                              const QuadratureSpec& spec);
}  // namespace detail

}  // namespace nlcap
