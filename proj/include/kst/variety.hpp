#pragma once

// F_q-points of projective varieties cut out by homogeneous polynomials,
// extension-field dimension probes, the random s-wise m-independent variety
// builder, residual varieties, and the point-count concentration harness.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kst/gfarith.hpp"
#include "kst/independence.hpp"
#include "kst/polyrand.hpp"
#include "kst/projgeom.hpp"

namespace kst {

class VarietySpec {
   public:
    explicit VarietySpec(std::uint32_t ambient_dim) : b_(ambient_dim) {}
    VarietySpec(std::uint32_t ambient_dim, std::vector<HomPoly> generators);

    std::uint32_t ambient_dim() const noexcept { return b_; }
    const std::vector<HomPoly>& generators() const noexcept { return generators_; }
    /// Product of generator degrees (Bezout budget); 1 for the whole space.
    std::uint64_t degree_ledger() const noexcept { return ledger_; }

    void add_generator(HomPoly g);

   private:
    std::uint32_t b_;
    std::vector<HomPoly> generators_;
    std::uint64_t ledger_ = 1;
};

/// Canonical points where every generator vanishes, in enumeration order.
std::vector<ProjPoint> fq_points(const Field& f, const VarietySpec& vs, std::uint64_t cap = kDefaultPointCap);

/// Same, restricted to a candidate list (order preserved).
std::vector<ProjPoint> filter_points(const Field& f, const std::vector<HomPoly>& generators,
                                     const std::vector<ProjPoint>& candidates);

struct DimensionEstimate {
    std::vector<std::pair<std::uint32_t, std::uint64_t>> counts;  // (e, |V(F_{q^e})|)
    bool empty = false;
    double slope = 0.0;
    int estimate = -1;  // -1 when empty
    bool high_confidence = false;
};

/// Exact point counts over GF(q^e) for e = 1..e_max (stopping early once the
/// ambient space exceeds `cap`), then the least-squares slope of log count
/// against e log q. Confidence is low when any count is below 10q or fewer
/// than two extension degrees were counted.
DimensionEstimate dimension_probe(const Field& base, const VarietySpec& vs, std::uint32_t e_max,
                                  std::uint64_t cap = kDefaultPointCap);

struct IndependentVarietyOptions {
    std::uint32_t retries = 10;
    bool waive_z_condition = false;
    std::uint64_t subset_budget = 200'000;
    std::uint64_t sampled_subsets = 20'000;
    std::uint32_t probe_e_max = 2;
    std::uint64_t probe_cap = kDefaultPointCap;
    std::uint64_t point_cap = kDefaultPointCap;
};

struct CertReport {
    bool certified = false;
    std::uint32_t attempts = 0;
    std::optional<std::uint32_t> certified_attempt;
    std::uint64_t attempt_seed = 0;
    Tristate z_condition = Tristate::yes;
    bool z_condition_waived = false;
    std::uint64_t point_count = 0;
    Rational point_threshold{0};  // q^(b-Z) / 2
    SwiseResult independence;
    DimensionEstimate probe;
    std::uint32_t failures_point_count = 0;
    std::uint32_t failures_independence = 0;
    std::uint32_t failures_dimension = 0;
};

struct IndependentVariety {
    std::optional<VarietySpec> variety;
    std::vector<ProjPoint> points;  // F_q-points of the certified variety
    CertReport report;
};

/// Samples f_1..f_Z of degree m on P^b and certifies V(f) on F_q data:
/// point count >= q^(b-Z)/2, s-wise m-independence of its F_q-points
/// (exhaustive within budget, otherwise sampled), and a dimension probe equal
/// to b - Z. Attempt i draws from rng.child(i). Z = 0 returns P^b.
IndependentVariety build_independent_variety(const Field& f, std::uint32_t b, std::uint32_t m, std::uint32_t Z,
                                             std::uint32_t s, const SeededRng& rng,
                                             const IndependentVarietyOptions& opts = {});

/// Appends g(l_i, y) for each anchor; the ledger grows by deg_y(g) per anchor.
VarietySpec residual_variety(const Field& f, const VarietySpec& vs, const BiHomPoly& g,
                             const std::vector<ProjPoint>& anchors);

struct ConcentrationStats {
    std::size_t population = 0;
    std::uint32_t r = 0;
    std::uint32_t trials = 0;
    double mean = 0.0;
    double variance = 0.0;
    double expected_mean = 0.0;      // |Y| / q^r
    double predicted_variance = 0.0; // |Y| q^-r (1 - q^-r)
    double standard_error = 0.0;     // sqrt(predicted_variance / trials)
    double low_frequency = 0.0;      // share of trials with count <= |Y| / (2 q^r)
    double low_ceiling = 0.0;        // 4 q^r / |Y|
    std::vector<std::uint64_t> counts;
};

/// Y in P^b, random g_i of the given degrees.
ConcentrationStats concentration_trial(const Field& f, const std::vector<ProjPoint>& Y,
                                       const std::vector<std::uint32_t>& degrees, std::uint32_t trials, SeededRng& rng);

/// Y in P^a x P^b, random bihomogeneous g_i of the given bidegrees (both >= 1).
ConcentrationStats concentration_trial_bi(const Field& f, const std::vector<std::pair<ProjPoint, ProjPoint>>& Y,
                                          const std::vector<std::pair<std::uint32_t, std::uint32_t>>& bidegrees,
                                          std::uint32_t trials, SeededRng& rng);

}  // namespace kst
