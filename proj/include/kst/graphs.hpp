#pragma once

// Sided bipartite graphs built from random bihomogeneous polynomials over
// F_q: parameter planning, the Turan and Zarankiewicz pipelines, and the
// certification tools (exhaustive common-neighbourhood search, density
// ratios, exact uniformity of specializations).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kst/gfarith.hpp"
#include "kst/independence.hpp"
#include "kst/polyrand.hpp"
#include "kst/projgeom.hpp"
#include "kst/variety.hpp"

namespace kst {

using BigInt = boost::multiprecision::cpp_int;

enum class PlanKind { turan, zarankiewicz };
enum class PlanMode { theorem, desk };

struct ConstructionPlan {
    PlanKind kind = PlanKind::turan;
    PlanMode mode = PlanMode::desk;
    std::uint32_t s = 2;
    std::uint32_t m = 3;
    std::uint32_t r = 1;
    std::optional<std::uint32_t> Z;  // turan only
    std::uint32_t b = 0;
    std::optional<std::uint32_t> a;  // zarankiewicz only, once q is known
    std::optional<std::uint64_t> T; // zarankiewicz only
    std::uint64_t q = 0;             // 0 = not chosen yet
    std::vector<std::uint32_t> delta;
    BigInt t_threshold = 0;
    Rational c{1, 4};
    /// log10 of the closed-form headline threshold (theorem mode only).
    std::optional<double> headline_t_log10;

    friend bool operator==(const ConstructionPlan&, const ConstructionPlan&) = default;
};

struct PlanOverrides {
    std::optional<std::uint32_t> m;
    std::optional<std::uint32_t> r;
    std::optional<std::uint32_t> Z;
    std::optional<std::uint64_t> T;
    std::optional<std::uint64_t> q;
    std::optional<std::uint64_t> n;
    std::optional<std::uint32_t> a;
    std::optional<Rational> c;
};

/// Theorem mode reproduces the published parameter choices; desk mode
/// validates user parameters and computes the exact Bezout threshold.
ConstructionPlan plan_construction(PlanKind kind, std::uint32_t s, PlanMode mode, const PlanOverrides& overrides = {});

/// log10 of 9^s s^(4 s^(2/3)).
double turan_headline_log10(std::uint32_t s);

/// floor(c q^s).
std::uint64_t turan_side_size(const Rational& c, std::uint64_t q, std::uint32_t s);
/// floor(c q^(T/s)), exact.
std::uint64_t zar_left_size(const Rational& c, std::uint64_t q, std::uint64_t T, std::uint32_t s);
/// floor(k-th root of n), exact.
std::uint64_t integer_root(std::uint64_t n, std::uint32_t k);

class SidedGraph {
   public:
    SidedGraph() = default;
    SidedGraph(std::vector<std::string> left, std::vector<std::string> right);

    std::size_t left_size() const noexcept { return left_.size(); }
    std::size_t right_size() const noexcept { return right_.size(); }
    const std::vector<std::string>& left() const noexcept { return left_; }
    const std::vector<std::string>& right() const noexcept { return right_; }

    void set_edge(std::size_t l, std::size_t r);
    bool has_edge(std::size_t l, std::size_t r) const;
    std::uint64_t edge_count() const;
    std::size_t words() const noexcept { return words_; }
    const std::uint64_t* row(std::size_t l) const { return &adj_[l * words_]; }
    /// Sides swapped.
    SidedGraph transposed() const;

    // Provenance carried into the graph file.
    std::uint32_t field_p = 0;
    std::uint32_t field_k = 0;
    std::optional<ConstructionPlan> plan;
    std::uint64_t seed = 0;

    friend bool operator==(const SidedGraph&, const SidedGraph&) = default;

   private:
    std::vector<std::string> left_;
    std::vector<std::string> right_;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> adj_;
};

enum class Side { left, right };
enum class Orientation { both, left_only };

struct SearchOptions {
    std::uint64_t budget = 5'000'000;
    /// Over budget: sample this many random subsets instead of failing.
    bool allow_sampling = false;
    std::uint64_t samples = 100'000;
    std::uint64_t sample_seed = 0;
    unsigned workers = 1;
};

struct CommonNeighborhood {
    std::uint64_t size = 0;
    std::vector<std::size_t> subset;  // argmax, lex-first among ties
    bool certifying = true;           // false when sampled
    std::uint64_t checked = 0;
    std::uint64_t total = 0;
};

CommonNeighborhood max_common_neighborhood(const SidedGraph& g, std::size_t s, Side side, const SearchOptions& opts = {});

struct KstVerdict {
    Tristate free = Tristate::yes;
    Side side = Side::left;
    std::vector<std::size_t> subset;
    std::vector<std::size_t> neighbors;  // t common neighbours when a copy exists
    CommonNeighborhood left;
    std::optional<CommonNeighborhood> right;
};

/// K_{s,t}-free iff every anchored s-subset has at most t-1 common neighbours.
/// `both` anchors on each side (Turan), `left_only` on the left (Zarankiewicz).
KstVerdict kst_verdict(const SidedGraph& g, std::size_t s, const BigInt& t, Orientation orientation,
                       const SearchOptions& opts = {});

struct DensityReport {
    std::uint64_t edges = 0;
    double turan_ratio = 0.0;  // |E| / (c^2 q^(2s-1) / 2)
    double zar_ratio = 0.0;    // |E| / (c q^(T/s+s-1) / 4)
    double kst_ratio = 0.0;    // |E| / (|L| |R|^(1-1/s))
};

DensityReport density_report(const SidedGraph& g, const ConstructionPlan& plan);

struct TrialReport {
    std::uint64_t seed = 0;
    std::uint64_t left_size = 0;
    std::uint64_t right_size = 0;
    std::uint64_t edges = 0;
    CommonNeighborhood left_cn;
    std::optional<CommonNeighborhood> right_cn;
    DensityReport density;
    BigInt bezout_ledger = 0;  // t_threshold - 1
    bool sizes_ok = false;
    bool edges_ok = false;
    Tristate kst_free = Tristate::undetermined;
    bool pass = false;
    std::optional<CertReport> variety;
    std::optional<bool> power_rank_crosscheck;
};

/// Recomputes every verdict of a trial from the graph and its plan; the
/// construct path and `verify` both go through here.
TrialReport evaluate_trial(const SidedGraph& g, const ConstructionPlan& plan, const SearchOptions& opts = {});

struct ConstructOptions {
    IndependentVarietyOptions variety;
    SearchOptions search;
};

struct TrialResult {
    SidedGraph graph;
    TrialReport report;
    /// Variety the right side was cut from (W with the h' for Turan, V(h')
    /// for Zarankiewicz) and the adjacency polynomial; residual varieties are
    /// built from these.
    std::optional<VarietySpec> right_variety;
    std::optional<BiHomPoly> g;
};

TrialResult construct_turan(const ConstructionPlan& plan, std::uint64_t seed, const ConstructOptions& opts = {});
TrialResult construct_zar(const ConstructionPlan& plan, std::uint64_t seed, const ConstructOptions& opts = {});
TrialResult construct(const ConstructionPlan& plan, std::uint64_t seed, const ConstructOptions& opts = {});

enum class UniformityMode { exhaustive, sampled };

struct UniformityOptions {
    std::uint64_t exhaustive_cap = 1ull << 22;  // max number of polynomials enumerated
    std::uint64_t draws = 10'000;
    double tail = 1e-6;
    /// Skip the m-independence precondition; used for negative controls.
    bool allow_dependent = false;
};

struct ChiSquareTest {
    std::string label;
    std::uint64_t cells = 0;
    double statistic = 0.0;
    double critical = 0.0;
    bool pass = false;
};

struct UniformityResult {
    UniformityMode mode = UniformityMode::exhaustive;
    bool uniform = false;
    std::uint64_t polynomials = 0;        // exhaustive: q^(#coeffs)
    std::uint64_t outcomes_possible = 0;  // exhaustive: q^(s * dim)
    std::uint64_t outcomes_seen = 0;
    std::uint64_t min_count = 0;
    std::uint64_t max_count = 0;
    std::vector<ChiSquareTest> tests;  // sampled
};

/// Distribution of (g(v_1, .), ..., g(v_s, .)) for uniformly random g of
/// bidegree (m, mp) on P^a x P^b. Exhaustive mode walks every g and demands
/// an exactly flat tally; sampled mode runs chi-square tests per y-monomial
/// block plus one cross-block projection, each at the `tail` quantile.
UniformityResult joint_uniformity_test(const Field& f, std::uint32_t a, std::uint32_t b, std::uint32_t m, std::uint32_t mp,
                                       const std::vector<ProjPoint>& anchors, UniformityMode mode, SeededRng& rng,
                                       const UniformityOptions& opts = {});

std::string to_string(PlanKind k);
std::string to_string(PlanMode m);
std::string to_string(Tristate t);

}  // namespace kst
