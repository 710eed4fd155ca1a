#pragma once

// m-dependence of point sets: Hilbert ranks via evaluation matrices, the
// power-of-linear-form cross-check, s-wise independence search, strong
// dependence witnesses, and the arithmetic ledgers (M_k, the phi_t bound,
// the Z-condition) that size the constructions. Also the two small
// combinatorial routines used to pick spanning-avoiding subsets.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "kst/gfarith.hpp"
#include "kst/linalg.hpp"
#include "kst/polyrand.hpp"
#include "kst/projgeom.hpp"

namespace kst {

using Rational = boost::rational<std::int64_t>;

/// Rows (p_i^beta)_beta for every point.
Matrix evaluation_matrix(const Field& f, const std::vector<ProjPoint>& points, std::uint32_t m);

/// Rows are the coefficient vectors of <x, p_i>^m: multinomial(m; beta) p_i^beta.
Matrix power_matrix(const Field& f, const std::vector<ProjPoint>& points, std::uint32_t m);

/// H_{I(P)}(m) for F_q-rational points. Throws on duplicates or empty input.
std::size_t hilbert_rank(const Field& f, const std::vector<ProjPoint>& points, std::uint32_t m);

/// Rank of the power matrix; refuses (precondition) unless char > m.
std::size_t power_rank(const Field& f, const std::vector<ProjPoint>& points, std::uint32_t m);

enum class Minimality { yes, no, undetermined };

struct DependenceReport {
    std::size_t t = 0;
    std::uint32_t m = 0;
    std::size_t hilbert_rank = 0;
    bool dependent = false;
    Minimality minimal = Minimality::undetermined;
    /// Basis of {c : sum_i c_i row(p_i) = 0}; dimension t - hilbert_rank.
    std::vector<std::vector<Elem>> kernel_basis;
};

/// Minimality is decided from the (t-1)-subsets only: dependence is closed
/// under supersets, so a dependent proper subset forces a dependent
/// (t-1)-subset.
DependenceReport dependence_classify(const Field& f, const std::vector<ProjPoint>& points, std::uint32_t m);

enum class SearchVerdict { independent, dependent, budget_exceeded };

struct SwiseResult {
    SearchVerdict verdict = SearchVerdict::independent;
    /// Indices of the first dependent subset in canonical (colex-free, lex) order.
    std::vector<std::size_t> witness;
    std::uint64_t subsets_checked = 0;
    std::uint64_t subsets_total = 0;
    bool sampled = false;
};

/// Exhaustive: no s-subset of `points` is m-dependent. Lexicographically
/// first witness wins. Over budget -> budget_exceeded, never `independent`.
SwiseResult s_wise_independent(const Field& f, const std::vector<ProjPoint>& points, std::size_t s, std::uint32_t m,
                               std::uint64_t budget = 1'000'000);

/// Checks `samples` uniformly random s-subsets. A clean run is reported as
/// independent with `sampled = true`; it certifies nothing beyond the samples.
SwiseResult s_wise_sampled(const Field& f, const std::vector<ProjPoint>& points, std::size_t s, std::uint32_t m,
                           std::uint64_t samples, SeededRng& rng);

struct StrongWitnessOptions {
    std::size_t kernel_cap = 4;
};

/// All-nonzero c with sum_i c_i prod_j <x_j, p_i> = 0, found by projective
/// search over the kernel of the evaluation matrix. Nullopt when no
/// F_q-rational witness exists. Throws precondition when the points do not
/// span P^b and cap_exceeded when the kernel is larger than the cap.
std::optional<std::vector<Elem>> strong_dependence_witness(const Field& f, const std::vector<ProjPoint>& points,
                                                           std::uint32_t m, StrongWitnessOptions opts = {});

/// Rank of the coordinate matrix equals b+1.
bool spans_space(const Field& f, const std::vector<ProjPoint>& points);

/// M_k(T) = min{m : C(m+k, k) >= T}.
std::uint32_t m_cap(std::uint32_t k, std::uint64_t T);

enum class PhiKind { empty, bound, not_covered };

struct PhiBound {
    PhiKind kind = PhiKind::not_covered;
    Rational value{0};
};

/// Upper bound on the dimension of minimally m-dependent t-tuples in P^b:
/// empty for t <= m+1, floor(3t/(m+4)) * (b+1 + (m-2)t/(m+4)) for
/// m+2 <= t <= b with t, b, m >= 3, otherwise not covered.
PhiBound phi_upper_bound(std::uint32_t t, std::uint32_t b, std::uint32_t m);

enum class Tristate { yes, no, undetermined };

struct ZConditionRow {
    std::uint32_t t = 0;
    PhiBound phi;
    Rational ratio{0};  // phi / (t-1) when phi is a bound
    bool satisfied = true;
};

struct ZConditionReport {
    Tristate verdict = Tristate::yes;
    /// First uncovered t when undetermined, first failing t when no.
    std::optional<std::uint32_t> offending_t;
    std::vector<ZConditionRow> rows;
};

/// Z > phi_t / (t-1) for every 2 <= t <= s, with "empty" counting as satisfied.
ZConditionReport z_condition(std::uint32_t b, std::uint32_t m, std::uint32_t Z, std::uint32_t s);

using Graph = std::vector<std::pair<std::size_t, std::size_t>>;

/// Independent set of size >= ceil(n/3) in a graph with at most n edges, by
/// repeatedly taking a minimum-degree vertex and deleting its neighbourhood.
std::vector<std::size_t> independent_set_third(std::size_t n, const Graph& edges);

/// Given bases B and B' of F_q^n (vectors as rows) with no vector of one a
/// multiple of a vector of the other, returns indices C into B with
/// |C| >= ceil(n/3) such that span(C) contains no vector of B'.
std::vector<std::size_t> disjoint_span_subset(const Field& f, const std::vector<std::vector<Elem>>& basis,
                                              const std::vector<std::vector<Elem>>& other);

/// True when no vector of `other` lies in the span of the selected rows.
bool span_avoids(const Field& f, const std::vector<std::vector<Elem>>& basis, const std::vector<std::size_t>& chosen,
                 const std::vector<std::vector<Elem>>& other);

}  // namespace kst
