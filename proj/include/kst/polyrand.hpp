#pragma once

// Homogeneous and bihomogeneous polynomials with coefficients indexed by
// `enumerate_multiindices`, and the seeded generator that samples them.

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "kst/gfarith.hpp"
#include "kst/projgeom.hpp"

namespace kst {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Deterministic 64-bit hash of (a, b); used to derive per-trial seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept;
std::uint64_t mix_seed(std::uint64_t a, std::string_view tag) noexcept;

/// mt19937_64 behind a seed-mixing front end. The engine is specified bit for
/// bit by the standard, and `uniform` avoids the implementation-defined
/// distributions, so a seed yields the same stream everywhere.
class SeededRng {
   public:
    explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, n) by the multiply-high reduction (bias below n / 2^64).
    std::uint64_t uniform(std::uint64_t n);
    double uniform_real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    Elem element(const Field& f) { return Elem{static_cast<std::uint32_t>(uniform(f.order()))}; }

    /// Independent child generator for component `tag` of this generator's seed.
    SeededRng child(std::string_view tag) const { return SeededRng(mix_seed(seed_, tag)); }
    SeededRng child(std::uint64_t index) const { return SeededRng(mix_seed(seed_, index)); }

   private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

struct HomPoly {
    std::uint32_t b = 0;
    std::uint32_t m = 0;
    std::vector<Elem> coeffs;

    bool is_zero() const noexcept;
};

/// Row index = x-multiindex (P^a, degree m), column index = y-multiindex
/// (P^b, degree mp).
struct BiHomPoly {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::uint32_t m = 0;
    std::uint32_t mp = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Elem> coeffs;

    Elem coeff(std::size_t r, std::size_t c) const { return coeffs[r * cols + c]; }
};

HomPoly zero_hom(std::uint32_t b, std::uint32_t m);
BiHomPoly zero_bihom(std::uint32_t a, std::uint32_t b, std::uint32_t m, std::uint32_t mp);

/// Every coefficient drawn uniformly from F_q, in multiindex order (row-major
/// for the bihomogeneous case).
HomPoly random_hom(const Field& f, std::uint32_t b, std::uint32_t m, SeededRng& rng);
BiHomPoly random_bihom(const Field& f, std::uint32_t a, std::uint32_t b, std::uint32_t m, std::uint32_t mp,
                       SeededRng& rng);

Elem evaluate(const Field& f, const HomPoly& poly, const ProjPoint& p);
Elem evaluate_bi(const Field& f, const BiHomPoly& g, const ProjPoint& v, const ProjPoint& w);

/// g(v, y) as a degree-mp polynomial in y: its y^beta coefficient is g_beta(v).
HomPoly specialize(const Field& f, const BiHomPoly& g, const ProjPoint& v);

/// Evaluates one polynomial at many points, reusing its multiindex table.
class PolyEvaluator {
   public:
    PolyEvaluator(const Field& f, const HomPoly& poly);
    Elem operator()(const std::vector<Elem>& point) const;

   private:
    const Field* field_;
    std::vector<MultiIndex> monomials_;
    std::vector<Elem> coeffs_;
    std::vector<std::size_t> support_;
    std::uint32_t m_;
};

}  // namespace kst
