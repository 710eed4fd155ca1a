#pragma once

// Small generators for the property tests. Everything draws from SeededRng so
// failures reproduce from the printed seed.

#include <algorithm>
#include <numeric>
#include <vector>

#include "kst/gfarith.hpp"
#include "kst/linalg.hpp"
#include "kst/polyrand.hpp"
#include "kst/projgeom.hpp"

namespace testgen {

using namespace kst;

inline const std::vector<std::uint64_t>& small_orders() {
    static const std::vector<std::uint64_t> qs = {2, 3, 4, 5, 7, 8, 9, 11};
    return qs;
}

inline Elem nonzero(const Field& f, SeededRng& rng) { return Elem{static_cast<std::uint32_t>(1 + rng.uniform(f.order() - 1))}; }

inline std::vector<Elem> raw_vector(const Field& f, std::size_t n, SeededRng& rng) {
    std::vector<Elem> v(n);
    for (auto& e : v) e = rng.element(f);
    return v;
}

inline ProjPoint point(const Field& f, std::uint32_t b, SeededRng& rng) {
    while (true) {
        auto v = raw_vector(f, b + 1, rng);
        if (std::any_of(v.begin(), v.end(), [](Elem e) { return e.value != 0; })) return canonicalize(f, v);
    }
}

/// `n` distinct points drawn from `pool` without replacement.
inline std::vector<ProjPoint> sample(const std::vector<ProjPoint>& pool, std::size_t n, SeededRng& rng) {
    std::vector<std::size_t> idx(pool.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<ProjPoint> out;
    for (std::size_t i = 0; i < n && i < pool.size(); ++i) {
        std::swap(idx[i], idx[i + rng.uniform(pool.size() - i)]);
        out.push_back(pool[idx[i]]);
    }
    return out;
}

inline Matrix matrix(const Field& f, std::size_t rows, std::size_t cols, SeededRng& rng) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.element(f);
    return m;
}

/// All index subsets of {0..n-1} of size k, lexicographic.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        out.push_back(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

}  // namespace testgen
