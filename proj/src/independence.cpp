#include "kst/independence.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace kst {

namespace {

void require_distinct(const std::vector<ProjPoint>& points) {
    std::vector<const ProjPoint*> sorted;
    sorted.reserve(points.size());
    for (const auto& p : points) sorted.push_back(&p);
    std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return *a < *b; });
    for (std::size_t i = 1; i < sorted.size(); ++i)
        require(!(*sorted[i - 1] == *sorted[i]), ErrorCode::invalid_argument, "duplicate points");
}

void require_same_dim(const std::vector<ProjPoint>& points) {
    for (const auto& p : points)
        require(p.coords.size() == points.front().coords.size(), ErrorCode::invalid_argument,
                "points live in different projective spaces");
}

// Multinomial m! / prod beta_i! reduced mod p.
std::uint32_t multinomial_mod(const MultiIndex& beta, std::uint32_t p) {
    std::uint64_t acc = 1;
    std::uint64_t remaining = beta.degree();
    for (auto b : beta.beta) {
        acc = acc * (binomial(remaining, b) % p) % p;
        remaining -= b;
    }
    return static_cast<std::uint32_t>(acc);
}

// Incremental echelon basis used by the subset search.
class EchelonBasis {
   public:
    EchelonBasis(const Field& f, std::size_t cols) : f_(f), cols_(cols) {}

    std::size_t size() const noexcept { return pivots_.size(); }
    void truncate(std::size_t n) {
        pivots_.resize(n);
        rows_.resize(n * cols_);
    }
    /// Adds `v` if it is independent of the basis; returns false otherwise.
    bool insert(const Elem* v) {
        scratch_.assign(v, v + cols_);
        for (std::size_t j = 0; j < pivots_.size(); ++j) {
            const Elem c = scratch_[pivots_[j]];
            if (!c.value) continue;
            const Elem factor = f_.neg(c);
            const Elem* row = &rows_[j * cols_];
            for (std::size_t k = 0; k < cols_; ++k)
                if (row[k].value) scratch_[k] = f_.add(scratch_[k], f_.mul(factor, row[k]));
        }
        std::size_t piv = 0;
        while (piv < cols_ && !scratch_[piv].value) ++piv;
        if (piv == cols_) return false;
        const Elem scale = f_.inv(scratch_[piv]);
        for (auto& x : scratch_) x = f_.mul(x, scale);
        pivots_.push_back(piv);
        rows_.insert(rows_.end(), scratch_.begin(), scratch_.end());
        return true;
    }

   private:
    const Field& f_;
    std::size_t cols_;
    std::vector<std::size_t> pivots_;
    std::vector<Elem> rows_;
    std::vector<Elem> scratch_;
};

}  // namespace

Matrix evaluation_matrix(const Field& f, const std::vector<ProjPoint>& points, std::uint32_t m) {
    require(!points.empty(), ErrorCode::invalid_argument, "empty point set");
    require_same_dim(points);
    const auto monomials = enumerate_multiindices(static_cast<std::uint32_t>(points.front().dim()), m);
    Matrix out(0, monomials.size());
    for (const auto& p : points) out.append_row(monomial_row(f, p.coords, monomials));
    return out;
}

Matrix power_matrix(const Field& f, const std::vector<ProjPoint>& points, std::uint32_t m) {
    require(!points.empty(), ErrorCode::invalid_argument, "empty point set");
    require_same_dim(points);
    const auto monomials = enumerate_multiindices(static_cast<std::uint32_t>(points.front().dim()), m);
    std::vector<Elem> scales;
    for (const auto& beta : monomials) scales.push_back(f.from_int(multinomial_mod(beta, f.characteristic())));
    Matrix out(0, monomials.size());
    for (const auto& p : points) {
        auto row = monomial_row(f, p.coords, monomials);
        for (std::size_t j = 0; j < row.size(); ++j) row[j] = f.mul(row[j], scales[j]);
        out.append_row(row);
    }
    return out;
}

std::size_t hilbert_rank(const Field& f, const std::vector<ProjPoint>& points, std::uint32_t m) {
    require_distinct(points);
    return rank(f, evaluation_matrix(f, points, m));
}

std::size_t power_rank(const Field& f, const std::vector<ProjPoint>& points, std::uint32_t m) {
    require(f.characteristic() > m, ErrorCode::precondition,
            "power_rank requires characteristic > m (char " + std::to_string(f.characteristic()) + ", m " +
                std::to_string(m) + ")");
    require_distinct(points);
    return rank(f, power_matrix(f, points, m));
}

DependenceReport dependence_classify(const Field& f, const std::vector<ProjPoint>& points, std::uint32_t m) {
    require(points.size() >= 2, ErrorCode::invalid_argument, "dependence_classify needs at least 2 points");
    require_distinct(points);
    DependenceReport rep;
    rep.t = points.size();
    rep.m = m;
    const Matrix eval = evaluation_matrix(f, points, m);
    rep.hilbert_rank = rank(f, eval);
    rep.dependent = rep.hilbert_rank < rep.t;
    rep.kernel_basis = left_kernel(f, eval);
    if (!rep.dependent) {
        rep.minimal = Minimality::no;
        return rep;
    }
    rep.minimal = Minimality::yes;
    for (std::size_t skip = 0; skip < points.size(); ++skip) {
        Matrix sub(0, eval.cols());
        for (std::size_t i = 0; i < points.size(); ++i)
            if (i != skip) sub.append_row(eval.row(i));
        if (rank(f, sub) < points.size() - 1) {
            rep.minimal = Minimality::no;
            break;
        }
    }
    return rep;
}

SwiseResult s_wise_independent(const Field& f, const std::vector<ProjPoint>& points, std::size_t s, std::uint32_t m,
                               std::uint64_t budget) {
    SwiseResult res;
    const std::size_t n = points.size();
    res.subsets_total = binomial(n, s);
    if (s == 0 || s > n) {
        res.subsets_total = (s == 0) ? 1 : 0;
        return res;
    }
    require_distinct(points);
    const Matrix eval = evaluation_matrix(f, points, m);
    const std::size_t cols = eval.cols();
    std::vector<Elem> flat(n * cols);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < cols; ++c) flat[i * cols + c] = eval(i, c);

    // Lexicographic DFS; a dependent prefix settles every completion, and the
    // first completion in lex order is the witness.
    EchelonBasis basis(f, cols);
    std::vector<std::size_t> chosen;
    bool done = false;
    auto dfs = [&](auto&& self, std::size_t start) -> void {
        const std::size_t depth = chosen.size();
        for (std::size_t i = start; i + (s - depth) <= n && !done; ++i) {
            if (res.subsets_checked >= budget) {
                res.verdict = SearchVerdict::budget_exceeded;
                done = true;
                return;
            }
            basis.truncate(depth);
            chosen.push_back(i);
            if (!basis.insert(&flat[i * cols])) {
                res.verdict = SearchVerdict::dependent;
                res.witness = chosen;
                for (std::size_t j = i + 1; res.witness.size() < s; ++j) res.witness.push_back(j);
                ++res.subsets_checked;
                done = true;
                return;
            }
            if (depth + 1 == s) {
                ++res.subsets_checked;
            } else {
                self(self, i + 1);
            }
            chosen.pop_back();
        }
    };
    dfs(dfs, 0);
    return res;
}

SwiseResult s_wise_sampled(const Field& f, const std::vector<ProjPoint>& points, std::size_t s, std::uint32_t m,
                           std::uint64_t samples, SeededRng& rng) {
    SwiseResult res;
    res.sampled = true;
    const std::size_t n = points.size();
    res.subsets_total = binomial(n, s);
    if (s == 0 || s > n) return res;
    require_distinct(points);
    const Matrix eval = evaluation_matrix(f, points, m);
    std::vector<std::size_t> idx(n);
    for (std::uint64_t k = 0; k < samples; ++k) {
        std::iota(idx.begin(), idx.end(), 0);
        for (std::size_t j = 0; j < s; ++j) std::swap(idx[j], idx[j + rng.uniform(n - j)]);
        std::vector<std::size_t> subset(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(s));
        std::sort(subset.begin(), subset.end());
        Matrix sub(0, eval.cols());
        for (auto i : subset) sub.append_row(eval.row(i));
        ++res.subsets_checked;
        if (rank(f, sub) < s) {
            res.verdict = SearchVerdict::dependent;
            res.witness = subset;
            return res;
        }
    }
    return res;
}

bool spans_space(const Field& f, const std::vector<ProjPoint>& points) {
    if (points.empty()) return false;
    Matrix coords(0, points.front().coords.size());
    for (const auto& p : points) coords.append_row(p.coords);
    return rank(f, coords) == coords.cols();
}

std::optional<std::vector<Elem>> strong_dependence_witness(const Field& f, const std::vector<ProjPoint>& points,
                                                           std::uint32_t m, StrongWitnessOptions opts) {
    require_distinct(points);
    require(spans_space(f, points), ErrorCode::precondition, "points do not span the ambient space");
    const auto kernel = left_kernel(f, evaluation_matrix(f, points, m));
    const std::size_t d = kernel.size();
    if (d == 0) return std::nullopt;
    require(d <= opts.kernel_cap, ErrorCode::cap_exceeded,
            "kernel dimension " + std::to_string(d) + " exceeds cap " + std::to_string(opts.kernel_cap));
    const std::size_t t = points.size();
    const std::uint32_t q = f.order();
    // Projective combinations: first nonzero coefficient equal to 1.
    std::vector<Elem> lambda(d);
    for (std::size_t lead = 0; lead < d; ++lead) {
        std::fill(lambda.begin(), lambda.end(), Elem{0});
        lambda[lead] = f.one();
        while (true) {
            std::vector<Elem> c(t, f.zero());
            for (std::size_t j = lead; j < d; ++j) {
                if (!lambda[j].value) continue;
                for (std::size_t i = 0; i < t; ++i) c[i] = f.add(c[i], f.mul(lambda[j], kernel[j][i]));
            }
            if (std::all_of(c.begin(), c.end(), [](Elem e) { return e.value != 0; })) return c;
            std::size_t pos = d;
            while (pos-- > lead + 1) {
                if (++lambda[pos].value < q) break;
                lambda[pos].value = 0;
            }
            if (pos == lead) break;
        }
    }
    return std::nullopt;
}

std::uint32_t m_cap(std::uint32_t k, std::uint64_t T) {
    std::uint32_t m = 0;
    while (binomial(m + k, k) < T) ++m;
    return m;
}

PhiBound phi_upper_bound(std::uint32_t t, std::uint32_t b, std::uint32_t m) {
    PhiBound out;
    if (t <= m + 1) {
        out.kind = PhiKind::empty;
        return out;
    }
    if (t < 3 || b < 3 || m < 3 || t > b) return out;
    const std::int64_t whole = (3 * static_cast<std::int64_t>(t)) / (m + 4);
    out.kind = PhiKind::bound;
    out.value = Rational(whole) * (Rational(b + 1) + Rational(static_cast<std::int64_t>(m - 2) * t, m + 4));
    return out;
}

ZConditionReport z_condition(std::uint32_t b, std::uint32_t m, std::uint32_t Z, std::uint32_t s) {
    require(b >= 1 && m >= 1 && Z >= 1 && s >= 1, ErrorCode::invalid_argument, "z_condition needs b, m, Z, s >= 1");
    ZConditionReport rep;
    std::optional<std::uint32_t> first_fail;
    for (std::uint32_t t = 2; t <= s; ++t) {
        ZConditionRow row;
        row.t = t;
        row.phi = phi_upper_bound(t, b, m);
        if (row.phi.kind == PhiKind::bound) {
            row.ratio = row.phi.value / Rational(t - 1);
            row.satisfied = Rational(Z) > row.ratio;
            if (!row.satisfied && !first_fail) first_fail = t;
        } else if (row.phi.kind == PhiKind::not_covered) {
            row.satisfied = false;
            if (!rep.offending_t) rep.offending_t = t;
        }
        rep.rows.push_back(row);
    }
    if (rep.offending_t) {
        rep.verdict = Tristate::undetermined;
    } else {
        rep.verdict = first_fail ? Tristate::no : Tristate::yes;
        rep.offending_t = first_fail;
    }
    return rep;
}

std::vector<std::size_t> independent_set_third(std::size_t n, const Graph& edges) {
    std::set<std::pair<std::size_t, std::size_t>> distinct;
    for (auto [u, v] : edges) {
        require(u < n && v < n, ErrorCode::invalid_argument, "edge endpoint out of range");
        require(u != v, ErrorCode::invalid_argument, "self-loops are not allowed");
        distinct.insert({std::min(u, v), std::max(u, v)});
    }
    require(distinct.size() <= n, ErrorCode::precondition, "graph has more edges than vertices");
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto [u, v] : distinct) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<bool> alive(n, true);
    std::vector<std::size_t> degree(n);
    for (std::size_t v = 0; v < n; ++v) degree[v] = adj[v].size();
    auto remove = [&](std::size_t v) {
        alive[v] = false;
        for (auto u : adj[v])
            if (alive[u]) --degree[u];
    };
    std::vector<std::size_t> chosen;
    while (true) {
        std::size_t best = n;
        for (std::size_t v = 0; v < n; ++v)
            if (alive[v] && (best == n || degree[v] < degree[best])) best = v;
        if (best == n) break;
        chosen.push_back(best);
        std::vector<std::size_t> nbrs;
        for (auto u : adj[best])
            if (alive[u]) nbrs.push_back(u);
        remove(best);
        for (auto u : nbrs) remove(u);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

bool span_avoids(const Field& f, const std::vector<std::vector<Elem>>& basis, const std::vector<std::size_t>& chosen,
                 const std::vector<std::vector<Elem>>& other) {
    if (other.empty()) return true;
    Matrix sub(0, other.front().size());
    for (auto i : chosen) sub.append_row(basis[i]);
    const std::size_t r = rank(f, sub);
    for (const auto& w : other) {
        Matrix ext = sub;
        ext.append_row(w);
        if (rank(f, ext) == r) return false;
    }
    return true;
}

std::vector<std::size_t> disjoint_span_subset(const Field& f, const std::vector<std::vector<Elem>>& basis,
                                              const std::vector<std::vector<Elem>>& other) {
    const std::size_t n = basis.size();
    require(n >= 1 && other.size() == n, ErrorCode::invalid_argument, "both bases need n vectors");
    Matrix cols(n, n), other_rows(0, n);
    for (std::size_t j = 0; j < n; ++j) {
        require(basis[j].size() == n && other[j].size() == n, ErrorCode::invalid_argument, "vectors must have length n");
        for (std::size_t i = 0; i < n; ++i) cols(i, j) = basis[j][i];
        other_rows.append_row(other[j]);
    }
    require(rank(f, cols) == n, ErrorCode::precondition, "B is not a basis");
    require(rank(f, other_rows) == n, ErrorCode::precondition, "B' is not a basis");
    for (const auto& v : basis) {
        for (const auto& w : other) {
            Matrix pair(0, n);
            pair.append_row(v);
            pair.append_row(w);
            require(rank(f, pair) == 2, ErrorCode::precondition, "a vector of B is a multiple of a vector of B'");
        }
    }
    Graph edges;
    for (const auto& w : other) {
        const auto coeffs = solve_square(f, cols, w);
        std::vector<std::size_t> support;
        for (std::size_t i = 0; i < n && support.size() < 2; ++i)
            if (coeffs[i].value) support.push_back(i);
        require(support.size() == 2, ErrorCode::internal, "support of size < 2 despite multiple-freeness");
        edges.emplace_back(support[0], support[1]);
    }
    auto chosen = independent_set_third(n, edges);
    require(span_avoids(f, basis, chosen, other), ErrorCode::internal, "selected subset spans a vector of B'");
    return chosen;
}

}  // namespace kst
