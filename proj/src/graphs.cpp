#include "kst/graphs.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <mutex>
#include <thread>
#include <unordered_map>

#include <boost/math/distributions/chi_squared.hpp>

namespace kst {

namespace {

BigInt big_pow(std::uint64_t base, std::uint64_t e) { return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(e)); }

std::uint32_t ceil_div_log(std::uint32_t s) {
    // ceil(s / ln s)
    const double v = static_cast<double>(s) / std::log(static_cast<double>(s));
    auto r = static_cast<std::uint32_t>(std::ceil(v));
    // guard against v landing a hair above an integer
    if (r > 1 && static_cast<double>(r - 1) >= v) --r;
    return r;
}

std::vector<std::uint32_t> degree_list(std::uint32_t r, std::uint64_t target) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 1; i <= r; ++i) out.push_back(m_cap(r - i + 1, target));
    return out;
}

BigInt delta_product(const std::vector<std::uint32_t>& delta) {
    BigInt p = 1;
    for (auto d : delta) p *= d;
    return p;
}

std::uint64_t to_u64(const BigInt& v) {
    if (v > BigInt(UINT64_MAX)) return UINT64_MAX;
    return v.convert_to<std::uint64_t>();
}

}  // namespace

std::uint64_t integer_root(std::uint64_t n, std::uint32_t k) {
    require(k >= 1, ErrorCode::invalid_argument, "root index must be >= 1");
    if (k == 1 || n < 2) return n;
    auto x = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / k));
    while (x > 0 && big_pow(x, k) > n) --x;
    while (big_pow(x + 1, k) <= n) ++x;
    return x;
}

double turan_headline_log10(std::uint32_t s) {
    const double ls = static_cast<double>(s);
    return ls * std::log10(9.0) + 4.0 * std::pow(ls, 2.0 / 3.0) * std::log10(ls);
}

std::uint64_t turan_side_size(const Rational& c, std::uint64_t q, std::uint32_t s) {
    require(c >= 0, ErrorCode::invalid_argument, "c must be nonnegative");
    const BigInt v = BigInt(c.numerator()) * big_pow(q, s) / BigInt(c.denominator());
    return to_u64(v);
}

std::uint64_t zar_left_size(const Rational& c, std::uint64_t q, std::uint64_t T, std::uint32_t s) {
    require(c >= 0 && s >= 1, ErrorCode::invalid_argument, "need c >= 0 and s >= 1");
    // largest L with (L den)^s <= num^s q^T
    const BigInt rhs = big_pow(static_cast<std::uint64_t>(c.numerator()), s) * big_pow(q, T);
    const BigInt den = c.denominator();
    auto fits = [&](std::uint64_t L) { return boost::multiprecision::pow(BigInt(L) * den, s) <= rhs; };
    std::uint64_t lo = 0, hi = 1;
    while (fits(hi)) {
        lo = hi;
        require(hi < (1ull << 40), ErrorCode::cap_exceeded, "left side size too large");
        hi *= 2;
    }
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        (fits(mid) ? lo : hi) = mid;
    }
    return lo;
}

ConstructionPlan plan_construction(PlanKind kind, std::uint32_t s, PlanMode mode, const PlanOverrides& ov) {
    require(s >= 2, ErrorCode::invalid_argument, "s must be >= 2");
    ConstructionPlan p;
    p.kind = kind;
    p.mode = mode;
    p.s = s;
    if (ov.c) {
        require(*ov.c >= 0, ErrorCode::invalid_argument, "c must be nonnegative");
        p.c = *ov.c;
    }
    if (ov.q) {
        std::uint64_t pp = 0;
        std::uint32_t k = 0;
        require(split_prime_power(*ov.q, pp, k), ErrorCode::invalid_argument, "q must be a prime power");
        p.q = *ov.q;
    } else if (ov.n) {
        p.q = pick_base(*ov.n, s, kind == PlanKind::turan ? BaseKind::prime : BaseKind::power_of_two);
    }

    if (kind == PlanKind::turan) {
        std::uint64_t s2 = static_cast<std::uint64_t>(s) * s;
        if (mode == PlanMode::theorem) {
            p.m = 3;
            p.r = static_cast<std::uint32_t>(integer_root(6 * s2, 3));
            p.Z = s + p.r + 3;
            p.headline_t_log10 = turan_headline_log10(s);
        } else {
            require(ov.m && ov.r && ov.Z, ErrorCode::invalid_argument, "desk turan plan needs --m, --r and --Z");
            p.m = *ov.m;
            p.r = *ov.r;
            p.Z = *ov.Z;
            require(p.m >= 3, ErrorCode::invalid_argument, "violated: m >= 3");
            require(p.r >= 1, ErrorCode::invalid_argument, "violated: r >= 1");
            require(*p.Z >= 1, ErrorCode::invalid_argument, "violated: Z >= 1");
            require(binomial(p.m + 1 + p.r, p.m) >= s2, ErrorCode::invalid_argument, "violated: C(m+1+r, m) >= s^2");
        }
        p.b = p.r + s + *p.Z;
        if (mode == PlanMode::desk) {
            const auto zc = z_condition(p.b, p.m, *p.Z, s);
            require(zc.verdict != Tristate::no, ErrorCode::invalid_argument,
                    "violated: Z > phi_t(b, m) / (t-1) at t = " + std::to_string(zc.offending_t.value_or(0)));
        }
        p.delta = degree_list(p.r, s2);
        p.t_threshold = big_pow(p.m, *p.Z) * big_pow(p.m, s) * delta_product(p.delta) + 1;
        return p;
    }

    if (mode == PlanMode::theorem) {
        p.m = ov.m.value_or(3);
        require(p.m >= 3, ErrorCode::invalid_argument, "violated: m >= 3");
        p.r = ceil_div_log(s);
        p.T = binomial(p.r + 1 + p.m, p.m);
        require(*p.T != UINT64_MAX, ErrorCode::cap_exceeded, "T overflows");
    } else {
        require(ov.m && ov.r && ov.T, ErrorCode::invalid_argument, "desk zarankiewicz plan needs --T, --r and --m");
        p.m = *ov.m;
        p.r = *ov.r;
        p.T = *ov.T;
        require(p.m >= 1, ErrorCode::invalid_argument, "violated: m >= 1");
        require(*p.T >= 2, ErrorCode::invalid_argument, "violated: T >= 2");
        require(*p.T <= binomial(p.r + 1 + p.m, p.m), ErrorCode::invalid_argument, "violated: T <= C(r+1+m, m)");
    }
    p.b = p.r + s;
    p.delta = degree_list(p.r, *p.T);
    p.t_threshold = big_pow(p.m, s) * delta_product(p.delta) + 1;
    if (ov.a) {
        p.a = *ov.a;
    } else if (p.q) {
        p.a = static_cast<std::uint32_t>(std::min<std::uint64_t>(zar_left_size(p.c, p.q, *p.T, s), UINT32_MAX));
    }
    return p;
}

SidedGraph::SidedGraph(std::vector<std::string> left, std::vector<std::string> right)
    : left_(std::move(left)), right_(std::move(right)) {
    auto no_dupes = [](std::vector<std::string> ids) {
        std::sort(ids.begin(), ids.end());
        return std::adjacent_find(ids.begin(), ids.end()) == ids.end();
    };
    require(no_dupes(left_) && no_dupes(right_), ErrorCode::invalid_argument, "duplicate vertex id within a side");
    words_ = (right_.size() + 63) / 64;
    adj_.assign(left_.size() * words_, 0);
}

void SidedGraph::set_edge(std::size_t l, std::size_t r) {
    require(l < left_.size() && r < right_.size(), ErrorCode::invalid_argument, "edge endpoint out of range");
    adj_[l * words_ + r / 64] |= 1ull << (r % 64);
}

bool SidedGraph::has_edge(std::size_t l, std::size_t r) const {
    return (adj_[l * words_ + r / 64] >> (r % 64)) & 1u;
}

std::uint64_t SidedGraph::edge_count() const {
    std::uint64_t n = 0;
    for (auto w : adj_) n += std::popcount(w);
    return n;
}

SidedGraph SidedGraph::transposed() const {
    SidedGraph t(right_, left_);
    for (std::size_t l = 0; l < left_.size(); ++l)
        for (std::size_t r = 0; r < right_.size(); ++r)
            if (has_edge(l, r)) t.set_edge(r, l);
    t.field_p = field_p;
    t.field_k = field_k;
    t.plan = plan;
    t.seed = seed;
    return t;
}

namespace {

struct Best {
    std::uint64_t size = 0;
    std::vector<std::size_t> subset;
    bool found = false;
};

std::uint64_t popcount_words(const std::uint64_t* w, std::size_t n) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += std::popcount(w[i]);
    return c;
}

// Lex-first maximum over s-subsets whose first element is `first`. Subtrees
// whose running intersection is already strictly below `floor` are skipped;
// they cannot tie the eventual maximum.
Best search_from(const SidedGraph& g, std::size_t s, std::size_t first, const std::atomic<std::uint64_t>& floor) {
    const std::size_t n = g.left_size(), W = g.words();
    Best best;
    std::vector<std::uint64_t> stack(s * W);
    std::vector<std::size_t> idx(s);
    std::copy(g.row(first), g.row(first) + W, stack.begin());
    idx[0] = first;
    if (s == 1) {
        best = {popcount_words(stack.data(), W), {first}, true};
        return best;
    }
    std::size_t depth = 1;
    idx[1] = first + 1;
    while (depth >= 1) {
        if (idx[depth] + (s - depth) > n) {
            --depth;
            if (depth >= 1) ++idx[depth];
            continue;
        }
        const std::uint64_t* prev = &stack[(depth - 1) * W];
        const std::uint64_t* row = g.row(idx[depth]);
        std::uint64_t* cur = &stack[depth * W];
        for (std::size_t w = 0; w < W; ++w) cur[w] = prev[w] & row[w];
        const std::uint64_t c = popcount_words(cur, W);
        const bool dead = (best.found && c <= best.size) || c < floor.load(std::memory_order_relaxed);
        if (depth + 1 == s) {
            if (!dead && (!best.found || c > best.size)) best = {c, std::vector<std::size_t>(idx.begin(), idx.end()), true};
            ++idx[depth];
        } else if (dead) {
            ++idx[depth];
        } else {
            ++depth;
            idx[depth] = idx[depth - 1] + 1;
        }
    }
    return best;
}

CommonNeighborhood sampled_search(const SidedGraph& g, std::size_t s, const SearchOptions& opts, std::uint64_t total) {
    CommonNeighborhood out;
    out.certifying = false;
    out.total = total;
    SeededRng rng(opts.sample_seed);
    const std::size_t n = g.left_size(), W = g.words();
    std::vector<std::size_t> pool(n);
    std::vector<std::uint64_t> acc(W);
    bool have = false;
    for (std::uint64_t k = 0; k < opts.samples; ++k) {
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        for (std::size_t i = 0; i < s; ++i) std::swap(pool[i], pool[i + rng.uniform(n - i)]);
        std::vector<std::size_t> sub(pool.begin(), pool.begin() + s);
        std::sort(sub.begin(), sub.end());
        std::copy(g.row(sub[0]), g.row(sub[0]) + W, acc.begin());
        for (std::size_t i = 1; i < s; ++i)
            for (std::size_t w = 0; w < W; ++w) acc[w] &= g.row(sub[i])[w];
        const std::uint64_t c = popcount_words(acc.data(), W);
        if (!have || c > out.size || (c == out.size && sub < out.subset)) {
            out.size = c;
            out.subset = std::move(sub);
            have = true;
        }
        ++out.checked;
    }
    return out;
}

}  // namespace

CommonNeighborhood max_common_neighborhood(const SidedGraph& g0, std::size_t s, Side side, const SearchOptions& opts) {
    require(s >= 1, ErrorCode::invalid_argument, "s must be >= 1");
    const SidedGraph tg = side == Side::right ? g0.transposed() : SidedGraph();
    const SidedGraph& g = side == Side::right ? tg : g0;
    const std::size_t n = g.left_size();
    CommonNeighborhood out;
    out.total = binomial(n, s);
    if (s > n) return out;
    if (out.total > opts.budget) {
        require(opts.allow_sampling, ErrorCode::budget_exceeded,
                "common-neighbourhood search needs " + std::to_string(out.total) + " subsets, budget is " +
                    std::to_string(opts.budget));
        return sampled_search(g, s, opts, out.total);
    }
    const std::size_t firsts = n - s + 1;
    std::vector<Best> per(firsts);
    std::atomic<std::uint64_t> floor{0};
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < firsts;) {
            per[i] = search_from(g, s, i, floor);
            if (per[i].found) {
                std::uint64_t cur = floor.load();
                while (per[i].size > cur && !floor.compare_exchange_weak(cur, per[i].size)) {
                }
            }
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(opts.workers, static_cast<unsigned>(firsts)));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    bool have = false;
    for (auto& b : per) {
        if (!b.found) continue;
        if (!have || b.size > out.size) {
            out.size = b.size;
            out.subset = std::move(b.subset);
            have = true;
        }
    }
    out.checked = out.total;
    return out;
}

KstVerdict kst_verdict(const SidedGraph& g, std::size_t s, const BigInt& t, Orientation orientation,
                       const SearchOptions& opts) {
    require(t >= 1, ErrorCode::invalid_argument, "t must be >= 1");
    KstVerdict v;
    auto judge = [&](const SidedGraph& view, const CommonNeighborhood& cn, Side side) {
        if (BigInt(cn.size) >= t) {
            v.free = Tristate::no;
            v.side = side;
            v.subset = cn.subset;
            const std::size_t need = t.convert_to<std::size_t>();
            for (std::size_t r = 0; r < view.right_size() && v.neighbors.size() < need; ++r) {
                bool all = true;
                for (auto l : cn.subset) all = all && view.has_edge(l, r);
                if (all) v.neighbors.push_back(r);
            }
            return true;
        }
        if (!cn.certifying) v.free = Tristate::undetermined;
        return false;
    };
    v.left = max_common_neighborhood(g, s, Side::left, opts);
    if (judge(g, v.left, Side::left)) return v;
    if (orientation == Orientation::both) {
        const SidedGraph tg = g.transposed();
        v.right = max_common_neighborhood(tg, s, Side::left, opts);
        judge(tg, *v.right, Side::right);
    }
    return v;
}

DensityReport density_report(const SidedGraph& g, const ConstructionPlan& plan) {
    DensityReport d;
    d.edges = g.edge_count();
    if (d.edges == 0) return d;
    const double E = static_cast<double>(d.edges);
    const double c = boost::rational_cast<double>(plan.c);
    const double q = static_cast<double>(plan.q);
    const double s = static_cast<double>(plan.s);
    if (plan.q > 0 && c > 0) {
        if (plan.kind == PlanKind::turan) {
            d.turan_ratio = E / (c * c * std::pow(q, 2 * s - 1) / 2.0);
        } else if (plan.T) {
            d.zar_ratio = E / (c * std::pow(q, static_cast<double>(*plan.T) / s + s - 1) / 4.0);
        }
    }
    d.kst_ratio = E / (static_cast<double>(g.left_size()) * std::pow(static_cast<double>(g.right_size()), 1.0 - 1.0 / s));
    return d;
}

TrialReport evaluate_trial(const SidedGraph& g, const ConstructionPlan& plan, const SearchOptions& opts) {
    require(plan.q > 0, ErrorCode::invalid_argument, "plan has no field size");
    TrialReport rep;
    rep.seed = g.seed;
    rep.left_size = g.left_size();
    rep.right_size = g.right_size();
    rep.edges = g.edge_count();
    rep.density = density_report(g, plan);
    rep.bezout_ledger = plan.t_threshold - 1;
    const BigInt num = plan.c.numerator(), den = plan.c.denominator();
    const BigInt E = rep.edges;
    if (plan.kind == PlanKind::turan) {
        const std::uint64_t side = turan_side_size(plan.c, plan.q, plan.s);
        rep.sizes_ok = side > 0 && rep.left_size == side && rep.right_size == side;
        // |E| >= c^2 q^(2s-1) / 2
        rep.edges_ok = 2 * E * den * den >= num * num * big_pow(plan.q, 2 * plan.s - 1);
    } else {
        require(plan.T.has_value(), ErrorCode::invalid_argument, "zarankiewicz plan without T");
        const std::uint64_t side = zar_left_size(plan.c, plan.q, *plan.T, plan.s);
        rep.sizes_ok = side > 0 && rep.left_size == side && rep.right_size > 0;
        // |E| >= c q^(T/s + s - 1) / 4, raised to the s-th power
        rep.edges_ok = boost::multiprecision::pow(4 * E * den, plan.s) >=
                       boost::multiprecision::pow(num, plan.s) *
                           big_pow(plan.q, *plan.T + static_cast<std::uint64_t>(plan.s) * (plan.s - 1));
    }
    const auto v = kst_verdict(g, plan.s, plan.t_threshold,
                               plan.kind == PlanKind::turan ? Orientation::both : Orientation::left_only, opts);
    rep.left_cn = v.left;
    rep.right_cn = v.right;
    rep.kst_free = v.free;
    rep.pass = rep.sizes_ok && rep.edges_ok && rep.kst_free == Tristate::yes;
    return rep;
}

namespace {

// Adjacency l ~ r iff g(l, r) = 0, via u = l^X G followed by <u, r^Y>.
void fill_adjacency(const Field& f, const BiHomPoly& g, const std::vector<ProjPoint>& L, const std::vector<ProjPoint>& R,
                    SidedGraph& graph) {
    const auto xs = enumerate_multiindices(g.a, g.m);
    const auto ys = enumerate_multiindices(g.b, g.mp);
    std::vector<std::vector<Elem>> rrows;
    rrows.reserve(R.size());
    for (const auto& r : R) rrows.push_back(monomial_row(f, r.coords, ys));
    std::vector<Elem> u(g.cols);
    for (std::size_t i = 0; i < L.size(); ++i) {
        const auto lx = monomial_row(f, L[i].coords, xs);
        std::fill(u.begin(), u.end(), f.zero());
        for (std::size_t a = 0; a < g.rows; ++a) {
            if (!lx[a].value) continue;
            for (std::size_t c = 0; c < g.cols; ++c) u[c] = f.add(u[c], f.mul(lx[a], g.coeff(a, c)));
        }
        for (std::size_t j = 0; j < R.size(); ++j) {
            Elem acc = f.zero();
            for (std::size_t c = 0; c < g.cols; ++c) acc = f.add(acc, f.mul(u[c], rrows[j][c]));
            if (!acc.value) graph.set_edge(i, j);
        }
    }
}

std::vector<std::string> ids_of(const Field& f, const std::vector<ProjPoint>& pts) {
    std::vector<std::string> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back(format_point(f, p));
    return out;
}

SidedGraph make_graph(const Field& f, const ConstructionPlan& plan, std::uint64_t seed, const BiHomPoly& g,
                      const std::vector<ProjPoint>& L, const std::vector<ProjPoint>& R) {
    SidedGraph graph(ids_of(f, L), ids_of(f, R));
    graph.field_p = f.characteristic();
    graph.field_k = f.degree();
    graph.plan = plan;
    graph.seed = seed;
    fill_adjacency(f, g, L, R, graph);
    return graph;
}

}  // namespace

TrialResult construct_turan(const ConstructionPlan& plan, std::uint64_t seed, const ConstructOptions& opts) {
    require(plan.kind == PlanKind::turan && plan.Z, ErrorCode::invalid_argument, "construct_turan needs a turan plan");
    require(plan.mode == PlanMode::desk, ErrorCode::invalid_argument, "construct_turan needs a desk-mode plan");
    require(plan.q > 0, ErrorCode::invalid_argument, "plan has no field size (set --q or --n)");
    const std::uint64_t side = turan_side_size(plan.c, plan.q, plan.s);
    require(side > 0, ErrorCode::invalid_argument, "floor(c q^s) = 0: both sides would be empty");
    const Field f = make_field_of_order(plan.q);
    const SeededRng root(seed);

    IndependentVarietyOptions vopts = opts.variety;
    if (z_condition(plan.b, plan.m, *plan.Z, plan.s).verdict == Tristate::undetermined) vopts.waive_z_condition = true;
    IndependentVariety W = build_independent_variety(f, plan.b, plan.m, *plan.Z, plan.s, root.child("variety"), vopts);
    require(W.report.certified, ErrorCode::uncertified,
            "variety certification failed after " + std::to_string(W.report.attempts) + " attempts");

    auto cut = [&](std::string_view tag) {
        SeededRng rng = root.child(tag);
        std::vector<HomPoly> hs;
        for (auto d : plan.delta) hs.push_back(random_hom(f, plan.b, d, rng));
        return hs;
    };
    const auto h = cut("h");
    const auto hp = cut("h_prime");
    auto L = filter_points(f, h, W.points);
    auto R = filter_points(f, hp, W.points);
    if (L.size() > side) L.resize(side);
    if (R.size() > side) R.resize(side);
    require(!L.empty() && !R.empty(), ErrorCode::uncertified, "a side of the graph came out empty");

    SeededRng grng = root.child("g");
    const BiHomPoly g = random_bihom(f, plan.b, plan.b, plan.m, plan.m, grng);
    TrialResult out;
    out.graph = make_graph(f, plan, seed, g, L, R);
    out.report = evaluate_trial(out.graph, plan, opts.search);
    out.report.variety = W.report;
    VarietySpec right = *W.variety;
    for (const auto& poly : hp) right.add_generator(poly);
    out.right_variety = std::move(right);
    out.g = g;
    return out;
}

TrialResult construct_zar(const ConstructionPlan& plan0, std::uint64_t seed, const ConstructOptions& opts) {
    require(plan0.kind == PlanKind::zarankiewicz && plan0.T, ErrorCode::invalid_argument,
            "construct_zar needs a zarankiewicz plan");
    require(plan0.q > 0, ErrorCode::invalid_argument, "plan has no field size (set --q or --n)");
    ConstructionPlan plan = plan0;
    const std::uint64_t nL = zar_left_size(plan.c, plan.q, *plan.T, plan.s);
    require(nL > 0, ErrorCode::invalid_argument, "floor(c q^(T/s)) = 0: left side would be empty");
    if (!plan.a) plan.a = static_cast<std::uint32_t>(nL);
    require(nL <= static_cast<std::uint64_t>(*plan.a) + 1, ErrorCode::invalid_argument,
            "|L| = " + std::to_string(nL) + " exceeds a+1 coordinate points");
    const std::uint32_t a = *plan.a;
    const Field f = make_field_of_order(plan.q);
    const SeededRng root(seed);

    std::vector<ProjPoint> L;
    for (std::uint32_t i = 0; i <= a; ++i) L.push_back(coordinate_point(f, a, i));
    std::sort(L.begin(), L.end());
    L.resize(nL);

    SeededRng hrng = root.child("h_prime");
    VarietySpec right(plan.b);
    for (auto d : plan.delta) right.add_generator(random_hom(f, plan.b, d, hrng));
    const auto R = fq_points(f, right, opts.variety.point_cap);
    require(!R.empty(), ErrorCode::uncertified, "right side V(h') has no F_q-points");

    SeededRng grng = root.child("g");
    const BiHomPoly g = random_bihom(f, a, plan.b, plan.m, plan.m, grng);
    TrialResult out;
    out.graph = make_graph(f, plan, seed, g, L, R);
    out.report = evaluate_trial(out.graph, plan, opts.search);
    if (f.characteristic() > plan.m)
        out.report.power_rank_crosscheck = hilbert_rank(f, L, plan.m) == power_rank(f, L, plan.m);
    out.right_variety = std::move(right);
    out.g = g;
    return out;
}

TrialResult construct(const ConstructionPlan& plan, std::uint64_t seed, const ConstructOptions& opts) {
    return plan.kind == PlanKind::turan ? construct_turan(plan, seed, opts) : construct_zar(plan, seed, opts);
}

namespace {

struct Projection {
    std::string label;
    std::vector<std::pair<std::size_t, std::size_t>> coords;  // (anchor, y-monomial)
};

double chi_square(const std::vector<std::uint64_t>& obs, double expected) {
    double x = 0;
    for (auto o : obs) {
        const double d = static_cast<double>(o) - expected;
        x += d * d / expected;
    }
    return x;
}

}  // namespace

UniformityResult joint_uniformity_test(const Field& f, std::uint32_t a, std::uint32_t b, std::uint32_t m, std::uint32_t mp,
                                       const std::vector<ProjPoint>& anchors, UniformityMode mode, SeededRng& rng,
                                       const UniformityOptions& opts) {
    require(!anchors.empty(), ErrorCode::invalid_argument, "need at least one anchor");
    for (const auto& v : anchors)
        require(v.coords.size() == a + 1, ErrorCode::invalid_argument, "anchor does not lie in P^a");
    const std::size_t s = anchors.size();
    if (!opts.allow_dependent) {
        const auto ind = s_wise_independent(f, anchors, s, m);
        require(ind.verdict == SearchVerdict::independent, ErrorCode::precondition, "anchors are m-dependent");
    }
    const auto xs = enumerate_multiindices(a, m);
    const std::size_t R = xs.size();
    const std::size_t K = binomial(b + mp, mp);
    std::vector<std::vector<Elem>> ev;  // ev[i][row] = v_i^alpha_row
    for (const auto& v : anchors) ev.push_back(monomial_row(f, v.coords, xs));
    const std::uint64_t q = f.order();

    // specialization coefficient of anchor i at y-monomial c
    auto spec = [&](const std::vector<Elem>& g, std::size_t i, std::size_t c) {
        Elem acc = f.zero();
        for (std::size_t r = 0; r < R; ++r) acc = f.add(acc, f.mul(ev[i][r], g[r * K + c]));
        return acc.value;
    };

    UniformityResult out;
    out.mode = mode;
    const std::size_t N = R * K;
    if (mode == UniformityMode::exhaustive) {
        const std::uint64_t total = checked_pow(q, static_cast<std::uint32_t>(N));
        require(total != 0 && total <= opts.exhaustive_cap, ErrorCode::cap_exceeded,
                "exhaustive uniformity needs q^" + std::to_string(N) + " polynomials, over the cap");
        const std::uint64_t outcomes = checked_pow(q, static_cast<std::uint32_t>(s * K));
        require(outcomes != 0, ErrorCode::cap_exceeded, "outcome space overflows");
        out.polynomials = total;
        out.outcomes_possible = outcomes;
        std::unordered_map<std::uint64_t, std::uint64_t> tally;
        std::vector<Elem> g(N, f.zero());
        for (std::uint64_t it = 0; it < total; ++it) {
            std::uint64_t key = 0;
            for (std::size_t i = 0; i < s; ++i)
                for (std::size_t c = 0; c < K; ++c) key = key * q + spec(g, i, c);
            ++tally[key];
            for (std::size_t j = 0; j < N; ++j) {
                if (++g[j].value < q) break;
                g[j].value = 0;
            }
        }
        out.outcomes_seen = tally.size();
        out.min_count = UINT64_MAX;
        for (auto& [k, n] : tally) {
            out.min_count = std::min(out.min_count, n);
            out.max_count = std::max(out.max_count, n);
        }
        if (out.outcomes_seen < outcomes) out.min_count = 0;
        out.uniform = out.outcomes_seen == outcomes && out.min_count == out.max_count;
        return out;
    }

    // Sampled: one chi-square test per y-monomial block over the anchors, and
    // one interleaved projection that mixes anchors and blocks.
    const double draws = static_cast<double>(opts.draws);
    auto width_for = [&](std::size_t want) {
        std::size_t w = want;
        while (w > 1 && draws / std::pow(static_cast<double>(q), static_cast<double>(w)) < 5.0) --w;
        return w;
    };
    std::vector<Projection> projs;
    const std::size_t bw = width_for(s);
    for (std::size_t c = 0; c < K; ++c) {
        Projection p{"block " + std::to_string(c), {}};
        for (std::size_t i = 0; i < bw; ++i) p.coords.emplace_back(i, c);
        projs.push_back(std::move(p));
    }
    const std::size_t cw = width_for(std::min<std::size_t>(4, s * K));
    if (cw >= 2 && s * K >= 2) {
        Projection p{"interleaved", {}};
        for (std::size_t j = 0; j < cw; ++j) p.coords.emplace_back(j % s, j % K);
        // (j % s, j % K) repeats only when lcm(s, K) < cw
        std::sort(p.coords.begin(), p.coords.end());
        p.coords.erase(std::unique(p.coords.begin(), p.coords.end()), p.coords.end());
        if (p.coords.size() >= 2) projs.push_back(std::move(p));
    }
    std::vector<std::vector<std::uint64_t>> counts;
    for (const auto& p : projs) counts.emplace_back(checked_pow(q, static_cast<std::uint32_t>(p.coords.size())), 0);
    std::vector<std::vector<std::uint32_t>> cache(s, std::vector<std::uint32_t>(K));
    for (std::uint64_t d = 0; d < opts.draws; ++d) {
        const BiHomPoly g = random_bihom(f, a, b, m, mp, rng);
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t c = 0; c < K; ++c) cache[i][c] = spec(g.coeffs, i, c);
        for (std::size_t k = 0; k < projs.size(); ++k) {
            std::uint64_t key = 0;
            for (auto [i, c] : projs[k].coords) key = key * q + cache[i][c];
            ++counts[k][key];
        }
    }
    const double tail = opts.tail / static_cast<double>(projs.size());
    out.uniform = true;
    for (std::size_t k = 0; k < projs.size(); ++k) {
        ChiSquareTest t;
        t.label = projs[k].label;
        t.cells = counts[k].size();
        t.statistic = chi_square(counts[k], draws / static_cast<double>(t.cells));
        const boost::math::chi_squared dist(static_cast<double>(t.cells - 1));
        t.critical = boost::math::quantile(boost::math::complement(dist, tail));
        t.pass = t.statistic <= t.critical;
        out.uniform = out.uniform && t.pass;
        out.tests.push_back(std::move(t));
    }
    return out;
}

std::string to_string(PlanKind k) { return k == PlanKind::turan ? "turan" : "zarankiewicz"; }
std::string to_string(PlanMode m) { return m == PlanMode::theorem ? "theorem" : "desk"; }
std::string to_string(Tristate t) {
    switch (t) {
        case Tristate::yes: return "yes";
        case Tristate::no: return "no";
        default: return "undetermined";
    }
}

}  // namespace kst
