#include "doctest.h"

#include <set>

#include "helpers.hpp"
#include "kst/independence.hpp"

using namespace kst;

namespace {

std::vector<ProjPoint> pts(const Field& f, std::initializer_list<const char*> text) {
    std::vector<ProjPoint> out;
    for (auto t : text) out.push_back(parse_point(f, t));
    return out;
}

std::vector<ProjPoint> pick(const std::vector<ProjPoint>& all, const std::vector<std::size_t>& idx) {
    std::vector<ProjPoint> out;
    for (auto i : idx) out.push_back(all[i]);
    return out;
}

bool is_independent_set(const std::vector<std::size_t>& set, const Graph& edges) {
    const std::set<std::size_t> in(set.begin(), set.end());
    for (auto [u, v] : edges)
        if (in.count(u) && in.count(v)) return false;
    return in.size() == set.size();
}

// Random basis of F^n as rows.
std::vector<std::vector<Elem>> random_basis(const Field& f, std::size_t n, SeededRng& rng) {
    while (true) {
        const Matrix m = testgen::matrix(f, n, n, rng);
        if (rank(f, m) < n) continue;
        std::vector<std::vector<Elem>> rows;
        for (std::size_t r = 0; r < n; ++r) rows.push_back(m.row(r));
        return rows;
    }
}

bool proportional(const Field& f, const std::vector<Elem>& u, const std::vector<Elem>& v) {
    Matrix m(0, u.size());
    m.append_row(u);
    m.append_row(v);
    return rank(f, m) < 2;
}

}  // namespace

TEST_SUITE("independence") {
    TEST_CASE("hilbert rank examples") {
        const Field f5 = make_field(5), f7 = make_field(7);
        for (std::uint32_t m = 0; m <= 4; ++m) CHECK(hilbert_rank(f5, pts(f5, {"1:2:3"}), m) == 1);
        CHECK(hilbert_rank(f5, pts(f5, {"0:1", "1:0", "1:1", "1:2"}), 2) == 3);
        CHECK(hilbert_rank(f5, pts(f5, {"0:1", "1:0", "1:3"}), 2) == 3);
        CHECK_THROWS_AS(hilbert_rank(f5, pts(f5, {"1:1", "2:2"}), 1), Error);
        CHECK_THROWS_AS(hilbert_rank(f7, {}, 1), Error);
    }

    TEST_CASE("hilbert rank is bounded and monotone") {
        SeededRng rng(14);
        for (auto q : {3ull, 4ull, 5ull, 7ull}) {
            const Field f = make_field_of_order(q);
            const auto all = enumerate_projective(f, 2);
            for (int i = 0; i < 60; ++i) {
                const std::size_t t = 1 + rng.uniform(std::min<std::size_t>(all.size(), 12));
                const auto set = testgen::sample(all, t, rng);
                std::size_t prev = 0;
                for (std::uint32_t m = 0; m <= 4; ++m) {
                    const std::size_t h = hilbert_rank(f, set, m);
                    CHECK(h <= std::min<std::uint64_t>(t, binomial(2 + m, m)));
                    CHECK(h >= prev);
                    prev = h;
                    if (t > 1) {
                        const std::vector<ProjPoint> sub(set.begin(), set.end() - 1);
                        CHECK(hilbert_rank(f, sub, m) <= h);
                    }
                }
            }
        }
    }

    TEST_CASE("dependence classification") {
        const Field f5 = make_field(5), f7 = make_field(7);
        const auto four = pts(f5, {"0:1", "1:0", "1:1", "1:2"});
        const auto r4 = dependence_classify(f5, four, 2);
        CHECK(r4.dependent);
        CHECK(r4.minimal == Minimality::yes);
        CHECK(r4.kernel_basis.size() == 1);
        CHECK_FALSE(dependence_classify(f5, pts(f5, {"0:1", "1:0", "1:1"}), 2).dependent);

        const auto five = pts(f7, {"0:1", "1:0", "1:1", "1:2", "1:3"});
        const auto r5 = dependence_classify(f7, five, 2);
        CHECK(r5.dependent);
        CHECK(r5.minimal == Minimality::no);
        CHECK(r5.kernel_basis.size() == 2);

        // minimality oracle: every proper subset has full rank
        SeededRng rng(6);
        const auto plane = enumerate_projective(f5, 2);
        for (int i = 0; i < 40; ++i) {
            const auto set = testgen::sample(plane, 3 + rng.uniform(5), rng);
            const auto rep = dependence_classify(f5, set, 2);
            const Matrix ev = evaluation_matrix(f5, set, 2);
            for (const auto& c : rep.kernel_basis) {
                std::vector<Elem> acc(ev.cols());
                for (std::size_t r = 0; r < set.size(); ++r)
                    for (std::size_t col = 0; col < ev.cols(); ++col)
                        acc[col] = f5.add(acc[col], f5.mul(c[r], ev(r, col)));
                CHECK(std::all_of(acc.begin(), acc.end(), [](Elem e) { return e.value == 0; }));
            }
            if (!rep.dependent) continue;
            bool minimal = true;
            for (const auto& sub : testgen::subsets(set.size(), set.size() - 1))
                minimal = minimal && hilbert_rank(f5, pick(set, sub), 2) == sub.size();
            CHECK(rep.minimal == (minimal ? Minimality::yes : Minimality::no));
        }
    }

    TEST_CASE("s-wise independence") {
        const Field f3 = make_field(3);
        const auto line = enumerate_projective(f3, 1);
        const auto all4 = s_wise_independent(f3, line, 4, 2);
        CHECK(all4.verdict == SearchVerdict::dependent);
        CHECK(all4.witness == std::vector<std::size_t>{0, 1, 2, 3});
        CHECK(s_wise_independent(f3, line, 3, 2).verdict == SearchVerdict::independent);

        const Field f7 = make_field(7);
        std::vector<ProjPoint> coords;
        for (std::uint32_t i = 0; i <= 4; ++i) coords.push_back(coordinate_point(f7, 4, i));
        for (std::uint32_t m = 1; m <= 4; ++m)
            for (std::size_t s = 1; s <= 5; ++s) CHECK(s_wise_independent(f7, coords, s, m).verdict == SearchVerdict::independent);

        const auto plane = enumerate_projective(f7, 2);
        const auto over = s_wise_independent(f7, plane, 3, 2, 10);
        CHECK(over.verdict == SearchVerdict::budget_exceeded);
        SeededRng rng(2);
        const auto samp = s_wise_sampled(f7, coords, 3, 2, 50, rng);
        CHECK(samp.sampled);
        CHECK(samp.verdict == SearchVerdict::independent);
    }

    TEST_CASE("power rank agrees with hilbert rank when char > m") {
        const Field f7 = make_field(7);
        std::vector<ProjPoint> coords;
        for (std::uint32_t i = 0; i <= 3; ++i) coords.push_back(coordinate_point(f7, 3, i));
        CHECK(power_rank(f7, coords, 3) == 4);
        CHECK(power_rank(f7, pts(f7, {"0:1", "1:0", "1:1", "1:2"}), 2) == 3);
        SeededRng rng(200);
        const auto plane = enumerate_projective(f7, 2);
        for (int i = 0; i < 200; ++i) {
            const std::uint32_t m = 2 + rng.uniform(2);
            const auto set = testgen::sample(plane, 1 + rng.uniform(12), rng);
            CHECK(power_rank(f7, set, m) == hilbert_rank(f7, set, m));
        }
        CHECK_THROWS_AS(power_rank(make_field(3), coords.size() ? pts(make_field(3), {"1:0"}) : coords, 3), Error);
    }

    TEST_CASE("strong dependence witnesses") {
        const Field f7 = make_field(7);
        const auto w = strong_dependence_witness(f7, pts(f7, {"0:1", "1:0", "1:1", "1:2"}), 2);
        REQUIRE(w.has_value());
        CHECK(std::none_of(w->begin(), w->end(), [](Elem e) { return e.value == 0; }));
        CHECK_FALSE(strong_dependence_witness(f7, pts(f7, {"0:1", "1:0", "1:1"}), 2).has_value());
        CHECK_THROWS_AS(strong_dependence_witness(f7, pts(f7, {"1:0:0", "0:1:0"}), 2), Error);
    }

    TEST_CASE("exhaustive size bound for strongly dependent spanning sets") {
        for (auto [q, b] : {std::pair{5ull, 1u}, {2ull, 2u}}) {
            const Field f = make_field_of_order(q);
            const auto all = enumerate_projective(f, b);
            for (std::uint32_t m = 2; m <= 3; ++m) {
                CAPTURE(q);
                CAPTURE(m);
                std::size_t smallest = all.size() + 1, witnessed = 0;
                for (std::size_t t = b + 1; t <= all.size(); ++t)
                    for (const auto& idx : testgen::subsets(all.size(), t)) {
                        const auto set = pick(all, idx);
                        if (!spans_space(f, set)) continue;
                        std::optional<std::vector<Elem>> wit;
                        try {
                            wit = strong_dependence_witness(f, set, m);
                        } catch (const Error& e) {
                            REQUIRE(e.code() == ErrorCode::cap_exceeded);
                            continue;
                        }
                        if (!wit) continue;
                        ++witnessed;
                        smallest = std::min(smallest, t);
                    }
                const double bound = std::max(2.0 * (b + 1), (m + 4.0) * (b + 1) / 3.0);
                if (witnessed) CHECK(static_cast<double>(smallest) >= bound);
            }
        }
    }

    TEST_CASE("M_k examples") {
        CHECK(m_cap(1, 4) == 3);
        CHECK(m_cap(2, 6) == 2);
        CHECK(m_cap(2, 7) == 3);
        for (std::uint32_t k = 1; k <= 6; ++k) CHECK(m_cap(k, 1) == 0);
        for (std::uint32_t k = 1; k <= 4; ++k)
            for (std::uint64_t T = 1; T <= 200; ++T) {
                const auto m = m_cap(k, T);
                CHECK(binomial(m + k, k) >= T);
                if (m) CHECK(binomial(m - 1 + k, k) < T);
            }
    }

    TEST_CASE("phi bound and Z-condition") {
        CHECK(phi_upper_bound(4, 10, 3).kind == PhiKind::empty);
        for (std::uint32_t b = 1; b <= 8; ++b) CHECK(phi_upper_bound(4, b, 3).kind == PhiKind::empty);
        const auto p = phi_upper_bound(5, 10, 3);
        CHECK(p.kind == PhiKind::bound);
        CHECK(p.value == Rational(164, 7));
        CHECK(phi_upper_bound(12, 10, 3).kind == PhiKind::not_covered);

        CHECK(z_condition(7, 3, 1, 2).verdict == Tristate::yes);
        CHECK(z_condition(4, 3, 1, 4).verdict == Tristate::yes);
        const auto no = z_condition(10, 3, 5, 5);
        CHECK(no.verdict == Tristate::no);
        REQUIRE(no.offending_t.has_value());
        CHECK(*no.offending_t == 5);
        CHECK(z_condition(10, 3, 6, 5).verdict == Tristate::yes);
        const auto und = z_condition(5, 3, 9, 7);
        CHECK(und.verdict == Tristate::undetermined);
        CHECK(*und.offending_t == 6);
    }

    TEST_CASE("independent set of a third") {
        CHECK(independent_set_third(3, {{0, 1}, {1, 2}, {0, 2}}).size() == 1);
        const Graph cycle = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}};
        const auto c = independent_set_third(6, cycle);
        CHECK(c.size() == 3);
        CHECK(is_independent_set(c, cycle));
        for (std::size_t k = 1; k <= 6; ++k) {
            Graph tri;
            for (std::size_t i = 0; i < k; ++i)
                tri.insert(tri.end(), {{3 * i, 3 * i + 1}, {3 * i + 1, 3 * i + 2}, {3 * i, 3 * i + 2}});
            const auto s = independent_set_third(3 * k, tri);
            CHECK(s.size() == k);
            CHECK(is_independent_set(s, tri));
        }
        SeededRng rng(9);
        for (int i = 0; i < 200; ++i) {
            const std::size_t n = 1 + rng.uniform(20);
            Graph g;
            for (std::size_t e = 0; e < n && n > 1; ++e) {
                const std::size_t u = rng.uniform(n), v = rng.uniform(n);
                if (u != v) g.emplace_back(u, v);
            }
            const auto s = independent_set_third(n, g);
            CHECK(3 * s.size() >= n);
            CHECK(is_independent_set(s, g));
        }
    }

    TEST_CASE("disjoint span subsets") {
        const Field f5 = make_field(5);
        const std::vector<std::vector<Elem>> std3 = {
            {Elem{1}, Elem{0}, Elem{0}}, {Elem{0}, Elem{1}, Elem{0}}, {Elem{0}, Elem{0}, Elem{1}}};
        const std::vector<std::vector<Elem>> shifted = {
            {Elem{2}, Elem{1}, Elem{1}}, {Elem{1}, Elem{2}, Elem{1}}, {Elem{1}, Elem{1}, Elem{2}}};
        const auto c = disjoint_span_subset(f5, std3, shifted);
        CHECK(c.size() >= 1);
        CHECK(span_avoids(f5, std3, c, shifted));

        SeededRng rng(100);
        int runs = 0;
        while (runs < 100) {
            const std::size_t n = 1 + rng.uniform(12);
            const auto b1 = random_basis(f5, n, rng), b2 = random_basis(f5, n, rng);
            bool clash = false;
            for (const auto& u : b1)
                for (const auto& v : b2) clash = clash || proportional(f5, u, v);
            if (clash) {
                CHECK_THROWS_AS(disjoint_span_subset(f5, b1, b2), Error);
                continue;
            }
            ++runs;
            const auto chosen = disjoint_span_subset(f5, b1, b2);
            CHECK(3 * chosen.size() >= n);
            // oracle: adding any vector of B' to the chosen rows raises the rank
            Matrix sel(0, n);
            for (auto i : chosen) sel.append_row(b1[i]);
            const std::size_t base = rank(f5, sel);
            for (const auto& v : b2) {
                Matrix ext = sel;
                ext.append_row(v);
                CHECK(rank(f5, ext) == base + 1);
            }
        }
    }
}
