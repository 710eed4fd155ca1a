#include "doctest.h"

#include <map>
#include <set>

#include <boost/math/distributions/chi_squared.hpp>

#include "helpers.hpp"
#include "kst/polyrand.hpp"

using namespace kst;

namespace {

HomPoly hom(std::uint32_t b, std::uint32_t m, const std::vector<std::pair<std::vector<std::uint32_t>, std::uint32_t>>& terms) {
    HomPoly f = zero_hom(b, m);
    const auto monos = enumerate_multiindices(b, m);
    for (const auto& [beta, c] : terms) {
        const auto it = std::find(monos.begin(), monos.end(), MultiIndex{beta});
        REQUIRE(it != monos.end());
        f.coeffs[static_cast<std::size_t>(it - monos.begin())] = Elem{c};
    }
    return f;
}

void set_bi(BiHomPoly& g, const std::vector<std::uint32_t>& x, const std::vector<std::uint32_t>& y, std::uint32_t c) {
    const auto xs = enumerate_multiindices(g.a, g.m), ys = enumerate_multiindices(g.b, g.mp);
    const auto r = std::find(xs.begin(), xs.end(), MultiIndex{x}) - xs.begin();
    const auto col = std::find(ys.begin(), ys.end(), MultiIndex{y}) - ys.begin();
    g.coeffs[static_cast<std::size_t>(r) * g.cols + static_cast<std::size_t>(col)] = Elem{c};
}

// Direct sum over both multiindex lists.
Elem evaluate_bi_oracle(const Field& f, const BiHomPoly& g, const ProjPoint& v, const ProjPoint& w) {
    const auto xs = enumerate_multiindices(g.a, g.m), ys = enumerate_multiindices(g.b, g.mp);
    Elem acc{0};
    for (std::size_t r = 0; r < xs.size(); ++r)
        for (std::size_t c = 0; c < ys.size(); ++c)
            acc = f.add(acc, f.mul(g.coeff(r, c), f.mul(monomial_eval(f, v, xs[r]), monomial_eval(f, w, ys[c]))));
    return acc;
}

}  // namespace

TEST_SUITE("polyrand") {
    TEST_CASE("splitmix64 reference value") {
        CHECK(splitmix64(0) == 0xE220A8397B1DCDAFull);
        CHECK(mix_seed(1, 2) != mix_seed(2, 1));
        CHECK(mix_seed(7, "variety") != mix_seed(7, "h"));
    }

    TEST_CASE("generator is seed-deterministic") {
        const Field f = make_field(7);
        SeededRng a(99), b(99), c(100);
        const auto pa = random_bihom(f, 2, 2, 2, 1, a);
        const auto pb = random_bihom(f, 2, 2, 2, 1, b);
        const auto pc = random_bihom(f, 2, 2, 2, 1, c);
        CHECK(pa.coeffs == pb.coeffs);
        CHECK(pa.coeffs != pc.coeffs);
        CHECK(pa.rows == 6);
        CHECK(pa.cols == 3);
        SeededRng u(5);
        for (int i = 0; i < 1000; ++i) CHECK(u.uniform(13) < 13);
    }

    TEST_CASE("F2 linear forms come out uniformly") {
        const Field f = make_field(2);
        SeededRng rng(1);
        const int draws = 10000;
        std::map<std::vector<Elem>, int> freq;
        for (int i = 0; i < draws; ++i) ++freq[random_hom(f, 1, 1, rng).coeffs];
        REQUIRE(freq.size() == 4);
        const double sigma = std::sqrt(draws * 0.25 * 0.75);
        for (const auto& [k, n] : freq) CHECK(std::abs(n - draws / 4.0) <= 3 * sigma);
    }

    TEST_CASE("F2 bilinear forms pass a chi-square test") {
        const Field f = make_field(2);
        SeededRng rng(2);
        const int draws = 10000;
        std::map<std::vector<Elem>, int> freq;
        for (int i = 0; i < draws; ++i) ++freq[random_bihom(f, 1, 1, 1, 1, rng).coeffs];
        REQUIRE(freq.size() == 16);
        double stat = 0;
        for (const auto& [k, n] : freq) stat += (n - draws / 16.0) * (n - draws / 16.0) / (draws / 16.0);
        const boost::math::chi_squared dist(15);
        CHECK(stat < boost::math::quantile(boost::math::complement(dist, 1e-6)));
    }

    TEST_CASE("evaluation examples") {
        const Field f2 = make_field(2), f5 = make_field(5);
        const HomPoly f = hom(2, 2, {{{2, 0, 0}, 1}, {{0, 1, 1}, 1}});
        CHECK(evaluate(f2, f, parse_point(f2, "1:1:1")) == Elem{0});
        CHECK(evaluate(f2, f, parse_point(f2, "1:0:1")) == Elem{1});

        BiHomPoly g = zero_bihom(1, 1, 1, 1);
        set_bi(g, {1, 0}, {1, 0}, 1);
        set_bi(g, {0, 1}, {0, 1}, 1);
        CHECK(evaluate_bi(f5, g, parse_point(f5, "1:2"), parse_point(f5, "1:1")) == Elem{3});
        const HomPoly spec = specialize(f5, g, parse_point(f5, "1:2"));
        CHECK(spec.coeffs == hom(1, 1, {{{1, 0}, 1}, {{0, 1}, 2}}).coeffs);
        CHECK(specialize(f5, zero_bihom(1, 2, 1, 2), parse_point(f5, "1:3")).is_zero());

        const Field f3 = make_field(3);
        BiHomPoly h = zero_bihom(1, 1, 2, 2);
        set_bi(h, {1, 1}, {2, 0}, 1);
        CHECK(specialize(f3, h, parse_point(f3, "1:1")).coeffs == hom(1, 2, {{{2, 0}, 1}}).coeffs);
    }

    TEST_CASE("specialize agrees with evaluate_bi and the direct sum") {
        SeededRng rng(31);
        for (auto q : testgen::small_orders()) {
            const Field f = make_field_of_order(q);
            bool ok = true;
            for (int i = 0; i < 1000 && ok; ++i) {
                const std::uint32_t a = 1 + rng.uniform(2), b = 1 + rng.uniform(2);
                const std::uint32_t m = 1 + rng.uniform(2), mp = 1 + rng.uniform(2);
                const BiHomPoly g = random_bihom(f, a, b, m, mp, rng);
                const ProjPoint v = testgen::point(f, a, rng), w = testgen::point(f, b, rng);
                const Elem direct = evaluate_bi(f, g, v, w);
                ok = direct == evaluate(f, specialize(f, g, v), w);
                if (i % 10 == 0) ok = ok && direct == evaluate_bi_oracle(f, g, v, w);
            }
            CHECK(ok);
        }
    }

    TEST_CASE("PolyEvaluator matches evaluate") {
        SeededRng rng(12);
        for (auto q : testgen::small_orders()) {
            const Field f = make_field_of_order(q);
            for (std::uint32_t m = 0; m <= 3; ++m) {
                const HomPoly poly = random_hom(f, 2, m, rng);
                const PolyEvaluator ev(f, poly);
                for (int i = 0; i < 30; ++i) {
                    const ProjPoint p = testgen::point(f, 2, rng);
                    CHECK(ev(p.coords) == evaluate(f, poly, p));
                }
            }
        }
    }

    TEST_CASE("random coefficients reach every field element") {
        for (auto q : testgen::small_orders()) {
            const Field f = make_field_of_order(q);
            SeededRng rng(q);
            std::set<std::uint32_t> seen;
            for (int i = 0; i < 100 && seen.size() < q; ++i)
                for (auto c : random_hom(f, 2, 2, rng).coeffs) seen.insert(c.value);
            CHECK(seen.size() == q);
        }
    }
}
