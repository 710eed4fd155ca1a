#include "doctest.h"

#include <set>

#include "helpers.hpp"
#include "kst/variety.hpp"

using namespace kst;

namespace {

HomPoly hom(std::uint32_t b, std::uint32_t m, const std::vector<std::pair<std::vector<std::uint32_t>, std::uint32_t>>& terms) {
    HomPoly f = zero_hom(b, m);
    const auto monos = enumerate_multiindices(b, m);
    for (const auto& [beta, c] : terms) {
        const auto it = std::find(monos.begin(), monos.end(), MultiIndex{beta});
        f.coeffs[static_cast<std::size_t>(it - monos.begin())] = Elem{c};
    }
    return f;
}

HomPoly random_nonzero(const Field& f, std::uint32_t b, std::uint32_t m, SeededRng& rng) {
    while (true) {
        auto p = random_hom(f, b, m, rng);
        if (!p.is_zero()) return p;
    }
}

}  // namespace

TEST_SUITE("variety") {
    TEST_CASE("point sets of small varieties") {
        const Field f3 = make_field(3), f5 = make_field(5);
        CHECK(fq_points(f3, VarietySpec(2, {hom(2, 1, {{{1, 0, 0}, 1}})})).size() == 4);
        for (auto q : testgen::small_orders()) {
            const Field f = make_field_of_order(q);
            const auto p = fq_points(f, VarietySpec(2, {hom(2, 1, {{{1, 0, 0}, 1}}), hom(2, 1, {{{0, 1, 0}, 1}})}));
            REQUIRE(p.size() == 1);
            CHECK(p[0] == coordinate_point(f, 2, 2));
        }
        const VarietySpec conic(2, {hom(2, 2, {{{1, 1, 0}, 1}, {{0, 0, 2}, 4}})});
        CHECK(fq_points(f5, conic).size() == 6);
        CHECK(fq_points(f5, VarietySpec(3)).size() == 156);
    }

    TEST_CASE("dimension probe") {
        for (auto q : {2ull, 3ull}) {
            const auto est = dimension_probe(make_field_of_order(q), VarietySpec(2, {hom(2, 1, {{{1, 0, 0}, 1}})}), 3);
            CHECK(est.estimate == 1);
            CHECK(est.slope > 0.75);
            CHECK(est.slope < 1.25);
        }
        const VarietySpec empty(2, {hom(2, 1, {{{1, 0, 0}, 1}}), hom(2, 1, {{{0, 1, 0}, 1}}), hom(2, 1, {{{0, 0, 1}, 1}})});
        const auto e = dimension_probe(make_field(3), empty, 2);
        CHECK(e.empty);
        CHECK(e.estimate == -1);

        const VarietySpec conic(2, {hom(2, 2, {{{1, 1, 0}, 1}, {{0, 0, 2}, 2}})});
        const auto c = dimension_probe(make_field(3), conic, 3);
        REQUIRE(c.counts.size() == 3);
        CHECK(c.counts[0].second == 4);
        CHECK(c.counts[1].second == 10);
        CHECK(c.counts[2].second == 28);
        CHECK(c.estimate == 1);
    }

    TEST_CASE("hypersurface point-count bound and intersections") {
        SeededRng rng(77);
        for (auto q : {2ull, 3ull, 4ull, 5ull, 7ull}) {
            const Field f = make_field_of_order(q);
            for (int i = 0; i < 20; ++i) {
                const std::uint32_t b = 1 + rng.uniform(3), d = 1 + rng.uniform(3);
                const HomPoly g = random_nonzero(f, b, d, rng), h = random_nonzero(f, b, 1 + rng.uniform(2), rng);
                const auto vg = fq_points(f, VarietySpec(b, {g}));
                const auto vh = fq_points(f, VarietySpec(b, {h}));
                CHECK(vg.size() <= d * projective_size(q, b - 1));
                for (const auto& p : vg) CHECK(evaluate(f, g, p).value == 0);

                std::vector<ProjPoint> both;
                std::set_intersection(vg.begin(), vg.end(), vh.begin(), vh.end(), std::back_inserter(both));
                const VarietySpec gh(b, {g, h});
                CHECK(fq_points(f, gh) == both);
                CHECK(filter_points(f, {h}, vg) == both);
                CHECK(gh.degree_ledger() == std::uint64_t{g.m} * h.m);
            }
        }
    }

    TEST_CASE("independent variety builder") {
        const Field f7 = make_field(7);
        const SeededRng rng(5);
        const auto whole = build_independent_variety(f7, 2, 3, 0, 2, rng);
        CHECK(whole.report.certified);
        CHECK(whole.points.size() == 57);
        CHECK(whole.variety->generators().empty());
        try {
            build_independent_variety(f7, 2, 3, 2, 2, rng);
            FAIL("expected a precondition error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::precondition);
        }

        const auto v = build_independent_variety(f7, 3, 3, 1, 2, rng);
        REQUIRE(v.report.certified);
        CHECK(v.variety->generators().size() == 1);
        CHECK(v.points == fq_points(f7, *v.variety));
        CHECK(2 * v.points.size() >= 49);
        // pairs of distinct points are always independent; the builder must agree
        CHECK(v.report.independence.verdict == SearchVerdict::independent);
    }

    TEST_CASE("residual varieties and the degree ledger") {
        const Field f = make_field(5);
        SeededRng rng(3);
        const BiHomPoly g = random_bihom(f, 2, 2, 2, 3, rng);
        const VarietySpec base(2);
        CHECK(residual_variety(f, base, g, {}).degree_ledger() == 1);
        CHECK(residual_variety(f, base, g, {}).generators().empty());
        const std::vector<ProjPoint> anchors = {parse_point(f, "1:0:0"), parse_point(f, "0:1:0")};
        const auto res = residual_variety(f, base, g, anchors);
        CHECK(res.degree_ledger() == 9);
        REQUIRE(res.generators().size() == 2);
        CHECK(res.generators()[0].coeffs == specialize(f, g, anchors[0]).coeffs);
        const VarietySpec cubic(2, {random_nonzero(f, 2, 3, rng)});
        CHECK(residual_variety(f, cubic, g, anchors).degree_ledger() == 27);

        // every point of the residual variety is a common neighbour of the anchors
        for (const auto& w : fq_points(f, res))
            for (const auto& l : anchors) CHECK(evaluate_bi(f, g, l, w).value == 0);
    }

    TEST_CASE("concentration edge cases") {
        const Field f = make_field(7);
        SeededRng rng(10);
        const auto Y = enumerate_projective(f, 2);
        const auto none = concentration_trial(f, Y, {}, 50, rng);
        CHECK(none.mean == doctest::Approx(57.0));
        CHECK(none.low_frequency == 0.0);

        const std::vector<ProjPoint> single = {Y[3]};
        const auto one = concentration_trial(f, single, {2}, 4000, rng);
        CHECK(one.expected_mean == doctest::Approx(1.0 / 7));
        CHECK(std::abs(one.mean - 1.0 / 7) <= 4 * one.standard_error);
        for (auto c : one.counts) CHECK(c <= 1);
    }

    TEST_CASE("concentration on P^3(F_7)") {
        const Field f = make_field(7);
        SeededRng rng(400);
        const auto Y = enumerate_projective(f, 3);
        const auto st = concentration_trial(f, Y, {2}, 500, rng);
        CHECK(st.expected_mean == doctest::Approx(400.0 / 7));
        CHECK(std::abs(st.mean - st.expected_mean) <= 3 * st.standard_error);
        CHECK(st.low_frequency <= 0.07);
    }
}
