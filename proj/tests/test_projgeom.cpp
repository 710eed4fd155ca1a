#include "doctest.h"

#include <set>

#include "helpers.hpp"
#include "kst/projgeom.hpp"

using namespace kst;

namespace {

ProjPoint pt(const Field& f, const char* text) { return parse_point(f, text); }

std::vector<Elem> elems(std::initializer_list<std::uint32_t> v) {
    std::vector<Elem> out;
    for (auto x : v) out.push_back(Elem{x});
    return out;
}

}  // namespace

TEST_SUITE("projgeom") {
    TEST_CASE("canonicalize examples") {
        CHECK(canonicalize(make_field(5), elems({2, 4})) == pt(make_field(5), "1:2"));
        CHECK(canonicalize(make_field(7), elems({0, 3, 6})) == pt(make_field(7), "0:1:2"));
        CHECK(canonicalize(make_field(3), elems({1, 0, 0})).coords == elems({1, 0, 0}));
        CHECK_THROWS_AS(canonicalize(make_field(3), elems({0, 0})), Error);
    }

    TEST_CASE("canonical form is invariant under rescaling") {
        SeededRng rng(21);
        for (auto q : testgen::small_orders()) {
            const Field f = make_field_of_order(q);
            for (int i = 0; i < 200; ++i) {
                const std::uint32_t b = 1 + static_cast<std::uint32_t>(rng.uniform(3));
                const ProjPoint p = testgen::point(f, b, rng);
                const Elem lambda = testgen::nonzero(f, rng);
                auto scaled = p.coords;
                for (auto& e : scaled) e = f.mul(lambda, e);
                CHECK(canonicalize(f, scaled) == p);
            }
        }
    }

    TEST_CASE("enumeration sizes and order") {
        CHECK(enumerate_projective(make_field(3), 2).size() == 13);
        CHECK(enumerate_projective(make_field(7), 3).size() == 400);
        const Field f2 = make_field(2);
        const auto line = enumerate_projective(f2, 1);
        REQUIRE(line.size() == 3);
        CHECK(line[0] == pt(f2, "0:1"));
        CHECK(line[1] == pt(f2, "1:0"));
        CHECK(line[2] == pt(f2, "1:1"));
        for (auto q : testgen::small_orders()) {
            const Field f = make_field_of_order(q);
            for (std::uint32_t b = 1; b <= 2; ++b) {
                const auto pts = enumerate_projective(f, b);
                CHECK(pts.size() == projective_size(q, b));
                CHECK(std::is_sorted(pts.begin(), pts.end()));
                CHECK(std::set<ProjPoint>(pts.begin(), pts.end()).size() == pts.size());
                for (const auto& p : pts) CHECK(canonicalize(f, p.coords) == p);
            }
        }
        CHECK_THROWS_AS(enumerate_projective(make_field(7), 3, 100), Error);
    }

    TEST_CASE("multiindex examples") {
        CHECK(enumerate_multiindices(2, 2).size() == 6);
        CHECK(enumerate_multiindices(4, 3).size() == 35);
        const auto line = enumerate_multiindices(1, 3);
        REQUIRE(line.size() == 4);
        CHECK(line[0].beta == std::vector<std::uint32_t>{3, 0});
        CHECK(line[1].beta == std::vector<std::uint32_t>{2, 1});
        CHECK(line[2].beta == std::vector<std::uint32_t>{1, 2});
        CHECK(line[3].beta == std::vector<std::uint32_t>{0, 3});
        for (std::uint32_t b = 0; b <= 4; ++b)
            for (std::uint32_t m = 0; m <= 4; ++m) {
                const auto all = enumerate_multiindices(b, m);
                CHECK(all.size() == binomial(b + m, m));
                for (const auto& beta : all) CHECK(beta.degree() == m);
            }
    }

    TEST_CASE("binomial against Pascal's rule") {
        std::vector<std::vector<std::uint64_t>> pascal(40);
        for (std::size_t n = 0; n < 40; ++n) {
            pascal[n].assign(n + 1, 1);
            for (std::size_t k = 1; k < n; ++k) pascal[n][k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
            for (std::size_t k = 0; k <= n; ++k) CHECK(binomial(n, k) == pascal[n][k]);
        }
        CHECK(binomial(3, 5) == 0);
    }

    TEST_CASE("monomial evaluation") {
        const Field f5 = make_field(5), f2 = make_field(2);
        CHECK(monomial_eval(f5, pt(f5, "1:2"), MultiIndex{{1, 2}}) == Elem{4});
        CHECK(monomial_eval(f5, pt(f5, "1:0:0"), MultiIndex{{1, 1, 0}}) == Elem{0});
        CHECK(monomial_eval(f5, pt(f5, "1:0:0"), MultiIndex{{0, 0, 2}}) == Elem{0});
        CHECK(monomial_eval(f2, pt(f2, "1:1:1"), MultiIndex{{0, 1, 1}}) == Elem{1});

        SeededRng rng(8);
        const Field f = make_field(3, 2);
        const auto monos = enumerate_multiindices(2, 3);
        for (int i = 0; i < 50; ++i) {
            const ProjPoint p = testgen::point(f, 2, rng);
            const auto row = monomial_row(f, p.coords, monos);
            for (std::size_t j = 0; j < monos.size(); ++j) CHECK(row[j] == monomial_eval(f, p, monos[j]));
        }
    }

    TEST_CASE("linear forms") {
        const Field f5 = make_field(5), f3 = make_field(3);
        CHECK(linear_form_of(pt(f5, "1:2")) == elems({1, 2}));
        CHECK(linear_form_of(pt(f5, "0:1:0")) == elems({0, 1, 0}));
        CHECK(linear_form_of(pt(f3, "1:1")) == elems({1, 1}));
    }

    TEST_CASE("point text round-trip") {
        const Field f4 = make_field(2, 2);
        const ProjPoint p = pt(f4, "1,0:0,1");
        CHECK(p.coords[0] == f4.one());
        CHECK(format_point(f4, p) == "1,0:0,1");
        SeededRng rng(4);
        for (auto q : testgen::small_orders()) {
            const Field f = make_field_of_order(q);
            for (int i = 0; i < 30; ++i) {
                const ProjPoint x = testgen::point(f, 3, rng);
                CHECK(parse_point(f, format_point(f, x)) == x);
            }
        }
        CHECK(coordinate_point(make_field(5), 2, 1) == pt(make_field(5), "0:1:0"));
    }
}
