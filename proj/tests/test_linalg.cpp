#include "doctest.h"

#include "helpers.hpp"
#include "kst/linalg.hpp"

using namespace kst;

namespace {

std::vector<Elem> apply(const Field& f, const Matrix& m, const std::vector<Elem>& x) {
    std::vector<Elem> out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r] = f.add(out[r], f.mul(m(r, c), x[c]));
    return out;
}

bool all_zero(const std::vector<Elem>& v) {
    return std::all_of(v.begin(), v.end(), [](Elem e) { return e.value == 0; });
}

}  // namespace

TEST_SUITE("linalg") {
    TEST_CASE("kernel vectors are annihilated and rank-nullity holds") {
        SeededRng rng(3);
        for (auto q : testgen::small_orders()) {
            const Field f = make_field_of_order(q);
            for (int trial = 0; trial < 40; ++trial) {
                const std::size_t rows = 1 + rng.uniform(6), cols = 1 + rng.uniform(7);
                const Matrix m = testgen::matrix(f, rows, cols, rng);
                const auto ker = right_kernel(f, m);
                CHECK(rank(f, m) + ker.size() == cols);
                for (const auto& v : ker) CHECK(all_zero(apply(f, m, v)));
                Matrix kb(0, cols);
                for (const auto& v : ker) kb.append_row(v);
                CHECK(rank(f, kb) == ker.size());

                const auto left = left_kernel(f, m);
                CHECK(rank(f, m) + left.size() == rows);
                for (const auto& c : left) CHECK(all_zero(apply(f, m.transposed(), c)));
            }
        }
    }

    TEST_CASE("row reduction gives reduced echelon form") {
        const Field f = make_field(5);
        SeededRng rng(11);
        for (int trial = 0; trial < 50; ++trial) {
            Matrix m = testgen::matrix(f, 4, 5, rng);
            const std::size_t r = rank(f, m);
            const auto pivots = row_reduce(f, m);
            REQUIRE(pivots.size() == r);
            for (std::size_t i = 0; i < pivots.size(); ++i) {
                if (i) CHECK(pivots[i] > pivots[i - 1]);
                for (std::size_t j = 0; j < m.rows(); ++j) CHECK(m(j, pivots[i]) == (i == j ? f.one() : f.zero()));
            }
            for (std::size_t j = r; j < m.rows(); ++j) CHECK(all_zero(m.row(j)));
        }
    }

    TEST_CASE("square solve recovers the coefficients") {
        SeededRng rng(5);
        for (auto q : {3ull, 4ull, 7ull, 9ull}) {
            const Field f = make_field_of_order(q);
            int solved = 0;
            for (int trial = 0; trial < 60; ++trial) {
                const Matrix basis = testgen::matrix(f, 4, 4, rng);
                const auto x = testgen::raw_vector(f, 4, rng);
                if (rank(f, basis) < 4) {
                    CHECK_THROWS_AS(solve_square(f, basis, x), Error);
                    continue;
                }
                CHECK(solve_square(f, basis, apply(f, basis, x)) == x);
                ++solved;
            }
            CHECK(solved > 0);
        }
    }

    TEST_CASE("small examples") {
        const Field f = make_field(7);
        Matrix m(2, 3);
        m(0, 0) = Elem{1};
        m(0, 1) = Elem{2};
        m(1, 0) = Elem{2};
        m(1, 1) = Elem{4};
        m(1, 2) = Elem{1};
        CHECK(rank(f, m) == 2);
        const auto ker = right_kernel(f, m);
        REQUIRE(ker.size() == 1);
        CHECK(ker[0] == std::vector<Elem>{Elem{5}, Elem{1}, Elem{0}});
        CHECK(rank(f, Matrix(3, 3)) == 0);
        CHECK(right_kernel(f, Matrix(2, 3)).size() == 3);
    }
}
