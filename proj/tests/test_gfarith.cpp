#include "doctest.h"

#include "helpers.hpp"
#include "kst/gfarith.hpp"

using namespace kst;

namespace {

// First monic polynomial of degree 2 or 3 over GF(p) without a root, scanning
// coefficient vectors low-degree first. Root-freeness is irreducibility here.
std::vector<std::uint32_t> smallest_rootless(std::uint32_t p, std::uint32_t k) {
    std::vector<std::uint32_t> c(k, 0);
    while (true) {
        bool root = false;
        for (std::uint32_t x = 0; x < p && !root; ++x) {
            std::uint64_t v = 1;  // leading coefficient
            for (std::uint32_t i = k; i-- > 0;) v = (v * x + c[i]) % p;
            root = v == 0;
        }
        if (!root) {
            auto out = c;
            out.push_back(1);
            return out;
        }
        // odometer with c[0] as the most significant digit
        std::size_t i = k;
        while (i-- > 0) {
            if (++c[i] < p) break;
            c[i] = 0;
        }
    }
}

}  // namespace

TEST_SUITE("gfarith") {
    TEST_CASE("prime field basics") {
        const Field f = make_field(5, 1);
        CHECK(f.characteristic() == 5);
        CHECK(f.degree() == 1);
        CHECK(f.order() == 5);
        CHECK(f.mul(Elem{3}, Elem{4}) == Elem{2});
        CHECK(make_field(7).inv(Elem{3}) == Elem{5});
        CHECK(f.from_int(-1) == Elem{4});
    }

    TEST_CASE("extension moduli are the smallest irreducibles") {
        CHECK(make_field(2, 2).modulus() == std::vector<std::uint32_t>{1, 1, 1});
        for (auto [p, k] : {std::pair{3u, 2u}, {2u, 3u}, {5u, 2u}, {3u, 3u}, {7u, 2u}})
            CHECK(make_field(p, k).modulus() == smallest_rootless(p, k));
        CHECK(make_field(3, 2).modulus() == std::vector<std::uint32_t>{1, 0, 1});
        CHECK(make_field(2, 3).modulus() == std::vector<std::uint32_t>{1, 0, 1, 1});
    }

    TEST_CASE("GF(4): x * (x+1) = 1") {
        const Field f = make_field(2, 2);
        const std::vector<std::uint32_t> x = {0, 1}, x1 = {1, 1};
        CHECK(f.mul(f.from_coords(x), f.from_coords(x1)) == f.one());
    }

    TEST_CASE("irreducibility test") {
        const std::vector<std::uint32_t> x2p1 = {1, 0, 1};
        CHECK(is_irreducible(x2p1, 3));
        CHECK_FALSE(is_irreducible(x2p1, 5));  // 2^2 + 1 = 0
        CHECK_FALSE(is_irreducible(x2p1, 2));  // (x+1)^2
        const std::vector<std::uint32_t> quartic = {1, 1, 0, 0, 1};  // x^4 + x + 1 over GF(2)
        CHECK(is_irreducible(quartic, 2));
        const std::vector<std::uint32_t> square = {1, 0, 1, 0, 1};  // (x^2+x+1)^2
        CHECK_FALSE(is_irreducible(square, 2));
    }

    TEST_CASE("axioms, inverses and Frobenius for every field of order <= 64") {
        for (std::uint64_t q = 2; q <= 64; ++q) {
            std::uint64_t p = 0;
            std::uint32_t k = 0;
            if (!split_prime_power(q, p, k)) continue;
            CAPTURE(q);
            const Field f = make_field(p, k);
            REQUIRE(f.order() == q);
            REQUIRE(is_irreducible(f.modulus().empty() ? std::vector<std::uint32_t>{0, 1} : f.modulus(),
                                   static_cast<std::uint32_t>(p)));
            bool ok = true;
            for (std::uint32_t a = 0; a < q; ++a) {
                const Elem x{a};
                ok = ok && f.pow(x, q) == x;
                if (a) ok = ok && f.mul(x, f.inv(x)) == f.one() && f.inv(x) == f.inv_direct(x);
                ok = ok && f.sub(f.add(x, Elem{1}), Elem{1}) == x;
                for (std::uint32_t b = 0; b < q; ++b) {
                    const Elem y{b};
                    ok = ok && f.mul(x, y) == f.mul_direct(x, y) && f.add(x, y) == f.add_direct(x, y);
                    for (std::uint32_t c = 0; c < q && ok; c += 3) {
                        const Elem z{c};
                        ok = ok && f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z));
                        ok = ok && f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z));
                    }
                }
            }
            CHECK(ok);
        }
    }

    TEST_CASE("inverse of zero and foreign operands are rejected") {
        const Field f = make_field(7);
        CHECK_THROWS_AS(f.inv(f.zero()), Error);
        const FieldElem a(make_field(5), 2), b(make_field(7), 2);
        try {
            field_arith(ArithOp::add, a, b);
            FAIL("expected a field mismatch");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::field_mismatch);
        }
        try {
            field_arith(ArithOp::inv, FieldElem(make_field(5), 0), a);
            FAIL("expected a precondition error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::precondition);
        }
        CHECK((a * a).value() == Elem{4});
        CHECK(field_pow(a, 4).value() == Elem{1});
        CHECK(field_arith(ArithOp::pow, a, FieldElem(make_field(5), 3)).value() == Elem{3});
    }

    TEST_CASE("format and parse round-trip") {
        for (auto q : testgen::small_orders()) {
            const Field f = make_field_of_order(q);
            for (std::uint32_t a = 0; a < q; ++a) CHECK(f.parse(f.format(Elem{a})) == Elem{a});
        }
        CHECK(make_field(3, 2).format(make_field(3, 2).from_coords(std::vector<std::uint32_t>{1, 2})) == "1,2");
        CHECK_THROWS_AS(make_field(5).parse("7"), Error);
    }

    TEST_CASE("pick_base examples") {
        CHECK(pick_base(100, 2, BaseKind::prime) == 11);
        CHECK(pick_base(100, 2, BaseKind::power_of_two) == 16);
        CHECK(pick_base(2, 3, BaseKind::prime) == 2);
    }

    TEST_CASE("pick_base stays within the Bertrand window and is minimal") {
        SeededRng rng(17);
        std::vector<std::uint64_t> ns;
        for (std::uint64_t n = 2; n <= 1000; ++n) ns.push_back(n);
        for (int i = 0; i < 3000; ++i) ns.push_back(2 + rng.uniform(1'000'000 - 1));
        ns.push_back(1'000'000);
        for (std::uint32_t s = 2; s <= 5; ++s) {
            bool ok = true;
            for (auto n : ns) {
                const std::uint64_t q = pick_base(n, s, BaseKind::prime);
                const std::uint64_t qs = checked_pow(q, s);
                // q^s < 2n 2^(s-1), q^s >= n, and no smaller prime reaches n
                ok = ok && is_prime(q) && qs >= n && qs < 2 * n * (1ull << (s - 1));
                for (std::uint64_t p = q - 1; p >= 2 && ok; --p)
                    if (is_prime(p)) {
                        ok = checked_pow(p, s) < n;
                        break;
                    }
            }
            CHECK(ok);
        }
    }

    TEST_CASE("prime powers and overflow") {
        std::uint64_t p = 0;
        std::uint32_t k = 0;
        CHECK(split_prime_power(49, p, k));
        CHECK((p == 7 && k == 2));
        CHECK_FALSE(split_prime_power(12, p, k));
        CHECK(checked_pow(2, 63) == (1ull << 63));
        CHECK(checked_pow(2, 64) == 0);
        CHECK_THROWS_AS(make_field(6), Error);
        CHECK_THROWS_AS(make_field_of_order(12), Error);
    }

    TEST_CASE("subfield embeddings are ring homomorphisms") {
        for (auto [p, k, e] : {std::tuple{2u, 2u, 2u}, {3u, 1u, 2u}, {2u, 1u, 3u}, {3u, 2u, 2u}}) {
            const Field base = make_field(p, k), ext = make_field(p, k * e);
            const FieldEmbedding emb(base, ext);
            bool ok = emb(base.one()) == ext.one() && emb(base.zero()) == ext.zero();
            for (std::uint32_t a = 0; a < base.order(); ++a)
                for (std::uint32_t b = 0; b < base.order(); ++b) {
                    ok = ok && emb(base.mul(Elem{a}, Elem{b})) == ext.mul(emb(Elem{a}), emb(Elem{b}));
                    ok = ok && emb(base.add(Elem{a}, Elem{b})) == ext.add(emb(Elem{a}), emb(Elem{b}));
                }
            CHECK(ok);
        }
    }
}
