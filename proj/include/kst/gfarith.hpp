#pragma once

// Exact arithmetic in GF(p) and GF(p^k).
//
// Elements are stored as a packed index sum_i c_i p^i over the polynomial
// basis 1, x, ..., x^(k-1); the packing is a bijection with the coordinate
// vector so the two views are interchangeable. Multiplication, inversion and
// addition are served from tables built once per field; the table-free
// reference routines (`mul_direct`, `inv_direct`) are kept public so tests can
// check that both paths agree bit for bit.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kst/error.hpp"

namespace kst {

struct Elem {
    std::uint32_t value = 0;
    friend auto operator<=>(const Elem&, const Elem&) = default;
};

/// Largest field order accepted by `make_field` unless a caller overrides it.
inline constexpr std::uint64_t kDefaultFieldCap = 1u << 20;

class Field {
   public:
    Field() = default;

    std::uint32_t characteristic() const noexcept { return p_; }
    std::uint32_t degree() const noexcept { return k_; }
    std::uint32_t order() const noexcept { return q_; }
    /// Monic modulus, low-degree coefficient first (length k+1); empty for k = 1.
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

    Elem zero() const noexcept { return Elem{0}; }
    Elem one() const noexcept { return Elem{1}; }
    /// Image of an integer in the prime subfield.
    Elem from_int(std::int64_t v) const noexcept;
    Elem from_coords(std::span<const std::uint32_t> coords) const;
    std::vector<std::uint32_t> coords(Elem a) const;
    bool contains(Elem a) const noexcept { return a.value < q_; }

    Elem add(Elem a, Elem b) const noexcept;
    Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
    Elem neg(Elem a) const noexcept;
    Elem mul(Elem a, Elem b) const noexcept;
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const noexcept;

    /// Table-free reference paths.
    Elem add_direct(Elem a, Elem b) const noexcept;
    Elem mul_direct(Elem a, Elem b) const noexcept;
    Elem inv_direct(Elem a) const;

    /// "3" for prime fields, "1,0,2" (low-degree first) for extensions.
    std::string format(Elem a) const;
    Elem parse(std::string_view text) const;

    friend bool operator==(const Field& a, const Field& b) noexcept {
        return a.p_ == b.p_ && a.k_ == b.k_ && a.modulus_ == b.modulus_;
    }

   private:
    friend Field make_field(std::uint64_t p, std::uint32_t k, std::uint64_t cap);

    struct Tables {
        std::vector<std::uint32_t> log;  // log[0] unused
        std::vector<std::uint32_t> exp;  // length 2(q-1)
        std::vector<std::uint32_t> inv;
        std::vector<std::uint32_t> neg;
        std::vector<std::uint32_t> add;  // q*q, only for small q
    };

    void build_tables();

    std::uint32_t p_ = 0;
    std::uint32_t k_ = 0;
    std::uint32_t q_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::shared_ptr<const Tables> tables_;
};

bool is_prime(std::uint64_t n) noexcept;

/// Irreducibility over GF(p) by trial division against monic polynomials of
/// degree <= deg/2. Coefficients low-degree first, leading coefficient last.
bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t p);

/// GF(p^k) with the lexicographically smallest monic irreducible modulus
/// (coefficients compared low-degree first).
Field make_field(std::uint64_t p, std::uint32_t k = 1, std::uint64_t cap = kDefaultFieldCap);

/// Field of order q; q must be a prime power.
Field make_field_of_order(std::uint64_t q, std::uint64_t cap = kDefaultFieldCap);

/// Writes q = p^k; returns false when q is not a prime power.
bool split_prime_power(std::uint64_t q, std::uint64_t& p, std::uint32_t& k) noexcept;

/// Embedding of `base` into `ext` (same characteristic, degree dividing):
/// the generator of the base polynomial basis is sent to the smallest root of
/// the base modulus in `ext`.
class FieldEmbedding {
   public:
    FieldEmbedding(const Field& base, const Field& ext);
    Elem operator()(Elem a) const { return Elem{image_[a.value]}; }

   private:
    std::vector<std::uint32_t> image_;
};

/// Checked element that carries its field; used where operands may come from
/// different fields.
class FieldElem {
   public:
    FieldElem(Field field, Elem value);
    FieldElem(Field field, std::int64_t v) : FieldElem(field, field.from_int(v)) {}

    const Field& field() const noexcept { return field_; }
    Elem value() const noexcept { return value_; }
    std::vector<std::uint32_t> coords() const { return field_.coords(value_); }

    friend bool operator==(const FieldElem& a, const FieldElem& b) noexcept {
        return a.field_ == b.field_ && a.value_ == b.value_;
    }

   private:
    Field field_;
    Elem value_;
};

enum class ArithOp { add, sub, mul, div, inv, pow };

/// Checked arithmetic: throws field_mismatch when the operands live in
/// different fields and precondition on inversion of zero. `inv` ignores `b`.
FieldElem field_arith(ArithOp op, const FieldElem& a, const FieldElem& b);
FieldElem field_pow(const FieldElem& a, std::uint64_t e);

FieldElem operator+(const FieldElem& a, const FieldElem& b);
FieldElem operator-(const FieldElem& a, const FieldElem& b);
FieldElem operator*(const FieldElem& a, const FieldElem& b);
FieldElem operator/(const FieldElem& a, const FieldElem& b);

enum class BaseKind { prime, power_of_two };

/// Smallest prime (or power of two) q with n <= q^s.
std::uint64_t pick_base(std::uint64_t n, std::uint32_t s, BaseKind kind);

/// q^e, or 0 on overflow of 64 bits.
std::uint64_t checked_pow(std::uint64_t q, std::uint32_t e) noexcept;

}  // namespace kst
