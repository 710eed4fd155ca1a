#pragma once

// Projective points over F_q, degree-m multiindices, and the point/linear
// form correspondence. Every point handed around the library is canonical:
// its first nonzero coordinate is 1.

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "kst/gfarith.hpp"

namespace kst {

inline constexpr std::uint64_t kDefaultPointCap = 1u << 22;

struct ProjPoint {
    std::vector<Elem> coords;

    std::size_t dim() const noexcept { return coords.size() - 1; }
    friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
};

struct MultiIndex {
    std::vector<std::uint32_t> beta;

    std::uint32_t degree() const noexcept;
    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
};

ProjPoint canonicalize(const Field& f, std::vector<Elem> raw);

/// (q^(b+1) - 1) / (q - 1), or 0 on overflow.
std::uint64_t projective_size(std::uint64_t q, std::uint32_t b) noexcept;

/// Calls `visit` for every canonical point of P^b(F_q) in lexicographic order
/// of the coordinate vectors. The span passed to `visit` is only valid for the
/// duration of the call.
void for_each_projective(const Field& f, std::uint32_t b, const std::function<void(const std::vector<Elem>&)>& visit);

std::vector<ProjPoint> enumerate_projective(const Field& f, std::uint32_t b, std::uint64_t cap = kDefaultPointCap);

/// C(n, k) with saturation at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept;

/// All exponent vectors of length b+1 summing to m, graded-lex with beta_0
/// descending first. This order indexes every polynomial coefficient vector.
std::vector<MultiIndex> enumerate_multiindices(std::uint32_t b, std::uint32_t m, std::uint64_t cap = 1u << 20);

Elem monomial_eval(const Field& f, const ProjPoint& p, const MultiIndex& beta);

/// Values p^beta for every beta in `monomials`, sharing the power table.
std::vector<Elem> monomial_row(const Field& f, const std::vector<Elem>& point, const std::vector<MultiIndex>& monomials);

/// Coefficients of the linear form <x, p> on the canonical representative.
std::vector<Elem> linear_form_of(const ProjPoint& p);

/// "1:2:0"; extension-field coordinates use their comma form, "1,0:0,1".
std::string format_point(const Field& f, const ProjPoint& p);
ProjPoint parse_point(const Field& f, std::string_view text);

/// Coordinate point e_i of P^b.
ProjPoint coordinate_point(const Field& f, std::uint32_t b, std::uint32_t i);

}  // namespace kst
