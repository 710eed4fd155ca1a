#include "kst/projgeom.hpp"

namespace kst {

std::uint32_t MultiIndex::degree() const noexcept {
    std::uint32_t d = 0;
    for (auto x : beta) d += x;
    return d;
}

ProjPoint canonicalize(const Field& f, std::vector<Elem> raw) {
    std::size_t lead = 0;
    while (lead < raw.size() && raw[lead].value == 0) ++lead;
    require(lead < raw.size(), ErrorCode::invalid_argument, "cannot canonicalize the zero vector");
    const Elem scale = f.inv(raw[lead]);
    for (std::size_t i = lead; i < raw.size(); ++i) raw[i] = f.mul(raw[i], scale);
    return ProjPoint{std::move(raw)};
}

std::uint64_t projective_size(std::uint64_t q, std::uint32_t b) noexcept {
    std::uint64_t total = 0, term = 1;
    for (std::uint32_t i = 0; i <= b; ++i) {
        if (total > UINT64_MAX - term) return 0;
        total += term;
        if (i < b) {
            if (term > UINT64_MAX / q) return 0;
            term *= q;
        }
    }
    return total;
}

void for_each_projective(const Field& f, std::uint32_t b, const std::function<void(const std::vector<Elem>&)>& visit) {
    const std::uint32_t q = f.order();
    std::vector<Elem> x(b + 1);
    // Lexicographic order puts leading position b first ([0:...:0:1]) and
    // position 0 last; the tail behind the leading 1 is an odometer.
    for (std::uint32_t lead = b + 1; lead-- > 0;) {
        for (std::uint32_t i = 0; i <= b; ++i) x[i] = Elem{0};
        x[lead] = Elem{1};
        while (true) {
            visit(x);
            std::uint32_t pos = b;
            while (pos > lead) {
                if (++x[pos].value < q) break;
                x[pos].value = 0;
                --pos;
            }
            if (pos == lead) break;
        }
    }
}

std::vector<ProjPoint> enumerate_projective(const Field& f, std::uint32_t b, std::uint64_t cap) {
    const std::uint64_t n = projective_size(f.order(), b);
    require(n != 0 && n <= cap, ErrorCode::cap_exceeded,
            "|P^" + std::to_string(b) + "(F_" + std::to_string(f.order()) + ")| exceeds point cap");
    std::vector<ProjPoint> out;
    out.reserve(n);
    for_each_projective(f, b, [&](const std::vector<Elem>& x) { out.push_back(ProjPoint{x}); });
    return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(r);
}

namespace {

void fill_multiindices(std::vector<std::uint32_t>& cur, std::size_t pos, std::uint32_t remaining,
                       std::vector<MultiIndex>& out) {
    if (pos + 1 == cur.size()) {
        cur[pos] = remaining;
        out.push_back(MultiIndex{cur});
        return;
    }
    for (std::uint32_t v = remaining + 1; v-- > 0;) {
        cur[pos] = v;
        fill_multiindices(cur, pos + 1, remaining - v, out);
    }
}

}  // namespace

std::vector<MultiIndex> enumerate_multiindices(std::uint32_t b, std::uint32_t m, std::uint64_t cap) {
    const std::uint64_t n = binomial(b + m, m);
    require(n <= cap, ErrorCode::cap_exceeded, "C(b+m, m) exceeds multiindex cap");
    std::vector<MultiIndex> out;
    out.reserve(n);
    std::vector<std::uint32_t> cur(b + 1, 0);
    fill_multiindices(cur, 0, m, out);
    return out;
}

Elem monomial_eval(const Field& f, const ProjPoint& p, const MultiIndex& beta) {
    require(p.coords.size() == beta.beta.size(), ErrorCode::invalid_argument, "monomial_eval: dimension mismatch");
    Elem acc = f.one();
    for (std::size_t i = 0; i < beta.beta.size(); ++i) acc = f.mul(acc, f.pow(p.coords[i], beta.beta[i]));
    return acc;
}

std::vector<Elem> monomial_row(const Field& f, const std::vector<Elem>& point, const std::vector<MultiIndex>& monomials) {
    std::vector<Elem> row(monomials.size());
    if (monomials.empty()) return row;
    const std::size_t n = point.size();
    const std::uint32_t m = monomials.front().degree();
    // powers[i * (m+1) + e] = x_i^e
    std::vector<Elem> powers(n * (m + 1));
    for (std::size_t i = 0; i < n; ++i) {
        powers[i * (m + 1)] = f.one();
        for (std::uint32_t e = 1; e <= m; ++e) powers[i * (m + 1) + e] = f.mul(powers[i * (m + 1) + e - 1], point[i]);
    }
    for (std::size_t j = 0; j < monomials.size(); ++j) {
        const auto& beta = monomials[j].beta;
        Elem acc = f.one();
        for (std::size_t i = 0; i < n && acc.value != 0; ++i)
            if (beta[i]) acc = f.mul(acc, powers[i * (m + 1) + beta[i]]);
        row[j] = acc;
    }
    return row;
}

std::vector<Elem> linear_form_of(const ProjPoint& p) { return p.coords; }

std::string format_point(const Field& f, const ProjPoint& p) {
    std::string out;
    for (std::size_t i = 0; i < p.coords.size(); ++i) {
        if (i) out += ':';
        out += f.format(p.coords[i]);
    }
    return out;
}

ProjPoint parse_point(const Field& f, std::string_view text) {
    std::vector<Elem> raw;
    std::size_t pos = 0;
    while (true) {
        const std::size_t end = std::min(text.find(':', pos), text.size());
        raw.push_back(f.parse(text.substr(pos, end - pos)));
        if (end == text.size()) break;
        pos = end + 1;
    }
    require(raw.size() >= 2, ErrorCode::invalid_argument, "point '" + std::string(text) + "' needs at least 2 coordinates");
    return canonicalize(f, std::move(raw));
}

ProjPoint coordinate_point(const Field& f, std::uint32_t b, std::uint32_t i) {
    require(i <= b, ErrorCode::invalid_argument, "coordinate index out of range");
    std::vector<Elem> x(b + 1, f.zero());
    x[i] = f.one();
    return ProjPoint{std::move(x)};
}

}  // namespace kst
