#include "kst/polyrand.hpp"

namespace kst {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept { return splitmix64(a ^ splitmix64(b + 0x632be59bd9b4e019ULL)); }

std::uint64_t mix_seed(std::uint64_t a, std::string_view tag) noexcept {
    // FNV-1a over the tag, then the integer mix.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return mix_seed(a, h);
}

std::uint64_t SeededRng::uniform(std::uint64_t n) {
    require(n > 0, ErrorCode::invalid_argument, "uniform(0)");
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
}

bool HomPoly::is_zero() const noexcept {
    for (auto c : coeffs)
        if (c.value) return false;
    return true;
}

HomPoly zero_hom(std::uint32_t b, std::uint32_t m) {
    return HomPoly{b, m, std::vector<Elem>(binomial(b + m, m), Elem{0})};
}

BiHomPoly zero_bihom(std::uint32_t a, std::uint32_t b, std::uint32_t m, std::uint32_t mp) {
    BiHomPoly g;
    g.a = a;
    g.b = b;
    g.m = m;
    g.mp = mp;
    g.rows = binomial(a + m, m);
    g.cols = binomial(b + mp, mp);
    g.coeffs.assign(g.rows * g.cols, Elem{0});
    return g;
}

HomPoly random_hom(const Field& f, std::uint32_t b, std::uint32_t m, SeededRng& rng) {
    HomPoly poly = zero_hom(b, m);
    for (auto& c : poly.coeffs) c = rng.element(f);
    return poly;
}

BiHomPoly random_bihom(const Field& f, std::uint32_t a, std::uint32_t b, std::uint32_t m, std::uint32_t mp,
                       SeededRng& rng) {
    BiHomPoly g = zero_bihom(a, b, m, mp);
    for (auto& c : g.coeffs) c = rng.element(f);
    return g;
}

Elem evaluate(const Field& f, const HomPoly& poly, const ProjPoint& p) {
    require(p.coords.size() == poly.b + 1, ErrorCode::invalid_argument, "evaluate: dimension mismatch");
    const auto monomials = enumerate_multiindices(poly.b, poly.m);
    const auto row = monomial_row(f, p.coords, monomials);
    Elem acc = f.zero();
    for (std::size_t i = 0; i < row.size(); ++i) acc = f.add(acc, f.mul(poly.coeffs[i], row[i]));
    return acc;
}

Elem evaluate_bi(const Field& f, const BiHomPoly& g, const ProjPoint& v, const ProjPoint& w) {
    require(v.coords.size() == g.a + 1 && w.coords.size() == g.b + 1, ErrorCode::invalid_argument,
            "evaluate_bi: dimension mismatch");
    const auto xs = monomial_row(f, v.coords, enumerate_multiindices(g.a, g.m));
    const auto ys = monomial_row(f, w.coords, enumerate_multiindices(g.b, g.mp));
    Elem acc = f.zero();
    for (std::size_t r = 0; r < g.rows; ++r) {
        if (!xs[r].value) continue;
        Elem inner = f.zero();
        for (std::size_t c = 0; c < g.cols; ++c) inner = f.add(inner, f.mul(g.coeff(r, c), ys[c]));
        acc = f.add(acc, f.mul(xs[r], inner));
    }
    return acc;
}

HomPoly specialize(const Field& f, const BiHomPoly& g, const ProjPoint& v) {
    require(v.coords.size() == g.a + 1, ErrorCode::invalid_argument, "specialize: anchor not in P^a");
    const auto xs = monomial_row(f, v.coords, enumerate_multiindices(g.a, g.m));
    HomPoly out = zero_hom(g.b, g.mp);
    for (std::size_t r = 0; r < g.rows; ++r) {
        if (!xs[r].value) continue;
        for (std::size_t c = 0; c < g.cols; ++c) out.coeffs[c] = f.add(out.coeffs[c], f.mul(xs[r], g.coeff(r, c)));
    }
    return out;
}

PolyEvaluator::PolyEvaluator(const Field& f, const HomPoly& poly)
    : field_(&f), monomials_(enumerate_multiindices(poly.b, poly.m)), coeffs_(poly.coeffs), m_(poly.m) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i].value) support_.push_back(i);
}

Elem PolyEvaluator::operator()(const std::vector<Elem>& point) const {
    const Field& f = *field_;
    const std::size_t n = point.size();
    const std::uint32_t stride = m_ + 1;
    // Small fixed buffer covers desk-scale shapes without allocation.
    Elem stack_powers[256];
    std::vector<Elem> heap_powers;
    Elem* powers = stack_powers;
    if (n * stride > 256) {
        heap_powers.resize(n * stride);
        powers = heap_powers.data();
    }
    for (std::size_t i = 0; i < n; ++i) {
        powers[i * stride] = f.one();
        for (std::uint32_t e = 1; e <= m_; ++e) powers[i * stride + e] = f.mul(powers[i * stride + e - 1], point[i]);
    }
    Elem acc = f.zero();
    for (auto j : support_) {
        const auto& beta = monomials_[j].beta;
        Elem term = coeffs_[j];
        for (std::size_t i = 0; i < n && term.value; ++i)
            if (beta[i]) term = f.mul(term, powers[i * stride + beta[i]]);
        acc = f.add(acc, term);
    }
    return acc;
}

}  // namespace kst
