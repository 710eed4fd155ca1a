#include "kst/gfarith.hpp"

#include <algorithm>
#include <charconv>

namespace kst {

namespace {

constexpr std::uint32_t kAddTableMax = 1024;

// Coefficients of the packed index, low-degree first.
std::vector<std::uint32_t> unpack(std::uint32_t v, std::uint32_t p, std::uint32_t k) {
    std::vector<std::uint32_t> c(k);
    for (std::uint32_t i = 0; i < k; ++i) {
        c[i] = v % p;
        v /= p;
    }
    return c;
}

std::uint32_t pack(std::span<const std::uint32_t> c, std::uint32_t p) {
    std::uint32_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
    return v;
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    // Fermat: a^(p-2) mod p.
    std::uint64_t result = 1, base = a % p;
    std::uint64_t e = p - 2;
    while (e) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

using Poly = std::vector<std::uint32_t>;  // low-degree first, trimmed

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo b over GF(p); b nonzero.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    const std::uint32_t lead_inv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
        const std::size_t shift = a.size() - 1 - db;
        const std::uint64_t factor = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
        for (std::size_t i = 0; i <= db; ++i) {
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - factor) * b[i]) % p);
        }
        trim(a);
    }
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
        }
    }
    trim(r);
    return r;
}

Poly poly_sub(Poly a, const Poly& b, std::uint32_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

// Quotient of a by b over GF(p).
Poly poly_div(Poly a, const Poly& b, std::uint32_t p) {
    trim(a);
    if (a.size() < b.size()) return {};
    Poly quot(a.size() - b.size() + 1, 0);
    const std::uint32_t lead_inv = inv_mod(b.back(), p);
    const std::size_t db = b.size() - 1;
    while (a.size() >= b.size()) {
        const std::size_t shift = a.size() - 1 - db;
        const std::uint64_t factor = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
        quot[shift] = static_cast<std::uint32_t>(factor);
        for (std::size_t i = 0; i <= db; ++i) {
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - factor) * b[i]) % p);
        }
        trim(a);
    }
    trim(quot);
    return quot;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> f;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            f.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) f.push_back(n);
    return f;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::uint64_t checked_pow(std::uint64_t q, std::uint32_t e) noexcept {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        if (q != 0 && r > UINT64_MAX / q) return 0;
        r *= q;
    }
    return r;
}

bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t p) {
    Poly f(poly.begin(), poly.end());
    trim(f);
    if (f.size() < 2) return false;
    const std::size_t deg = f.size() - 1;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        const std::uint64_t count = checked_pow(p, static_cast<std::uint32_t>(d));
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Poly div(d + 1);
            std::uint64_t v = idx;
            for (std::size_t i = 0; i < d; ++i) {
                div[i] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            div[d] = 1;
            if (poly_mod(f, div, p).empty()) return false;
        }
    }
    return true;
}

bool split_prime_power(std::uint64_t q, std::uint64_t& p, std::uint32_t& k) noexcept {
    if (q < 2) return false;
    std::uint64_t d = 2;
    while (d * d <= q && q % d != 0) ++d;
    if (q % d != 0) d = q;
    std::uint32_t e = 0;
    std::uint64_t r = q;
    while (r % d == 0) {
        r /= d;
        ++e;
    }
    if (r != 1) return false;
    p = d;
    k = e;
    return true;
}

Field make_field(std::uint64_t p, std::uint32_t k, std::uint64_t cap) {
    require(k >= 1, ErrorCode::invalid_argument, "extension degree must be >= 1");
    require(is_prime(p), ErrorCode::invalid_argument, "characteristic " + std::to_string(p) + " is not prime");
    const std::uint64_t q = checked_pow(p, k);
    require(q != 0 && q <= cap, ErrorCode::cap_exceeded,
            "field order " + std::to_string(p) + "^" + std::to_string(k) + " exceeds cap " + std::to_string(cap));

    Field f;
    f.p_ = static_cast<std::uint32_t>(p);
    f.k_ = k;
    f.q_ = static_cast<std::uint32_t>(q);
    if (k > 1) {
        // c0 is the most significant position of the scan.
        bool found = false;
        for (std::uint64_t idx = 0; idx < q && !found; ++idx) {
            std::vector<std::uint32_t> cand(k + 1);
            std::uint64_t v = idx;
            for (std::uint32_t i = k; i-- > 0;) {
                cand[i] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            cand[k] = 1;
            if (is_irreducible(cand, f.p_)) {
                f.modulus_ = std::move(cand);
                found = true;
            }
        }
        require(found, ErrorCode::internal, "no irreducible polynomial found");
    }
    f.build_tables();
    return f;
}

Field make_field_of_order(std::uint64_t q, std::uint64_t cap) {
    std::uint64_t p = 0;
    std::uint32_t k = 0;
    require(split_prime_power(q, p, k), ErrorCode::invalid_argument,
            "field order " + std::to_string(q) + " is not a prime power");
    return make_field(p, k, cap);
}

void Field::build_tables() {
    auto t = std::make_shared<Tables>();
    t->neg.resize(q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
        auto c = unpack(a, p_, k_);
        for (auto& x : c) x = (p_ - x) % p_;
        t->neg[a] = pack(c, p_);
    }
    if (k_ > 1 && p_ != 2 && q_ <= kAddTableMax) {
        t->add.resize(static_cast<std::size_t>(q_) * q_);
        for (std::uint32_t a = 0; a < q_; ++a)
            for (std::uint32_t b = 0; b < q_; ++b) t->add[static_cast<std::size_t>(a) * q_ + b] = add_direct(Elem{a}, Elem{b}).value;
    }

    // Discrete log tables from the smallest primitive element.
    const std::uint32_t n = q_ - 1;
    const auto factors = prime_factors(n);
    auto pow_direct = [&](std::uint32_t a, std::uint64_t e) {
        Elem r{1}, b{a};
        while (e) {
            if (e & 1) r = mul_direct(r, b);
            b = mul_direct(b, b);
            e >>= 1;
        }
        return r.value;
    };
    std::uint32_t gen = 0;
    for (std::uint32_t g = 1; g < q_ && gen == 0; ++g) {
        bool primitive = true;
        for (auto r : factors) {
            if (pow_direct(g, n / r) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) gen = g;
    }
    require(gen != 0, ErrorCode::internal, "no primitive element found");
    t->log.assign(q_, 0);
    t->exp.assign(2 * static_cast<std::size_t>(n), 0);
    std::uint32_t cur = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        t->exp[i] = cur;
        t->exp[i + n] = cur;
        t->log[cur] = i;
        cur = mul_direct(Elem{cur}, Elem{gen}).value;
    }
    t->inv.assign(q_, 0);
    for (std::uint32_t a = 1; a < q_; ++a) t->inv[a] = t->exp[(n - t->log[a]) % n];
    tables_ = std::move(t);
}

Elem Field::from_int(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return Elem{static_cast<std::uint32_t>(r)};
}

Elem Field::from_coords(std::span<const std::uint32_t> coords) const {
    require(coords.size() == k_, ErrorCode::invalid_argument, "coordinate vector has wrong length");
    for (auto c : coords) require(c < p_, ErrorCode::invalid_argument, "coordinate out of range");
    return Elem{pack(coords, p_)};
}

std::vector<std::uint32_t> Field::coords(Elem a) const { return unpack(a.value, p_, k_); }

Elem Field::add_direct(Elem a, Elem b) const noexcept {
    if (k_ == 1) return Elem{(a.value + b.value) % p_};
    if (p_ == 2) return Elem{a.value ^ b.value};
    std::uint32_t r = 0, scale = 1, x = a.value, y = b.value;
    for (std::uint32_t i = 0; i < k_; ++i) {
        r += ((x % p_ + y % p_) % p_) * scale;
        x /= p_;
        y /= p_;
        scale *= p_;
    }
    return Elem{r};
}

Elem Field::add(Elem a, Elem b) const noexcept {
    if (k_ == 1) {
        const std::uint32_t s = a.value + b.value;
        return Elem{s >= p_ ? s - p_ : s};
    }
    if (p_ == 2) return Elem{a.value ^ b.value};
    if (!tables_->add.empty()) return Elem{tables_->add[static_cast<std::size_t>(a.value) * q_ + b.value]};
    return add_direct(a, b);
}

Elem Field::neg(Elem a) const noexcept { return Elem{tables_->neg[a.value]}; }

Elem Field::mul_direct(Elem a, Elem b) const noexcept {
    if (k_ == 1) return Elem{static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.value) * b.value % p_)};
    Poly x = unpack(a.value, p_, k_), y = unpack(b.value, p_, k_);
    trim(x);
    trim(y);
    Poly r = poly_mod(poly_mul(x, y, p_), modulus_, p_);
    r.resize(k_, 0);
    return Elem{pack(r, p_)};
}

Elem Field::mul(Elem a, Elem b) const noexcept {
    if (a.value == 0 || b.value == 0) return Elem{0};
    const auto& t = *tables_;
    return Elem{t.exp[t.log[a.value] + t.log[b.value]]};
}

Elem Field::inv_direct(Elem a) const {
    require(a.value != 0, ErrorCode::precondition, "inversion of zero");
    if (k_ == 1) return Elem{inv_mod(a.value, p_)};
    // Extended Euclid: track s with s*a = r (mod modulus).
    Poly r0 = modulus_, r1 = unpack(a.value, p_, k_);
    trim(r1);
    Poly s0, s1{1};
    while (!r1.empty()) {
        Poly quot = poly_div(r0, r1, p_);
        Poly r2 = poly_sub(r0, poly_mul(quot, r1, p_), p_);
        Poly s2 = poly_sub(s0, poly_mul(quot, s1, p_), p_);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 is a nonzero constant since the modulus is irreducible.
    const std::uint32_t c = inv_mod(r0[0], p_);
    for (auto& x : s0) x = static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * c % p_);
    s0.resize(k_, 0);
    return Elem{pack(s0, p_)};
}

Elem Field::inv(Elem a) const {
    require(a.value != 0, ErrorCode::precondition, "inversion of zero");
    return Elem{tables_->inv[a.value]};
}

Elem Field::pow(Elem a, std::uint64_t e) const noexcept {
    if (e == 0) return one();
    if (a.value == 0) return zero();
    const auto& t = *tables_;
    const std::uint64_t n = q_ - 1;
    return Elem{t.exp[(static_cast<std::uint64_t>(t.log[a.value]) * (e % n)) % n]};
}

std::string Field::format(Elem a) const {
    if (k_ == 1) return std::to_string(a.value);
    std::string out;
    auto c = coords(a);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(c[i]);
    }
    return out;
}

Elem Field::parse(std::string_view text) const {
    std::vector<std::uint32_t> c;
    std::size_t pos = 0;
    while (true) {
        const std::size_t end = std::min(text.find(',', pos), text.size());
        std::uint32_t v = 0;
        auto sub = text.substr(pos, end - pos);
        auto [ptr, ec] = std::from_chars(sub.data(), sub.data() + sub.size(), v);
        require(ec == std::errc() && ptr == sub.data() + sub.size() && !sub.empty(), ErrorCode::invalid_argument,
                "malformed field element '" + std::string(text) + "'");
        c.push_back(v);
        if (end == text.size()) break;
        pos = end + 1;
    }
    return from_coords(c);
}

FieldEmbedding::FieldEmbedding(const Field& base, const Field& ext) {
    require(base.characteristic() == ext.characteristic() && ext.degree() % base.degree() == 0,
            ErrorCode::field_mismatch, "base field does not embed in extension");
    image_.resize(base.order());
    if (base.degree() == 1) {
        for (std::uint32_t a = 0; a < base.order(); ++a) image_[a] = ext.from_int(a).value;
        return;
    }
    const auto& mod = base.modulus();
    Elem root{0};
    bool found = false;
    for (std::uint32_t r = 0; r < ext.order() && !found; ++r) {
        Elem acc = ext.zero();
        for (std::size_t i = mod.size(); i-- > 0;) acc = ext.add(ext.mul(acc, Elem{r}), ext.from_int(mod[i]));
        if (acc.value == 0) {
            root = Elem{r};
            found = true;
        }
    }
    require(found, ErrorCode::internal, "base modulus has no root in extension");
    for (std::uint32_t a = 0; a < base.order(); ++a) {
        auto c = base.coords(Elem{a});
        Elem acc = ext.zero();
        for (std::size_t i = c.size(); i-- > 0;) acc = ext.add(ext.mul(acc, root), ext.from_int(c[i]));
        image_[a] = acc.value;
    }
}

FieldElem::FieldElem(Field field, Elem value) : field_(std::move(field)), value_(value) {
    require(field_.contains(value_), ErrorCode::invalid_argument, "element outside field");
}

FieldElem field_arith(ArithOp op, const FieldElem& a, const FieldElem& b) {
    const Field& f = a.field();
    if (op != ArithOp::inv && op != ArithOp::pow) {
        require(f == b.field(), ErrorCode::field_mismatch, "operands belong to different fields");
    }
    switch (op) {
        case ArithOp::add: return FieldElem(f, f.add(a.value(), b.value()));
        case ArithOp::sub: return FieldElem(f, f.sub(a.value(), b.value()));
        case ArithOp::mul: return FieldElem(f, f.mul(a.value(), b.value()));
        case ArithOp::div: return FieldElem(f, f.div(a.value(), b.value()));
        case ArithOp::inv: return FieldElem(f, f.inv(a.value()));
        case ArithOp::pow: return FieldElem(f, f.pow(a.value(), b.value().value));
    }
    fail(ErrorCode::internal, "unknown arithmetic op");
}

FieldElem field_pow(const FieldElem& a, std::uint64_t e) { return FieldElem(a.field(), a.field().pow(a.value(), e)); }

FieldElem operator+(const FieldElem& a, const FieldElem& b) { return field_arith(ArithOp::add, a, b); }
FieldElem operator-(const FieldElem& a, const FieldElem& b) { return field_arith(ArithOp::sub, a, b); }
FieldElem operator*(const FieldElem& a, const FieldElem& b) { return field_arith(ArithOp::mul, a, b); }
FieldElem operator/(const FieldElem& a, const FieldElem& b) { return field_arith(ArithOp::div, a, b); }

std::uint64_t pick_base(std::uint64_t n, std::uint32_t s, BaseKind kind) {
    require(n >= 2 && s >= 1, ErrorCode::invalid_argument, "pick_base requires n >= 2 and s >= 1");
    std::uint64_t q = 2;
    while (true) {
        if (kind == BaseKind::prime && !is_prime(q)) {
            ++q;
            continue;
        }
        const std::uint64_t qs = checked_pow(q, s);
        if (qs == 0 || qs >= n) return q;
        q = (kind == BaseKind::prime) ? q + 1 : q * 2;
    }
}

}  // namespace kst
