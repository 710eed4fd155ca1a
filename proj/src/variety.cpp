#include "kst/variety.hpp"

#include <cmath>

namespace kst {

VarietySpec::VarietySpec(std::uint32_t ambient_dim, std::vector<HomPoly> generators) : b_(ambient_dim) {
    for (auto& g : generators) add_generator(std::move(g));
}

void VarietySpec::add_generator(HomPoly g) {
    require(g.b == b_, ErrorCode::invalid_argument, "generator lives in a different ambient space");
    require(g.m >= 1, ErrorCode::invalid_argument, "generators must have degree >= 1");
    require(ledger_ <= UINT64_MAX / g.m, ErrorCode::cap_exceeded, "degree ledger overflow");
    ledger_ *= g.m;
    generators_.push_back(std::move(g));
}

namespace {

bool vanishes_all(const std::vector<PolyEvaluator>& evals, const std::vector<Elem>& x) {
    for (const auto& e : evals)
        if (e(x).value) return false;
    return true;
}

std::vector<PolyEvaluator> make_evaluators(const Field& f, const std::vector<HomPoly>& gens) {
    std::vector<PolyEvaluator> out;
    out.reserve(gens.size());
    for (const auto& g : gens) out.emplace_back(f, g);
    return out;
}

}  // namespace

std::vector<ProjPoint> fq_points(const Field& f, const VarietySpec& vs, std::uint64_t cap) {
    const std::uint64_t n = projective_size(f.order(), vs.ambient_dim());
    require(n != 0 && n <= cap, ErrorCode::cap_exceeded, "ambient projective space exceeds point cap");
    const auto evals = make_evaluators(f, vs.generators());
    std::vector<ProjPoint> out;
    for_each_projective(f, vs.ambient_dim(), [&](const std::vector<Elem>& x) {
        if (vanishes_all(evals, x)) out.push_back(ProjPoint{x});
    });
    return out;
}

std::vector<ProjPoint> filter_points(const Field& f, const std::vector<HomPoly>& generators,
                                     const std::vector<ProjPoint>& candidates) {
    const auto evals = make_evaluators(f, generators);
    std::vector<ProjPoint> out;
    for (const auto& p : candidates)
        if (vanishes_all(evals, p.coords)) out.push_back(p);
    return out;
}

DimensionEstimate dimension_probe(const Field& base, const VarietySpec& vs, std::uint32_t e_max, std::uint64_t cap) {
    require(e_max >= 1, ErrorCode::invalid_argument, "e_max must be >= 1");
    require(projective_size(base.order(), vs.ambient_dim()) <= cap, ErrorCode::cap_exceeded,
            "probe ambient space exceeds point cap");
    DimensionEstimate est;
    for (std::uint32_t e = 1; e <= e_max; ++e) {
        const std::uint64_t qe = checked_pow(base.order(), e);
        const std::uint64_t size = projective_size(qe, vs.ambient_dim());
        if (qe == 0 || qe > kDefaultFieldCap || size == 0 || size > cap) break;
        std::uint64_t count = 0;
        if (e == 1) {
            const auto evals = make_evaluators(base, vs.generators());
            for_each_projective(base, vs.ambient_dim(), [&](const std::vector<Elem>& x) { count += vanishes_all(evals, x); });
        } else {
            const Field ext = make_field(base.characteristic(), base.degree() * e);
            const FieldEmbedding embed(base, ext);
            std::vector<HomPoly> lifted = vs.generators();
            for (auto& g : lifted)
                for (auto& c : g.coeffs) c = embed(c);
            const auto evals = make_evaluators(ext, lifted);
            for_each_projective(ext, vs.ambient_dim(), [&](const std::vector<Elem>& x) { count += vanishes_all(evals, x); });
        }
        est.counts.emplace_back(e, count);
    }
    std::vector<double> xs, ys;
    const double logq = std::log(static_cast<double>(base.order()));
    for (auto [e, c] : est.counts) {
        if (c == 0) continue;
        xs.push_back(e * logq);
        ys.push_back(std::log(static_cast<double>(c)));
    }
    if (xs.empty()) {
        est.empty = true;
        est.estimate = -1;
        return est;
    }
    if (xs.size() == 1) {
        est.slope = ys[0] / xs[0];
    } else {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mx += xs[i];
            my += ys[i];
        }
        mx /= xs.size();
        my /= ys.size();
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxy += (xs[i] - mx) * (ys[i] - my);
            sxx += (xs[i] - mx) * (xs[i] - mx);
        }
        est.slope = sxy / sxx;
    }
    est.estimate = static_cast<int>(std::lround(est.slope));
    est.high_confidence = est.counts.size() >= 2;
    for (auto [e, c] : est.counts)
        if (c < 10ull * base.order()) est.high_confidence = false;
    return est;
}

IndependentVariety build_independent_variety(const Field& f, std::uint32_t b, std::uint32_t m, std::uint32_t Z,
                                             std::uint32_t s, const SeededRng& rng,
                                             const IndependentVarietyOptions& opts) {
    require(b >= Z + 1, ErrorCode::precondition, "need b - Z >= 1");
    IndependentVariety out;
    CertReport& rep = out.report;
    rep.point_threshold = Rational(static_cast<std::int64_t>(checked_pow(f.order(), b - Z)), 2);
    if (Z == 0) {
        out.variety = VarietySpec(b);
        out.points = enumerate_projective(f, b, opts.point_cap);
        rep.certified = true;
        rep.point_count = out.points.size();
        return out;
    }
    rep.z_condition = z_condition(b, m, Z, s).verdict;
    if (rep.z_condition != Tristate::yes) {
        require(opts.waive_z_condition, ErrorCode::precondition,
                "z_condition does not hold for (b, m, Z, s); pass a waiver to build anyway");
        rep.z_condition_waived = true;
    }
    const std::uint64_t qbz = checked_pow(f.order(), b - Z);
    for (std::uint32_t attempt = 0; attempt < opts.retries; ++attempt) {
        ++rep.attempts;
        SeededRng local = rng.child(attempt);
        rep.attempt_seed = local.seed();
        std::vector<HomPoly> gens;
        for (std::uint32_t i = 0; i < Z; ++i) gens.push_back(random_hom(f, b, m, local));
        VarietySpec vs(b, std::move(gens));
        auto pts = fq_points(f, vs, opts.point_cap);
        rep.point_count = pts.size();
        if (2 * rep.point_count < qbz) {
            ++rep.failures_point_count;
            continue;
        }
        if (binomial(pts.size(), s) <= opts.subset_budget) {
            rep.independence = s_wise_independent(f, pts, s, m, opts.subset_budget);
        } else {
            SeededRng sub = local.child("subsets");
            rep.independence = s_wise_sampled(f, pts, s, m, opts.sampled_subsets, sub);
        }
        if (rep.independence.verdict != SearchVerdict::independent) {
            ++rep.failures_independence;
            continue;
        }
        rep.probe = dimension_probe(f, vs, opts.probe_e_max, opts.probe_cap);
        if (rep.probe.estimate != static_cast<int>(b - Z)) {
            ++rep.failures_dimension;
            continue;
        }
        rep.certified = true;
        rep.certified_attempt = attempt;
        out.variety = std::move(vs);
        out.points = std::move(pts);
        return out;
    }
    return out;
}

VarietySpec residual_variety(const Field& f, const VarietySpec& vs, const BiHomPoly& g,
                             const std::vector<ProjPoint>& anchors) {
    require(g.b == vs.ambient_dim(), ErrorCode::invalid_argument, "g's y-part does not match the variety's ambient space");
    VarietySpec out = vs;
    for (const auto& l : anchors) {
        require(l.coords.size() == g.a + 1, ErrorCode::invalid_argument, "anchor does not lie in P^a");
        out.add_generator(specialize(f, g, l));
    }
    return out;
}

namespace {

ConcentrationStats summarize(std::size_t population, std::uint32_t r, std::uint64_t qr, std::vector<std::uint64_t> counts) {
    ConcentrationStats st;
    st.population = population;
    st.r = r;
    st.trials = static_cast<std::uint32_t>(counts.size());
    const double n = static_cast<double>(population);
    const double inv_qr = 1.0 / static_cast<double>(qr);
    st.expected_mean = n * inv_qr;
    st.predicted_variance = n * inv_qr * (1.0 - inv_qr);
    st.standard_error = counts.empty() ? 0.0 : std::sqrt(st.predicted_variance / counts.size());
    st.low_ceiling = 4.0 * static_cast<double>(qr) / n;
    double sum = 0;
    std::size_t low = 0;
    for (auto c : counts) {
        sum += c;
        // count <= |Y| / (2 q^r), compared exactly
        if (2 * c * qr <= population) ++low;
    }
    if (!counts.empty()) {
        st.mean = sum / counts.size();
        double ss = 0;
        for (auto c : counts) ss += (c - st.mean) * (c - st.mean);
        st.variance = counts.size() > 1 ? ss / (counts.size() - 1) : 0.0;
        st.low_frequency = static_cast<double>(low) / counts.size();
    }
    st.counts = std::move(counts);
    return st;
}

}  // namespace

ConcentrationStats concentration_trial(const Field& f, const std::vector<ProjPoint>& Y,
                                       const std::vector<std::uint32_t>& degrees, std::uint32_t trials, SeededRng& rng) {
    require(!Y.empty(), ErrorCode::invalid_argument, "concentration_trial needs a nonempty Y");
    const std::uint32_t b = static_cast<std::uint32_t>(Y.front().dim());
    const std::uint64_t qr = checked_pow(f.order(), static_cast<std::uint32_t>(degrees.size()));
    require(qr != 0, ErrorCode::cap_exceeded, "q^r overflows");
    std::vector<std::uint64_t> counts;
    counts.reserve(trials);
    for (std::uint32_t t = 0; t < trials; ++t) {
        std::vector<HomPoly> gs;
        for (auto d : degrees) gs.push_back(random_hom(f, b, d, rng));
        const auto evals = make_evaluators(f, gs);
        std::uint64_t c = 0;
        for (const auto& y : Y) c += vanishes_all(evals, y.coords);
        counts.push_back(c);
    }
    return summarize(Y.size(), static_cast<std::uint32_t>(degrees.size()), qr, std::move(counts));
}

ConcentrationStats concentration_trial_bi(const Field& f, const std::vector<std::pair<ProjPoint, ProjPoint>>& Y,
                                          const std::vector<std::pair<std::uint32_t, std::uint32_t>>& bidegrees,
                                          std::uint32_t trials, SeededRng& rng) {
    require(!Y.empty(), ErrorCode::invalid_argument, "concentration_trial needs a nonempty Y");
    for (auto [m, mp] : bidegrees)
        require(m >= 1 && mp >= 1, ErrorCode::invalid_argument, "bihomogeneous shapes need both degrees >= 1");
    const std::uint32_t a = static_cast<std::uint32_t>(Y.front().first.dim());
    const std::uint32_t b = static_cast<std::uint32_t>(Y.front().second.dim());
    const std::uint64_t qr = checked_pow(f.order(), static_cast<std::uint32_t>(bidegrees.size()));
    require(qr != 0, ErrorCode::cap_exceeded, "q^r overflows");
    std::vector<std::uint64_t> counts;
    for (std::uint32_t t = 0; t < trials; ++t) {
        std::vector<BiHomPoly> gs;
        for (auto [m, mp] : bidegrees) gs.push_back(random_bihom(f, a, b, m, mp, rng));
        std::uint64_t c = 0;
        for (const auto& [v, w] : Y) {
            bool all = true;
            for (const auto& g : gs) {
                if (evaluate_bi(f, g, v, w).value) {
                    all = false;
                    break;
                }
            }
            c += all;
        }
        counts.push_back(c);
    }
    return summarize(Y.size(), static_cast<std::uint32_t>(bidegrees.size()), qr, std::move(counts));
}

}  // namespace kst
