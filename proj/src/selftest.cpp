#include "selftest.hpp"

#include "generators.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <functional>

namespace majz {

namespace {

using CaseFn = std::function<std::string(Rng&, unsigned)>;

struct Suite {
    const char* name;
    bool expensive;
    CaseFn run;
};

std::string describe(const Ell1Seq& s) { return to_json(s).dump(); }

std::string pair_text(const SeqPair& p) { return "a=" + describe(p.a) + " b=" + describe(p.b); }

OrderOptions order_opts(unsigned p) {
    OrderOptions o;
    o.precision_bits = p;
    return o;
}

Ell1Seq shuffled(const Ell1Seq& s, Rng& rng) {
    std::vector<Real> v = s.prefix();
    for (std::size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[static_cast<std::size_t>(rng.integer(0, static_cast<long>(i) - 1))]);
    }
    return Ell1Seq(std::move(v), s.tail());
}

Ell1Seq zero_padded(const Ell1Seq& s, std::size_t zeros, unsigned p) {
    std::vector<Real> v = s.prefix();
    for (std::size_t i = 0; i < zeros; ++i) {
        v.insert(v.begin() + static_cast<long>(i % (v.size() + 1)), Real(p));
    }
    return Ell1Seq(std::move(v), s.tail());
}

Ell1Seq random_catalyst(Rng& rng, unsigned p) {
    const auto d = static_cast<std::size_t>(rng.integer(1, 4));
    return dyadic_sequence(random_composition(rng, d, 1L << kDyadicBits), p);
}

bool is_multiset_prefix(std::vector<Real> top, std::vector<Real> all) {
    std::sort(all.begin(), all.end(), std::greater<>());
    for (std::size_t i = 0; i < top.size(); ++i) {
        const Real expect = i < all.size() ? all[i] : Real(top[i].precision());
        if (top[i] != expect) {
            return false;
        }
    }
    return true;
}

std::string check_k_largest(Rng& rng, unsigned p) {
    const SeqPair pr = random_pair(rng, 12, true, p);
    const auto k = static_cast<std::size_t>(rng.integer(1, 15));
    const auto top = k_largest(pr.a, k, p);
    for (std::size_t i = 1; i < top.size(); ++i) {
        if (top[i] > top[i - 1]) {
            return "not non-increasing: " + describe(pr.a);
        }
    }
    if (!is_multiset_prefix(top, pr.a.prefix())) {
        return "not the largest entries: " + describe(pr.a);
    }
    if (k_largest(shuffled(pr.a, rng), k, p) != top) {
        return "depends on entry order: " + describe(pr.a);
    }
    return {};
}

std::string check_tensor_mass(Rng& rng, unsigned p) {
    const SeqPair pr = random_pair(rng, 12, false, p);
    const Real lhs = total_mass(tensor(pr.a, pr.b, p), p);
    const Real rhs = total_mass(pr.a, p) * total_mass(pr.b, p);
    if (abs(lhs - rhs) > ldexp(abs(rhs), -static_cast<long>(p) + 10)) {
        return "mass not multiplicative: " + pair_text(pr);
    }
    return {};
}

std::string check_geometric_split(Rng& rng, unsigned p) {
    const Ell1Seq s = random_geometric(rng, p);
    const auto& g = *s.geometric_tail();
    const auto m = static_cast<std::size_t>(rng.integer(0, 200));
    Real sum = tail_remainder(g, m, p);
    for (std::size_t j = m; j-- > 0;) {
        sum += tail_term(g, j, p);
    }
    const Real closed = tail_remainder(g, 0, p);
    if (abs(sum - closed) > ldexp(closed, -static_cast<long>(p) + 16)) {
        return "partial tail sum plus remainder differs from the closed form: " + describe(s);
    }
    return {};
}

std::string check_order_agreement(Rng& rng, unsigned p) {
    const bool equal = rng.integer(0, 1) == 0;
    const SeqPair pr = random_pair(rng, 12, equal, p);
    const Verdict ps = majorize_partial_sums(pr.a, pr.b, order_opts(p));
    const Verdict hs = majorize_hockey_stick(pr.a, pr.b, order_opts(p));
    if (ps.kind() != hs.kind()) {
        return std::string("partial sums ") + to_string(ps.kind()) + " vs hockey stick " + to_string(hs.kind()) +
               ": " + pair_text(pr);
    }
    return {};
}

std::string check_hockey_pointwise(Rng& rng, unsigned p) {
    const SeqPair pr = random_pair(rng, 12, true, p);
    const HockeyStickFn h = hockey_stick_fn(pr.a, p);
    const CountingFunction a = counting_function(pr.a, 0, p);
    for (int i = 0; i < 20; ++i) {
        const Real t(rng.uniform() * 1.2 + 1e-9, p);
        const Real direct = hockey_stick(pr.a, t, p);
        if (h.fn(t) != direct) {
            const Real diff = abs(h.fn(t) - direct);
            if (diff > ldexp(Real(1L, p), -static_cast<long>(p) + 16)) {
                return "hockey_stick_fn differs from hockey_stick at t=" + t.to_string() + ": " + describe(pr.a);
            }
        }
        if (abs(integrate_above(a.step, t) - direct) > ldexp(Real(1L, p), -static_cast<long>(p) + 16)) {
            return "integral of the counting function differs at t=" + t.to_string() + ": " + describe(pr.a);
        }
    }
    return {};
}

std::string check_breakpoint_minimum(Rng& rng, unsigned p) {
    const SeqPair pr = random_pair(rng, 12, true, p);
    const Real lowest = hockey_stick_min(pr.a, pr.b, p);
    for (int i = 0; i < 50; ++i) {
        const Real t(rng.uniform() * 1.2 + 1e-12, p);
        const Real g = hockey_stick(pr.b, t, p) - hockey_stick(pr.a, t, p);
        if (g < lowest - ldexp(Real(1L, p), -static_cast<long>(p) + 16)) {
            return "sample below the breakpoint minimum at t=" + t.to_string() + ": " + pair_text(pr);
        }
    }
    return {};
}

std::string check_partial_order(Rng& rng, unsigned p) {
    const auto opts = order_opts(p);
    const SeqPair pr = t_transform_pair(rng, 12, p);
    if (!majorize_partial_sums(pr.a, pr.a, opts).is_holds()) {
        return "not reflexive: " + describe(pr.a);
    }
    // a < b by construction; a further T-transform of a gives c < a < b.
    Rng sub(rng.next());
    std::vector<long> parts;
    for (const auto& x : pr.a.prefix()) {
        parts.push_back(static_cast<long>(ldexp(x, kDyadicBits).to_double()));
    }
    if (parts.size() >= 2) {
        std::sort(parts.begin(), parts.end(), std::greater<>());
        const long t = sub.integer(0, (parts.front() - parts.back()) / 2);
        parts.front() -= t;
        parts.back() += t;
    }
    const Ell1Seq c = dyadic_sequence(parts, p);
    if (!majorize_partial_sums(pr.a, pr.b, opts).is_holds()) {
        return "T-transform pair not majorized: " + pair_text(pr);
    }
    if (!majorize_partial_sums(c, pr.a, opts).is_holds() || !majorize_partial_sums(c, pr.b, opts).is_holds()) {
        return "not transitive: c=" + describe(c) + " " + pair_text(pr);
    }
    const std::size_t d = pr.b.support_size();
    std::vector<Real> uniform(d, Real(1L, p) / static_cast<long>(d));
    if (!majorize_partial_sums(Ell1Seq(uniform), pr.b, opts).is_holds()) {
        return "uniform vector not majorized: " + describe(pr.b);
    }
    return {};
}

std::string check_cm_forward(Rng& rng, unsigned p) {
    const SeqPair pr = t_transform_pair(rng, 12, p);
    CMConfig cfg;
    cfg.precision_bits = p;
    const CMReport r = cm_test({pr.a, pr.b}, cfg);
    if (r.verdict.is_fails()) {
        return "sign violation on a majorizing pair: " + pair_text(pr);
    }
    return {};
}

std::string check_identities(Rng& rng, unsigned p) {
    const SeqPair pr = random_pair(rng, 12, true, p);
    static constexpr double kS[] = {1.5, 2.0, 5.0, 10.0, 50.0};
    const Real s(kS[rng.integer(0, 4)], p);
    const Real limit = ldexp(Real(1L, p), -static_cast<long>(p) + 20);
    if (stieltjes_identity_check(pr.a, s, p).relative() > limit) {
        return "Stieltjes residual too large at s=" + s.to_string() + ": " + describe(pr.a);
    }
    ZetaOptions zo;
    zo.precision_bits = p;
    if (mellin_identity_check({pr.a, pr.b}, s, zo).relative() > limit) {
        return "Mellin residual too large at s=" + s.to_string() + ": " + pair_text(pr);
    }
    return {};
}

std::string check_invariance(Rng& rng, unsigned p) {
    const SeqPair pr = random_pair(rng, 8, true, p);
    const Ell1Seq a2 = zero_padded(shuffled(pr.a, rng), static_cast<std::size_t>(rng.integer(0, 3)), p);
    const Ell1Seq b2 = shuffled(pr.b, rng);
    const Real s(1.0 + 4.0 * rng.uniform() + 1e-3, p);
    ZetaOptions zo;
    zo.precision_bits = p;
    const TaylorJet f1 = f_jet({pr.a, pr.b}, s, 4, zo);
    const TaylorJet f2 = f_jet({a2, b2}, s, 4, zo);
    for (std::size_t k = 0; k <= 4; ++k) {
        const Real scale = abs(f1[k]) + ldexp(Real(1L, p), -20);
        if (abs(f1[k] - f2[k]) > ldexp(scale, -static_cast<long>(p) + 24)) {
            return "f depends on order or zero padding: " + pair_text(pr);
        }
    }
    const auto opts = order_opts(p);
    if (majorize_partial_sums(pr.a, pr.b, opts).kind() != majorize_partial_sums(a2, b2, opts).kind() ||
        majorize_hockey_stick(pr.a, pr.b, opts).kind() != majorize_hockey_stick(a2, b2, opts).kind()) {
        return "verdict depends on order or zero padding: " + pair_text(pr);
    }
    return {};
}

std::string check_trumping(Rng& rng, unsigned p) {
    const auto opts = order_opts(p);
    const SeqPair any = random_pair(rng, 6, true, p);
    const Ell1Seq one(std::vector<Real>{Real(1L, p)});
    if (trump_check(any.a, any.b, one, opts).kind() != majorize_partial_sums(any.a, any.b, opts).kind()) {
        return "identity catalyst differs from the plain check: " + pair_text(any);
    }
    const SeqPair maj = t_transform_pair(rng, 6, p);
    const Ell1Seq c = random_catalyst(rng, p);
    const Verdict v = trump_check(maj.a, maj.b, c, opts);
    if (!v.is_holds()) {
        return "catalysis broke majorization: c=" + describe(c) + " " + pair_text(maj);
    }
    const Real factor(static_cast<long>(rng.integer(1, 7)), p);
    const Ell1Seq c2 = scaled(c, factor, p);
    if (trump_check(any.a, any.b, c2, opts).kind() != trump_check(any.a, any.b, c, opts).kind()) {
        return "verdict changes when the catalyst is scaled: c=" + describe(c) + " " + pair_text(any);
    }
    return {};
}

const std::vector<Suite>& suites() {
    static const std::vector<Suite> all = {
        {"k_largest", false, check_k_largest},
        {"tensor_mass", false, check_tensor_mass},
        {"geometric_split", false, check_geometric_split},
        {"order_agreement", false, check_order_agreement},
        {"hockey_stick_pointwise", false, check_hockey_pointwise},
        {"breakpoint_minimum", false, check_breakpoint_minimum},
        {"partial_order", false, check_partial_order},
        {"cm_forward", true, check_cm_forward},
        {"integral_identities", false, check_identities},
        {"invariance", true, check_invariance},
        {"trumping", false, check_trumping},
    };
    return all;
}

}  // namespace

std::uint64_t case_seed(std::uint64_t seed, std::size_t suite, std::size_t index) {
    // splitmix64 over the combined key
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (1 + (static_cast<std::uint64_t>(suite) << 32) + index);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

bool SelftestReport::passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.failures == 0; });
}

SelftestReport run_selftest(const SelftestConfig& config) {
    SelftestReport report;
    report.seed = config.seed;
    report.cases = config.cases;
    const auto& all = suites();
    for (std::size_t si = 0; si < all.size(); ++si) {
        const Suite& suite = all[si];
        std::size_t n = config.cases;
        if (suite.expensive && n > 0) {
            n = std::max<std::size_t>(1, n / 10);
        }
        std::vector<std::string> outcome(n);
        parallel_for(n, config.threads, [&](std::size_t i) {
            Rng rng(case_seed(config.seed, si, i));
            try {
                outcome[i] = suite.run(rng, config.precision_bits);
            } catch (const std::exception& e) {
                outcome[i] = std::string("exception: ") + e.what();
            }
        });
        SuiteResult res{suite.name, n, 0, {}};
        for (std::size_t i = 0; i < n; ++i) {
            if (!outcome[i].empty()) {
                if (res.failures == 0) {
                    res.first_failure = "case " + std::to_string(i) + ": " + outcome[i];
                }
                ++res.failures;
            }
        }
        report.suites.push_back(std::move(res));
    }
    return report;
}

Json to_json(const SelftestReport& r) {
    Json suites = Json::array();
    for (const auto& s : r.suites) {
        Json j = {{"name", s.name}, {"cases", s.cases}, {"failures", s.failures}};
        if (!s.first_failure.empty()) {
            j["first_failure"] = s.first_failure;
        }
        suites.push_back(j);
    }
    return {{"seed", r.seed}, {"cases", r.cases}, {"passed", r.passed()}, {"suites", suites}};
}

}  // namespace majz
