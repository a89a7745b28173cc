// Copyright 2026 The rqcm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>
#include <bit>

#include "json.hpp"
#include "rqcm/errors.hpp"

// Closed-form complexity and moment bounds, evaluated in natural-log space
// with explicit base-2 conversions. Constants the source results only assert
// to exist (K, B, lambda_G, C, C', C1..C4) are inputs; their defaults are
// placeholders, not derived values. Vacuous results (lower bounds <= 0,
// probability bounds >= 1) are reported, never suppressed.

namespace rqcm::bounds {

inline constexpr double kLn2 = std::numbers::ln2;
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

enum class LogBase { Two, Natural };

inline double log_in(double x, LogBase base) { return base == LogBase::Two ? std::log2(x) : std::log(x); }

/// log(e^a + e^b), tolerant of -inf.
inline double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::abs(a - b)));
}

inline double log_factorial(double t) { return std::lgamma(t + 1.0); }

/// Placeholder defaults; none of these values comes from a derivation.
struct BoundParams {
    int n = 4;
    double d = 1.0;
    int t = 1;
    double delta = 0.1;
    double K = 1.0;
    double B = 2.0;
    double lambda_G = 0.1;
    double C1 = 40000.0, C2 = 16000.0, C3 = 40000.0, C4 = 16000.0;
    double C = 1.0, Cprime = 200.0;
    double k_mix = 0.0;  // 0 selects the default 2000 n^7
    double gateset_size = 2.0;
    LogBase log_base = LogBase::Two;

    double mixing_steps() const { return k_mix > 0 ? k_mix : 2000.0 * std::pow(n, 7); }
};

inline nlohmann::json to_json(const BoundParams& p) {
    return {{"n", p.n}, {"d", p.d}, {"t", p.t}, {"delta", p.delta}, {"K", p.K}, {"B", p.B},
            {"lambda_G", p.lambda_G}, {"C1", p.C1}, {"C2", p.C2}, {"C3", p.C3}, {"C4", p.C4},
            {"C", p.C}, {"Cprime", p.Cprime}, {"k_mix", p.mixing_steps()}, {"gateset_size", p.gateset_size},
            {"log_base", p.log_base == LogBase::Two ? "2" : "e"}};
}

/// 1 - 2 log2(1 / (1 - delta^2)); vanishes at delta = sqrt(1 - 2^{-1/2}).
inline double unitary_bracket(double delta) { return 1.0 - 2.0 * std::log2(1.0 / (1.0 - delta * delta)); }

inline double unitary_delta_threshold() { return std::sqrt(1.0 - std::pow(2.0, -0.5)); }

// ---------------------------------------------------------------------------
// Complexity lower bounds

struct UnitaryBound {
    double value = 0;        // lower bound on the gate count
    double tilde_delta = 0;  // robustness at which it applies
    double bracket = 0;
    bool vacuous = false;    // value <= 0
    bool in_regime = true;   // d <= 2^{n/2}
};

namespace detail {

inline void check_unitary_delta(double delta) {
    // The threshold itself is admitted so the vanishing bracket can be shown.
    if (!(delta >= 0.0) || delta > unitary_delta_threshold() * (1.0 + 1e-15)) {
        throw DomainError("unitary bound: need 0 <= delta <= sqrt(1 - 2^{-1/2})");
    }
}

inline UnitaryBound unitary_bound(int n, double d, double delta, double denom_const, double tilde_const,
                                  LogBase base) {
    check_unitary_delta(delta);
    if (n < 2) throw DomainError("unitary bound: need n >= 2 (log n appears in the denominator)");
    UnitaryBound b;
    b.bracket = unitary_bracket(delta);
    if (std::abs(b.bracket) < 1e-12) b.bracket = 0.0;
    const double denom = denom_const * std::pow(n, 9) * log_in(n, base) * log_in(1.0 / delta, base);
    b.value = delta == 0.0 ? 0.0 : d / denom * b.bracket;
    b.tilde_delta = (1.0 - std::sqrt(1.0 - delta * delta)) * d / (tilde_const * std::pow(n, 8) * std::ldexp(1.0, n));
    b.vacuous = !(b.value > 0.0);
    b.in_regime = d <= std::pow(2.0, n / 2.0);
    return b;
}

inline double state_bound_value(int n, double d, double delta, double denom_const, double inner_const) {
    if (!(delta > 0.0) || !(delta < std::numbers::sqrt2 / 2.0)) {
        throw DomainError("state bound: need 0 < delta < 1/sqrt(2)");
    }
    const double bracket = n - std::log2(std::sqrt(d) / (inner_const * std::pow(n, 4))) -
                           2.0 * std::log2(1.0 / (1.0 - 2.0 * delta * delta));
    return std::sqrt(d) / (denom_const * std::pow(n, 4) * std::log2(d / (delta * delta))) * bracket;
}

}  // namespace detail

/// d / (K n^9 log n log2(1/delta)) * bracket, with
/// tilde_delta = (1 - sqrt(1 - delta^2)) d / (40000 n^8 2^n).
inline UnitaryBound unitary_lower_bound(const BoundParams& p) {
    return detail::unitary_bound(p.n, p.d, p.delta, p.K, 40000.0, p.log_base);
}

struct StateBound {
    double value = 0;
    bool vacuous = false;
    bool in_regime = true;
};

/// sqrt(d) / (K n^4 log2(d/delta^2)) * (n - log2(sqrt(d)/(200 n^4)) - 2 log2(1/(1 - 2 delta^2))).
inline StateBound state_lower_bound(const BoundParams& p) {
    StateBound b;
    b.value = detail::state_bound_value(p.n, p.d, p.delta, p.K, 200.0);
    b.vacuous = !(b.value > 0.0);
    b.in_regime = p.d <= std::pow(2.0, p.n / 2.0);
    return b;
}

/// Smallest n >= 1 (up to max_n) at which the state bound is positive; 0 if none.
inline int state_bound_min_positive_n(double d, double delta, double K, int max_n = 64) {
    for (int n = 1; n <= max_n; ++n) {
        BoundParams p;
        p.n = n;
        p.d = d;
        p.delta = delta;
        p.K = K;
        if (state_lower_bound(p).value > 0.0) return n;
    }
    return 0;
}

/// The intermediate gate-set bound R >= t/(2 log2|K|) (n - log2 t - log2(1/(1 - delta^2))).
inline double state_gate_count_bound(int n, double t, double gateset_size, double delta) {
    return t / (2.0 * std::log2(gateset_size)) * (n - std::log2(t) - std::log2(1.0 / (1.0 - delta * delta)));
}

struct GateSetBounds {
    UnitaryBound unitary;
    StateBound state;
};

/// Same shapes with the gate-set constants C and C' (one C for both places it appears).
inline GateSetBounds gateset_bounds(const BoundParams& p) {
    GateSetBounds g;
    g.unitary = detail::unitary_bound(p.n, p.d, p.delta, p.C, p.C, p.log_base);
    g.state.value = detail::state_bound_value(p.n, p.d, p.delta, p.C, p.Cprime);
    g.state.vacuous = !(g.state.value > 0.0);
    g.state.in_regime = p.d <= std::pow(2.0, p.n / 2.0);
    return g;
}

// ---------------------------------------------------------------------------
// Moment bounds

struct MomentRhs {
    double value = 0;     // may be +inf when the log is huge
    double ln_value = 0;
    double ln_floor = 0;  // log of the first summand under the root
    bool vacuous = false; // value >= 1
};

enum class MomentVariant { AllT, LargeT };

/// sqrt(a + e^{-d/(c1 n^7)} + base^{d/(c2 n^7)}) + n e^{-d/n}, where
///   AllT:   a = t!/2^{nt},             base = 1 - 1/(2t) + 3 2^{-n}
///   LargeT: a = t! 2^{2^n/2} 2^{-nt},   base = 1 - 1/(2(n+1)) + 3 2^{-n}
inline MomentRhs moment_rhs(int n, double d, int t, MomentVariant variant, double c1, double c2) {
    if (n < 1 || t < 1 || d < 0) throw DomainError("moment bound: need n >= 1, t >= 1, d >= 0");
    const double n7 = std::pow(n, 7);
    MomentRhs r;
    r.ln_floor = log_factorial(t) - static_cast<double>(n) * t * kLn2;
    if (variant == MomentVariant::LargeT) r.ln_floor += std::ldexp(1.0, n) / 2.0 * kLn2;
    const double base = variant == MomentVariant::AllT ? 1.0 - 1.0 / (2.0 * t) + 3.0 * std::ldexp(1.0, -n)
                                                       : 1.0 - 1.0 / (2.0 * (n + 1.0)) + 3.0 * std::ldexp(1.0, -n);
    double inner = r.ln_floor;
    inner = log_add(inner, -d / (c1 * n7));
    inner = log_add(inner, d / (c2 * n7) * std::log(base));
    r.ln_value = log_add(0.5 * inner, std::log(static_cast<double>(n)) - d / n);
    r.value = std::exp(r.ln_value);
    r.vacuous = r.ln_value >= 0.0;
    return r;
}

inline MomentRhs local_moment_rhs(int n, double d, int t, MomentVariant variant) {
    return moment_rhs(n, d, t, variant, 40000.0, 16000.0);
}

struct GateSetMomentRhs {
    MomentRhs all_t;
    MomentRhs large_t;
};

inline GateSetMomentRhs gateset_moment_rhs(const BoundParams& p) {
    return {moment_rhs(p.n, p.d, p.t, MomentVariant::AllT, p.C1, p.C2),
            moment_rhs(p.n, p.d, p.t, MomentVariant::LargeT, p.C3, p.C4)};
}

// ---------------------------------------------------------------------------
// Counting, nets and error accumulation

struct ProbabilityBound {
    double value = 0;  // clipped at 1
    double log2_value = 0;
    bool vacuous = false;
};

/// |K|^R * moment / (1 - delta^2)^t
inline ProbabilityBound markov_union_bound(int t, double R, double gateset_size, double delta, double moment) {
    if (!(moment >= 0.0 && moment <= 1.0)) throw DomainError("markov_union_bound: moment must lie in [0, 1]");
    if (t < 1 || R < 0 || gateset_size < 1 || !(delta >= 0.0 && delta < 1.0)) {
        throw DomainError("markov_union_bound: parameters out of range");
    }
    ProbabilityBound b;
    b.log2_value = R * std::log2(gateset_size) + std::log2(moment) - t * std::log2(1.0 - delta * delta);
    b.vacuous = b.log2_value >= 0.0;
    b.value = b.vacuous ? 1.0 : std::exp2(b.log2_value);
    return b;
}

/// log2 of 2^{-(t/2)(n - log2 t) + t log2(1/(1 - delta^2)) + R log2|K|}, the
/// shape the union bound takes once the moment is near its floor. The square
/// root over the moment halves the n - log2 t exponent.
inline double markov_union_shape_log2(int n, int t, double R, double gateset_size, double delta) {
    return -0.5 * t * (n - std::log2(static_cast<double>(t))) - t * std::log2(1.0 - delta * delta) +
           R * std::log2(gateset_size);
}

struct EpsNet {
    double epsilon = 0;        // delta^2 / (2d)
    double log2_net_size = 0;  // log2(B) * log(1/epsilon)
    double effective_delta = 0;
};

inline EpsNet epsnet_and_accumulation(double delta, double d, double B, LogBase base = LogBase::Two) {
    if (!(delta > 0.0 && delta < std::numbers::sqrt2 / 2.0)) throw DomainError("epsnet: need 0 < delta < 1/sqrt(2)");
    if (d < 1 || B <= 1) throw DomainError("epsnet: need d >= 1 and B > 1");
    EpsNet e;
    e.epsilon = delta * delta / (2.0 * d);
    e.log2_net_size = std::log2(B) * log_in(1.0 / e.epsilon, base);
    e.effective_delta = std::numbers::sqrt2 * delta;
    return e;
}

/// sqrt(1 - delta^2) - epsilon R >= sqrt(1 - 2 delta^2) with epsilon = delta^2/(2d).
inline bool accumulation_inequality(double delta, double d, double R) {
    const double eps = delta * delta / (2.0 * d);
    return std::sqrt(1.0 - delta * delta) - eps * R >= std::sqrt(1.0 - 2.0 * delta * delta);
}

struct DeepSplitting {
    double line1 = 0, line2 = 0, line3 = 0;
    double bracket = 0;
    double log2_gateset = 0;
    double blocks = 0;          // floor(20 k n 2^n / d)
    bool chain_12 = false;      // line1 >= line2
    bool chain_23 = false;      // line2 >= line3
    bool vacuous = false;       // line3 <= 0
};

/// The three-line per-block bound for a depth-d block of a 20 k n 2^n deep
/// circuit. log2|K_delta| = log2(B) log(d/delta^2). Requires
/// d <= sqrt(20 k n) 2^{n/2}.
inline DeepSplitting deep_splitting_bound(int n, double d, double delta, double B, double k_mix,
                                          LogBase base = LogBase::Two) {
    if (n < 1 || d < 1) throw DomainError("deep_splitting_bound: need n >= 1 and d >= 1");
    if (d > std::sqrt(20.0 * k_mix * n) * std::pow(2.0, n / 2.0)) {
        throw DomainError("deep_splitting_bound: need d <= sqrt(20 k n) 2^{n/2}");
    }
    detail::check_unitary_delta(delta);
    DeepSplitting s;
    s.bracket = unitary_bracket(delta);
    s.log2_gateset = std::log2(B) * log_in(d / (delta * delta), base);
    const double deep = 20.0 * k_mix * n * std::ldexp(1.0, n);
    s.blocks = std::floor(deep / d);
    const double head = std::ldexp(1.0, n) / (8.0 * s.log2_gateset) * s.bracket;
    s.line1 = (head - d) / s.blocks;
    s.line2 = d / (160.0 * k_mix * n * s.log2_gateset) * s.bracket - d * d / deep;
    s.line3 = d / (160.0 * k_mix * n * s.log2_gateset) * s.bracket - 1.0;
    const double tol = 1e-12 * std::max(std::abs(s.line1), std::abs(s.line2));
    s.chain_12 = s.line1 + tol >= s.line2;
    s.chain_23 = s.line2 + tol >= s.line3;
    s.vacuous = !(s.line3 > 0.0);
    return s;
}

// ---------------------------------------------------------------------------
// Binomial mixing with a uniformly gapped gate set

struct BinomialMixing {
    double value = 0;  // sum_j C(d,j) (1-l)^{d-j} l^j base(j)
    double ln_value = 0;
};

/// `log_base_fn(j)` returns ln base(j). The summands are assumed unimodal in
/// j (true for log-concave base). Small d is summed in full; otherwise a scan
/// with stride ~sd locates the largest term and terms further than 40 sd from
/// it are dropped. The peak can sit far from d*lambda when base decays.
inline BinomialMixing binomial_mixing(std::uint64_t d, double lambda, const std::function<double(std::uint64_t)>& log_base_fn) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("binomial_mixing: need lambda in [0, 1]");
    BinomialMixing r;
    if (lambda == 0.0 || lambda == 1.0) {
        r.ln_value = log_base_fn(lambda == 0.0 ? 0 : d);
        r.value = std::exp(r.ln_value);
        return r;
    }
    const long double L = lambda;
    const long double dd = static_cast<long double>(d);
    const long double lnL = std::log(L), ln1mL = std::log1p(-L);
    auto ln_weight = [&](std::uint64_t j) {
        const auto jj = static_cast<long double>(j);
        return std::lgamma(dd + 1.0L) - std::lgamma(jj + 1.0L) - std::lgamma(dd - jj + 1.0L) + jj * lnL + (dd - jj) * ln1mL;
    };
    std::uint64_t lo = 0, hi = d;
    if (d > (std::uint64_t{1} << 22)) {
        const long double sd = std::sqrt(dd * L * (1.0L - L));
        const auto stride = static_cast<std::uint64_t>(std::max<long double>(1.0L, std::floor(sd)));
        std::uint64_t peak = 0;
        long double best = -std::numeric_limits<long double>::infinity();
        for (std::uint64_t j = 0;; j = std::min(d, j + stride)) {
            const long double v = ln_weight(j) + static_cast<long double>(log_base_fn(j));
            if (v > best) {
                best = v;
                peak = j;
            }
            if (j == d) break;
        }
        const auto half = static_cast<std::uint64_t>(std::ceil(40.0L * sd + 40.0L)) + stride;
        lo = peak > half ? peak - half : 0;
        hi = std::min(d, peak + half);
    }
    const long double ratio = lnL - ln1mL;
    long double lw = ln_weight(lo);
    long double m = -std::numeric_limits<long double>::infinity();
    std::vector<long double> terms;
    terms.reserve(hi - lo + 1);
    for (std::uint64_t j = lo; j <= hi; ++j) {
        const long double term = lw + static_cast<long double>(log_base_fn(j));
        terms.push_back(term);
        m = std::max(m, term);
        lw += std::log((dd - static_cast<long double>(j)) / (static_cast<long double>(j) + 1.0L)) + ratio;
    }
    long double s = 0.0L;
    for (long double term : terms) s += std::exp(term - m);
    r.ln_value = static_cast<double>(m + std::log(s));
    r.value = std::exp(r.ln_value);
    return r;
}

/// (1 - lambda + e^{-1/c} lambda)^d: the exact sum for base(j) = e^{-j/c}.
inline double binomial_mixing_closed_form(std::uint64_t d, double lambda, double c) {
    return std::exp(static_cast<double>(d) * std::log1p(-lambda + std::exp(-1.0 / c) * lambda));
}

/// (1 - lambda/(2c))^d, the form after the convexity step.
inline double binomial_mixing_simplified(std::uint64_t d, double lambda, double c) {
    return std::exp(static_cast<double>(d) * std::log1p(-lambda / (2.0 * c)));
}

// ---------------------------------------------------------------------------
// Coupon collector on periodic nearest-neighbour pairs

struct CouponCollector {
    double coarse_bound = 0;     // n (1 - 1/n)^d
    double exponential_form = 0; // n e^{-d/n}
    double exact_union = 0;      // n (1 - 2/n)^d; each qubit lies in 2 of the n pairs
    double exact = -1;           // inclusion-exclusion, n <= 20 (else -1)
};

inline CouponCollector coupon_collector(int n, double d) {
    if (n < 2) throw DomainError("coupon_collector: need n >= 2");
    CouponCollector c;
    c.coarse_bound = n * std::pow(1.0 - 1.0 / n, d);
    c.exponential_form = n * std::exp(-d / n);
    c.exact_union = n == 2 ? (d >= 1 ? 0.0 : 2.0) : n * std::pow(1.0 - 2.0 / n, d);
    if (n <= 20) {
        // Pr[some qubit untouched] = sum_{S != {}} (-1)^{|S|+1} (a(S)/n)^d, a(S) = #pairs avoiding S.
        long double s = 0.0L;
        for (std::uint32_t S = 1; S < (1u << n); ++S) {
            int avoid = 0;
            for (int i = 0; i < n; ++i) {
                const int j = (i + 1) % n;
                if (!((S >> i) & 1u) && !((S >> j) & 1u)) ++avoid;
            }
            const long double term = std::pow(static_cast<long double>(avoid) / n, static_cast<long double>(d));
            s += (std::popcount(S) & 1) ? term : -term;
        }
        c.exact = static_cast<double>(s);
    }
    return c;
}

// ---------------------------------------------------------------------------
// Pure-state distances

struct FidelityThreshold {
    double overlap_sq = 0;   // 1 - delta^2: |<phi|psi>|^2 at trace distance delta
    double delta_prime = 0;  // 2 (1 - sqrt(1 - delta^2))
};

inline FidelityThreshold fidelity_tracenorm(double delta) {
    if (!(delta >= 0.0 && delta < 1.0)) throw DomainError("fidelity_tracenorm: need delta in [0, 1)");
    return {1.0 - delta * delta, 2.0 * (1.0 - std::sqrt(1.0 - delta * delta))};
}

/// sqrt(1 - |<phi|psi>|^2), the trace distance between pure states.
inline double pure_trace_distance_from_overlap(double overlap_abs) {
    return std::sqrt(std::max(0.0, 1.0 - overlap_abs * overlap_abs));
}

}  // namespace rqcm::bounds
