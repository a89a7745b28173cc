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
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rqcm/bitstring.hpp"
#include "rqcm/errors.hpp"
#include "rqcm/rng.hpp"
#include "rqcm/stats.hpp"

// Boolean Fourier analysis of signed-delta functions
//
//     f = sum_l (delta_{x_l} - delta_{x'_l})
//
// built from a pair of t-tuples of n-bit strings. Characters use the sign
// convention p_y(x) = (-1)^{<y,x>}, and every Fourier coefficient is kept as
// the exact integer 2^n * fhat(y) = sum_x f(x) p_y(x).

namespace rqcm {

/// Exact non-negative rational with a power-of-two or small denominator.
struct Ratio {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const Ratio& a, const Ratio& b) {
        return static_cast<unsigned __int128>(a.num) * b.den == static_cast<unsigned __int128>(b.num) * a.den;
    }
    friend bool operator<(const Ratio& a, const Ratio& b) {
        return static_cast<unsigned __int128>(a.num) * b.den < static_cast<unsigned __int128>(b.num) * a.den;
    }
    friend bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

// ---------------------------------------------------------------------------
// Tuple pairs and their signed-delta functions

class TuplePair {
  public:
    TuplePair(int n, std::vector<BitString> first, std::vector<BitString> second)
        : n_(n), first_(std::move(first)), second_(std::move(second)) {
        if (n < 1 || n > kMaxQubits) throw InputError("TuplePair: n must be in [1, 30]");
        if (first_.size() != second_.size()) {
            throw InputError("TuplePair: tuples must have equal length");
        }
        for (const auto* tuple : {&first_, &second_}) {
            for (const auto& x : *tuple) {
                if (x.size() != n) throw InputError("TuplePair: every string must have n bits");
            }
        }
    }

    /// Convenience constructor from text literals, e.g. ({"00","11"}, {"01","10"}).
    static TuplePair parse(const std::vector<std::string>& first, const std::vector<std::string>& second) {
        std::vector<BitString> a, b;
        for (const auto& s : first) a.push_back(BitString::parse(s));
        for (const auto& s : second) b.push_back(BitString::parse(s));
        const int n = !a.empty() ? a.front().size() : (!b.empty() ? b.front().size() : 1);
        return TuplePair(n, std::move(a), std::move(b));
    }

    int n() const { return n_; }
    int t() const { return static_cast<int>(first_.size()); }
    const std::vector<BitString>& first() const { return first_; }
    const std::vector<BitString>& second() const { return second_; }

    /// t minus the size of the multiset intersection of the two tuples.
    int reduced_length() const {
        auto a = first_, b = second_;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        std::vector<BitString> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
        return t() - static_cast<int>(common.size());
    }

    /// Equal as multisets (related by a permutation).
    bool permutation_related() const { return reduced_length() == 0; }

  private:
    int n_;
    std::vector<BitString> first_;
    std::vector<BitString> second_;
};

/// Sparse integer-valued function on {0,1}^n. Zero values are never stored.
class SignedCounter {
  public:
    explicit SignedCounter(int n) : n_(n) {}

    void add(std::uint32_t x, std::int64_t v) {
        if (v == 0) return;
        auto [it, inserted] = entries_.try_emplace(x, v);
        if (!inserted) {
            it->second += v;
            if (it->second == 0) entries_.erase(it);
        }
    }

    int n() const { return n_; }
    const std::map<std::uint32_t, std::int64_t>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t support_size() const { return entries_.size(); }

    std::int64_t at(std::uint32_t x) const {
        auto it = entries_.find(x);
        return it == entries_.end() ? 0 : it->second;
    }

    std::int64_t total() const {
        std::int64_t s = 0;
        for (const auto& [x, v] : entries_) s += v;
        return s;
    }

    std::int64_t norm2sq() const {
        std::int64_t s = 0;
        for (const auto& [x, v] : entries_) s += v * v;
        return s;
    }

    std::int64_t norm1() const {
        std::int64_t s = 0;
        for (const auto& [x, v] : entries_) s += v < 0 ? -v : v;
        return s;
    }

    friend bool operator==(const SignedCounter&, const SignedCounter&) = default;

  private:
    int n_;
    std::map<std::uint32_t, std::int64_t> entries_;
};

inline SignedCounter build_f(const TuplePair& pair) {
    SignedCounter f(pair.n());
    for (const auto& x : pair.first()) f.add(x.bits(), +1);
    for (const auto& x : pair.second()) f.add(x.bits(), -1);
    return f;
}

/// Removes strings common to both tuples (as multisets) until none remain.
/// The surviving strings keep their original relative order.
inline TuplePair reduce_pair(const TuplePair& pair) {
    std::map<BitString, int> pending;
    for (const auto& x : pair.second()) ++pending[x];
    std::map<BitString, int> cancel;
    for (const auto& x : pair.first()) {
        auto it = pending.find(x);
        if (it != pending.end() && it->second > 0) {
            --it->second;
            ++cancel[x];
        }
    }
    auto keep = [](const std::vector<BitString>& tuple, std::map<BitString, int> drop) {
        std::vector<BitString> out;
        for (const auto& x : tuple) {
            auto it = drop.find(x);
            if (it != drop.end() && it->second > 0) {
                --it->second;
            } else {
                out.push_back(x);
            }
        }
        return out;
    };
    return TuplePair(pair.n(), keep(pair.first(), cancel), keep(pair.second(), cancel));
}

// ---------------------------------------------------------------------------
// Fourier coefficients

/// 2^n * fhat(y), evaluated directly over the support of f.
inline std::int64_t fourier_coefficient(const SignedCounter& f, const BitString& y) {
    if (y.size() != f.n()) throw InputError("fourier_coefficient: dimension mismatch");
    std::int64_t s = 0;
    for (const auto& [x, v] : f.entries()) s += v * monomial_sign(y.bits(), x);
    return s;
}

/// In-place unnormalized Walsh-Hadamard transform; size must be a power of two.
template <class T>
void fwht(std::span<T> a) {
    for (std::size_t h = 1; h < a.size(); h <<= 1) {
        for (std::size_t i = 0; i < a.size(); i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                const T u = a[j];
                const T v = a[j + h];
                a[j] = u + v;
                a[j + h] = u - v;
            }
        }
    }
}

inline constexpr int kMaxDenseFourierQubits = 24;

/// All 2^n coefficients by direct sparse evaluation, one y at a time.
inline std::vector<std::int64_t> coefficients_direct(const SignedCounter& f) {
    if (f.n() > kMaxDenseFourierQubits) throw CapacityError("coefficients_direct: n exceeds 24");
    const std::uint32_t N = std::uint32_t{1} << f.n();
    std::vector<std::int64_t> out(N, 0);
    for (std::uint32_t y = 0; y < N; ++y) {
        std::int64_t s = 0;
        for (const auto& [x, v] : f.entries()) s += v * monomial_sign(y, x);
        out[y] = s;
    }
    return out;
}

/// All 2^n coefficients by a dense fast Walsh-Hadamard transform.
inline std::vector<std::int64_t> coefficients_fwht(const SignedCounter& f) {
    if (f.n() > kMaxDenseFourierQubits) throw CapacityError("coefficients_fwht: n exceeds 24");
    std::vector<std::int64_t> a(std::size_t{1} << f.n(), 0);
    for (const auto& [x, v] : f.entries()) a[x] = v;
    fwht(std::span<std::int64_t>(a));
    return a;
}

struct FourierReport {
    int n = 1;
    std::uint64_t support_size = 0;
    /// coefficient value 2^n * fhat(y) -> number of y attaining it
    std::map<std::int64_t, std::uint64_t> histogram;

    std::uint64_t dimension() const { return std::uint64_t{1} << n; }
    std::uint64_t zero_count() const { return dimension() - support_size; }
    Ratio distinguishing_prob() const { return {support_size, dimension()}; }
    Ratio zero_prob() const { return {zero_count(), dimension()}; }

    friend bool operator==(const FourierReport&, const FourierReport&) = default;
};

inline FourierReport report_from_coefficients(int n, std::span<const std::int64_t> coeffs) {
    FourierReport r;
    r.n = n;
    for (std::int64_t c : coeffs) {
        ++r.histogram[c];
        if (c != 0) ++r.support_size;
    }
    return r;
}

inline constexpr int kMaxSubspaceQubits = 26;

/// Exact Fourier support and coefficient histogram for any n <= 30.
///
/// The coefficient at y depends on y only through the inner products <y, b_i>
/// with a basis b_1..b_k of the span of supp(f). The map y -> (<y,b_i>)_i is
/// onto GF(2)^k with fibers of size 2^{n-k}, so a transform of length 2^k on
/// the coordinates of the support points gives every coefficient together
/// with its multiplicity.
inline FourierReport support_report(const SignedCounter& f) {
    const int n = f.n();
    // Reduced row-echelon basis of span(supp f), keyed by pivot bit.
    std::vector<std::uint32_t> basis;
    std::vector<int> pivots;
    for (const auto& [x, v] : f.entries()) {
        std::uint32_t r = x;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if ((r >> pivots[i]) & 1u) r ^= basis[i];
        }
        if (r == 0) continue;
        const int p = 31 - std::countl_zero(r);
        for (auto& b : basis) {
            if ((b >> p) & 1u) b ^= r;
        }
        basis.push_back(r);
        pivots.push_back(p);
    }
    const int k = static_cast<int>(basis.size());
    if (k > kMaxSubspaceQubits) {
        throw CapacityError("support_report: support spans more than 2^26 characters");
    }
    // In RREF coordinates are the pivot bits of the vector.
    std::vector<std::int64_t> g(std::size_t{1} << k, 0);
    for (const auto& [x, v] : f.entries()) {
        std::uint32_t c = 0;
        for (int i = 0; i < k; ++i) c |= ((x >> pivots[static_cast<std::size_t>(i)]) & 1u) << i;
        g[c] += v;
    }
    fwht(std::span<std::int64_t>(g));
    FourierReport r;
    r.n = n;
    const std::uint64_t fiber = std::uint64_t{1} << (n - k);
    for (std::int64_t c : g) {
        r.histogram[c] += fiber;
        if (c != 0) r.support_size += fiber;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Distinguishing probabilities

struct ParsevalResult {
    int r = 0;
    Ratio prob;   // Pr_y[ fhat(y) != 0 ]
    Ratio bound;  // 1 / (2r)
    bool holds = false;
};

/// r is the reduced tuple length, i.e. half the l1 norm of f.
inline ParsevalResult parseval_check(const SignedCounter& f) {
    const auto r = static_cast<int>(f.norm1() / 2);
    if (r == 0) throw DegeneratePairError("parseval_check: tuples are permutation-related, f = 0");
    const auto report = support_report(f);
    ParsevalResult out;
    out.r = r;
    out.prob = report.distinguishing_prob();
    out.bound = {1, 2 * static_cast<std::uint64_t>(r)};
    out.holds = out.bound <= out.prob;
    return out;
}

inline ParsevalResult parseval_check(const TuplePair& pair) { return parseval_check(build_f(pair)); }

/// The pair whose f is the character p_y: the first tuple lists {x : <y,x> = 0}
/// and the second {x : <y,x> = 1}, each in increasing order. Needs y != 0.
inline TuplePair parity_pair(const BitString& y) {
    if (y.is_zero()) throw InputError("parity_pair: y must be nonzero");
    const int n = y.size();
    std::vector<BitString> even, odd;
    for (std::uint32_t x = 0; x < (std::uint32_t{1} << n); ++x) {
        (dot_parity(y.bits(), x) ? odd : even).emplace_back(n, x);
    }
    return TuplePair(n, std::move(even), std::move(odd));
}

// ---------------------------------------------------------------------------
// Canonical enumeration of tuple pairs

namespace detail {

inline std::uint64_t factorial_u64(int k) {
    std::uint64_t f = 1;
    for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

inline double log2_binomial(double a, double b) {
    return (std::lgamma(a + 1) - std::lgamma(b + 1) - std::lgamma(a - b + 1)) / std::log(2.0);
}

}  // namespace detail

/// A sorted t-tuple together with the number of ordered tuples it represents.
struct CanonicalTuple {
    std::vector<std::uint32_t> values;  // nondecreasing
    std::uint64_t weight = 1;           // t! / prod(multiplicity!)
};

/// All multisets of size t drawn from [0, 2^n), in lexicographic order.
inline std::vector<CanonicalTuple> canonical_tuples(int n, int t) {
    const std::uint32_t N = std::uint32_t{1} << n;
    std::vector<CanonicalTuple> out;
    std::vector<std::uint32_t> cur(static_cast<std::size_t>(t), 0);
    const std::uint64_t tfact = detail::factorial_u64(t);
    for (;;) {
        std::uint64_t denom = 1;
        int run = 1;
        for (int i = 1; i <= t; ++i) {
            if (i < t && cur[static_cast<std::size_t>(i)] == cur[static_cast<std::size_t>(i - 1)]) {
                ++run;
            } else {
                denom *= detail::factorial_u64(run);
                run = 1;
            }
        }
        out.push_back({cur, tfact / denom});
        int i = t - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == N - 1) --i;
        if (i < 0) break;
        const std::uint32_t v = cur[static_cast<std::size_t>(i)] + 1;
        for (int j = i; j < t; ++j) cur[static_cast<std::size_t>(j)] = v;
    }
    return out;
}

inline constexpr double kMaxCanonicalPairsLog2 = 24.0;

/// Number of canonical pairs, C(2^n + t - 1, t)^2, as log2.
inline double canonical_pair_count_log2(int n, int t) {
    return 2.0 * detail::log2_binomial(std::ldexp(1.0, n) + t - 1, t);
}

/// Calls fn(first, second, weight) for every pair of canonical tuples; the
/// weights sum to 2^{2nt}.
template <class Fn>
void for_each_canonical_pair(int n, int t, Fn&& fn) {
    if (n < 1 || n > kMaxQubits || t < 1) throw InputError("canonical enumeration: need n >= 1, t >= 1");
    if (canonical_pair_count_log2(n, t) > kMaxCanonicalPairsLog2 + 1e-9) {
        throw CapacityError("canonical enumeration: more than 2^24 canonical pairs");
    }
    const auto tuples = canonical_tuples(n, t);
    for (const auto& a : tuples) {
        for (const auto& b : tuples) fn(a, b, a.weight * b.weight);
    }
}

inline SignedCounter build_f(int n, std::span<const std::uint32_t> first, std::span<const std::uint32_t> second) {
    SignedCounter f(n);
    for (auto x : first) f.add(x, +1);
    for (auto x : second) f.add(x, -1);
    return f;
}

// ---------------------------------------------------------------------------
// Low-support counting and the random-tuple support experiment

struct SampledMode {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

struct LowSupportResult {
    int n = 0;
    int t = 0;
    double A = 0;
    bool exhaustive = true;
    Ratio exact_fraction;  // exhaustive mode only
    double fraction = 0.0;
    Interval ci;           // Wilson interval in sampled mode; [f, f] when exhaustive
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double bound_log2 = 0.0;  // log2( t! 2^{(n+1)A} 2^{-nt} )
    double bound = 0.0;
    bool vacuous = false;     // bound >= 1
};

inline constexpr double kMaxExhaustivePairsLog2 = 24.0;

namespace detail {

inline void fill_bound(LowSupportResult& r) {
    r.bound_log2 = std::lgamma(r.t + 1.0) / std::log(2.0) + (r.n + 1) * r.A - static_cast<double>(r.n) * r.t;
    r.bound = std::exp2(r.bound_log2);
    r.vacuous = r.bound_log2 >= 0.0;
}

inline void draw_tuples(int n, int t, Stream& rng, std::vector<std::uint32_t>& a, std::vector<std::uint32_t>& b) {
    const std::uint64_t N = std::uint64_t{1} << n;
    a.resize(static_cast<std::size_t>(t));
    b.resize(static_cast<std::size_t>(t));
    for (auto& x : a) x = static_cast<std::uint32_t>(rng.below(N));
    for (auto& x : b) x = static_cast<std::uint32_t>(rng.below(N));
}

}  // namespace detail

/// Fraction of tuple pairs whose Fourier support is smaller than A, by
/// weighted canonical enumeration (exact).
inline LowSupportResult low_support_fraction(int n, int t, double A) {
    if (2.0 * n * t > kMaxExhaustivePairsLog2) {
        throw CapacityError("low_support_fraction: exhaustive mode needs 2^{2nt} <= 2^24");
    }
    LowSupportResult r;
    r.n = n;
    r.t = t;
    r.A = A;
    std::uint64_t hits = 0;
    for_each_canonical_pair(n, t, [&](const CanonicalTuple& a, const CanonicalTuple& b, std::uint64_t w) {
        const auto rep = support_report(build_f(n, a.values, b.values));
        if (static_cast<double>(rep.support_size) < A) hits += w;
    });
    r.exact_fraction = {hits, std::uint64_t{1} << (2 * n * t)};
    r.fraction = r.exact_fraction.value();
    r.ci = {r.fraction, r.fraction};
    detail::fill_bound(r);
    return r;
}

/// Sampled variant: trial i draws its 2t strings from Stream(seed, i).
inline LowSupportResult low_support_fraction(int n, int t, double A, SampledMode mode, int workers = 1) {
    if (n < 1 || n > kMaxQubits || t < 1) throw InputError("low_support_fraction: need 1 <= n <= 30, t >= 1");
    LowSupportResult r;
    r.n = n;
    r.t = t;
    r.A = A;
    r.exhaustive = false;
    r.trials = mode.trials;
    r.seed = mode.seed;
    const auto hits = run_trials<std::uint8_t>(mode.trials, workers, [&](std::uint64_t i) -> std::uint8_t {
        Stream rng(mode.seed, i, streams::kTuples);
        std::vector<std::uint32_t> a, b;
        detail::draw_tuples(n, t, rng, a, b);
        return static_cast<double>(support_report(build_f(n, a, b)).support_size) < A;
    });
    std::uint64_t count = 0;
    for (auto h : hits) count += h;
    r.fraction = mode.trials ? static_cast<double>(count) / static_cast<double>(mode.trials) : 0.0;
    r.ci = wilson_interval(count, mode.trials);
    detail::fill_bound(r);
    return r;
}

struct SupportTailResult {
    int n = 0;
    int t = 0;
    double c = 0;
    double threshold = 0;  // 2^n / n^c
    double tail_prob = 0;  // Pr[ support < threshold ]
    Interval ci;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double support_min = 0, support_median = 0, support_max = 0;
};

/// Monte Carlo estimate of Pr[ |supp fhat| < 2^n / n^c ] for uniformly drawn
/// tuple pairs, with a Wilson interval and support-size quantiles.
inline SupportTailResult random_support_tail(int n, int t, double c, std::uint64_t trials, std::uint64_t seed,
                                             int workers = 1) {
    if (n < 1 || n > kMaxQubits || t < 1) throw InputError("random_support_tail: need 1 <= n <= 30, t >= 1");
    if (trials < 1) throw InputError("random_support_tail: trials must be >= 1");
    SupportTailResult r;
    r.n = n;
    r.t = t;
    r.c = c;
    r.threshold = std::ldexp(1.0, n) / std::pow(static_cast<double>(n), c);
    r.trials = trials;
    r.seed = seed;
    const auto supports = run_trials<double>(trials, workers, [&](std::uint64_t i) {
        Stream rng(seed, i, streams::kTuples);
        std::vector<std::uint32_t> a, b;
        detail::draw_tuples(n, t, rng, a, b);
        return static_cast<double>(support_report(build_f(n, a, b)).support_size);
    });
    std::uint64_t below = 0;
    for (double s : supports) below += s < r.threshold;
    r.tail_prob = static_cast<double>(below) / static_cast<double>(trials);
    r.ci = wilson_interval(below, trials);
    r.support_min = quantile(supports, 0.0);
    r.support_median = quantile(supports, 0.5);
    r.support_max = quantile(supports, 1.0);
    return r;
}

}  // namespace rqcm
