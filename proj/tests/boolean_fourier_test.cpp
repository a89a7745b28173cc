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

#include "rqcm/boolean_fourier.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace rqcm;

namespace {

// Brute-force oracle: 2^n fhat(y) from the definition, for every y.
std::vector<std::int64_t> brute_coefficients(int n, const std::vector<std::uint32_t>& a,
                                             const std::vector<std::uint32_t>& b) {
    std::vector<std::int64_t> out(std::size_t{1} << n);
    for (std::uint32_t y = 0; y < out.size(); ++y) {
        std::int64_t s = 0;
        for (auto x : a) s += (__builtin_popcount(x & y) % 2) ? -1 : 1;
        for (auto x : b) s -= (__builtin_popcount(x & y) % 2) ? -1 : 1;
        out[y] = s;
    }
    return out;
}

std::vector<std::uint32_t> random_tuple(int n, int t, Stream& rng) {
    std::vector<std::uint32_t> v(static_cast<std::size_t>(t));
    for (auto& x : v) x = static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << n));
    return v;
}

}  // namespace

TEST(SignedDelta, FourierOfSingleDifference) {
    // f = delta_00 - delta_11 at n=2: coefficients 1 - p_y(11) = {0, 2, 2, 0}.
    const auto pair = TuplePair::parse({"00"}, {"11"});
    const auto f = build_f(pair);
    EXPECT_EQ(f.support_size(), 2u);
    const auto c = coefficients_direct(f);
    EXPECT_EQ(c, (std::vector<std::int64_t>{0, 2, 2, 0}));
    EXPECT_EQ(support_report(f).support_size, 2u);
}

TEST(SignedDelta, PermutedTuplesCancel) {
    const auto pair = TuplePair::parse({"01", "10", "10"}, {"10", "01", "10"});
    EXPECT_TRUE(pair.permutation_related());
    EXPECT_TRUE(build_f(pair).empty());
    EXPECT_THROW(parseval_check(pair), DegeneratePairError);
    const auto r = reduce_pair(pair);
    EXPECT_EQ(r.t(), 0);
}

TEST(SignedDelta, ReductionKeepsOrderAndF) {
    const auto pair = TuplePair::parse({"11", "00", "01"}, {"10", "00", "11"});
    const auto r = reduce_pair(pair);
    ASSERT_EQ(r.t(), 1);
    EXPECT_EQ(r.first()[0].str(), "01");
    EXPECT_EQ(r.second()[0].str(), "10");
    EXPECT_EQ(build_f(r), build_f(pair));
    EXPECT_EQ(pair.reduced_length(), 1);
}

TEST(Fourier, ThreeRoutesAgreeWithBruteForce) {
    for (int n = 1; n <= 8; ++n) {
        for (int t : {1, 2, 5, 13}) {
            for (int rep = 0; rep < 20; ++rep) {
                Stream rng(7, static_cast<std::uint64_t>(1000 * n + 10 * t + rep));
                const auto a = random_tuple(n, t, rng), b = random_tuple(n, t, rng);
                const auto f = build_f(n, a, b);
                const auto want = brute_coefficients(n, a, b);
                EXPECT_EQ(coefficients_direct(f), want);
                EXPECT_EQ(coefficients_fwht(f), want);
                const auto rep_dense = report_from_coefficients(n, want);
                const auto rep_sub = support_report(f);
                EXPECT_EQ(rep_sub.support_size, rep_dense.support_size);
                EXPECT_EQ(rep_sub.histogram, rep_dense.histogram);
            }
        }
    }
}

TEST(Fourier, ParsevalIdentity) {
    // sum_y (2^n fhat(y))^2 = 2^n ||f||_2^2
    Stream rng(11, 0);
    for (int n = 1; n <= 10; ++n) {
        const auto f = build_f(n, random_tuple(n, 6, rng), random_tuple(n, 6, rng));
        std::int64_t s = 0;
        for (auto c : coefficients_fwht(f)) s += c * c;
        EXPECT_EQ(s, (std::int64_t{1} << n) * f.norm2sq());
    }
}

TEST(Fourier, SubspaceRouteReachesThirtyQubits) {
    const int n = 30;
    Stream rng(3, 0);
    const auto a = random_tuple(n, 4, rng), b = random_tuple(n, 4, rng);
    const auto rep = support_report(build_f(n, a, b));
    std::uint64_t total = 0;
    for (const auto& [v, m] : rep.histogram) total += m;
    EXPECT_EQ(total, std::uint64_t{1} << n);
    // Independent check of a few coefficients by direct evaluation.
    const auto f = build_f(n, a, b);
    std::map<std::int64_t, int> seen;
    for (int i = 0; i < 64; ++i) {
        const BitString y(n, static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << n)));
        const auto c = fourier_coefficient(f, y);
        EXPECT_TRUE(rep.histogram.count(c)) << "coefficient " << c << " missing from histogram";
    }
    EXPECT_THROW(coefficients_fwht(f), CapacityError);
}

TEST(Parseval, ClosedFormExamples) {
    // r = 1, x != x': fhat(y) != 0 iff <y, x ^ x'> = 1, probability exactly 1/2.
    const auto p = parseval_check(TuplePair::parse({"010"}, {"111"}));
    EXPECT_EQ(p.r, 1);
    EXPECT_EQ(p.prob, (Ratio{4, 8}));
    EXPECT_TRUE(p.holds);
    // The bound 1/(2r) is attained: f = d00 + d01 - d10 - d11 has support {10}.
    const auto q = parseval_check(TuplePair::parse({"00", "01"}, {"10", "11"}));
    EXPECT_EQ(q.r, 2);
    EXPECT_EQ(q.prob, (Ratio{1, 4}));
    EXPECT_EQ(q.bound, (Ratio{1, 4}));
    EXPECT_TRUE(q.holds);
}

TEST(Parseval, ExhaustiveSmallCasesViaBruteForce) {
    // Independent of canonical enumeration: every ordered pair at n=2, t=2.
    for (std::uint32_t code = 0; code < 256; ++code) {
        const std::vector<std::uint32_t> a{code & 3, (code >> 2) & 3}, b{(code >> 4) & 3, (code >> 6) & 3};
        const auto c = brute_coefficients(2, a, b);
        std::multiset<std::uint32_t> ma(a.begin(), a.end()), mb(b.begin(), b.end());
        if (ma == mb) continue;
        int common = 0;
        for (auto x : ma) {
            auto it = mb.find(x);
            if (it != mb.end()) {
                mb.erase(it);
                ++common;
            }
        }
        const int r = 2 - common;
        int nonzero = 0;
        for (auto v : c) nonzero += v != 0;
        EXPECT_GE(2 * r * nonzero, 4) << "code " << code;
        EXPECT_TRUE(parseval_check(build_f(2, a, b)).holds);
    }
}

TEST(ParityPair, IsTheCharacter) {
    const BitString y = BitString::parse("101");
    const auto pair = parity_pair(y);
    EXPECT_EQ(pair.t(), 4);
    const auto f = build_f(pair);
    for (std::uint32_t x = 0; x < 8; ++x) EXPECT_EQ(f.at(x), monomial_sign(y.bits(), x));
    const auto rep = support_report(f);
    EXPECT_EQ(rep.support_size, 1u);
    EXPECT_EQ(rep.zero_prob(), (Ratio{7, 8}));
    EXPECT_THROW(parity_pair(BitString::zeros(3)), InputError);
}

TEST(Canonical, WeightsCountOrderedPairs) {
    for (int n = 1; n <= 3; ++n) {
        for (int t = 1; t <= 3; ++t) {
            std::uint64_t total = 0, count = 0;
            for_each_canonical_pair(n, t, [&](const CanonicalTuple&, const CanonicalTuple&, std::uint64_t w) {
                total += w;
                ++count;
            });
            EXPECT_EQ(total, std::uint64_t{1} << (2 * n * t));
            const double c = std::exp2(canonical_pair_count_log2(n, t));
            EXPECT_NEAR(static_cast<double>(count), c, 1e-6 * c);
        }
    }
    EXPECT_THROW(for_each_canonical_pair(6, 8, [](auto&&...) {}), CapacityError);
}

TEST(Canonical, TuplesAreSortedAndDistinct) {
    const auto ts = canonical_tuples(2, 3);
    EXPECT_EQ(ts.size(), 20u);  // C(4 + 3 - 1, 3)
    std::set<std::vector<std::uint32_t>> seen;
    for (const auto& t : ts) {
        EXPECT_TRUE(std::is_sorted(t.values.begin(), t.values.end()));
        EXPECT_TRUE(seen.insert(t.values).second);
    }
}

TEST(LowSupport, ExhaustiveMatchesBruteForce) {
    // n=2, t=1, A=1: support 0 only when x == x', probability 1/4.
    const auto r = low_support_fraction(2, 1, 1.0);
    EXPECT_EQ(r.exact_fraction, (Ratio{4, 16}));
    // n=2, t=2, A=2 by direct enumeration of all 256 ordered pairs.
    std::uint64_t hits = 0;
    for (std::uint32_t code = 0; code < 256; ++code) {
        const std::vector<std::uint32_t> a{code & 3, (code >> 2) & 3}, b{(code >> 4) & 3, (code >> 6) & 3};
        int nz = 0;
        for (auto v : brute_coefficients(2, a, b)) nz += v != 0;
        hits += nz < 2;
    }
    EXPECT_EQ(low_support_fraction(2, 2, 2.0).exact_fraction, (Ratio{hits, 256}));
    EXPECT_THROW(low_support_fraction(4, 4, 2.0), CapacityError);
}

TEST(LowSupport, SampledAgreesWithExhaustive) {
    const auto ex = low_support_fraction(3, 2, 4.0);
    const auto mc = low_support_fraction(3, 2, 4.0, SampledMode{20000, 5}, 2);
    EXPECT_FALSE(mc.exhaustive);
    const double se = std::sqrt(ex.fraction * (1 - ex.fraction) / 20000.0);
    EXPECT_NEAR(mc.fraction, ex.fraction, 4 * se);
    EXPECT_LE(mc.ci.low, mc.fraction);
    EXPECT_GE(mc.ci.high, mc.fraction);
    EXPECT_EQ(mc.fraction, low_support_fraction(3, 2, 4.0, SampledMode{20000, 5}, 1).fraction);
}

TEST(LowSupport, SupportBoundIsReportedEvenWhenVacuous) {
    const auto r = low_support_fraction(2, 2, 3.0);
    EXPECT_NEAR(r.bound_log2, 1.0 + 3.0 * 3.0 - 4.0, 1e-12);
    EXPECT_TRUE(r.vacuous);
}

TEST(SupportTail, TinyCaseClosedForm) {
    // n=2, t=1, threshold 2^2/2 = 2: only x == x' has support < 2.
    const auto r = random_support_tail(2, 1, 1.0, 40000, 9);
    EXPECT_DOUBLE_EQ(r.threshold, 2.0);
    EXPECT_NEAR(r.tail_prob, 0.25, 4 * std::sqrt(0.25 * 0.75 / 40000));
    EXPECT_LE(r.support_min, r.support_median);
    EXPECT_LE(r.support_median, r.support_max);
}
