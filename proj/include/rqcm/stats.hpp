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
#include <span>
#include <thread>
#include <vector>

namespace rqcm {

struct Estimate {
    double mean = 0.0;
    double stderr_ = 0.0;  // standard error of the mean
    std::uint64_t trials = 0;

    /// |mean - target| <= sigmas * stderr, with a tiny absolute slack for
    /// zero-variance samples that hit the target exactly.
    bool within(double target, double sigmas = 3.0) const {
        return std::abs(mean - target) <= sigmas * stderr_ + 1e-12;
    }
};

/// Two-pass sample mean and standard error. Summation order is the input order.
inline Estimate summarize(std::span<const double> xs) {
    Estimate e;
    e.trials = xs.size();
    if (xs.empty()) return e;
    double sum = 0.0;
    for (double x : xs) sum += x;
    e.mean = sum / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - e.mean) * (x - e.mean);
        const double var = ss / static_cast<double>(xs.size() - 1);
        e.stderr_ = std::sqrt(var / static_cast<double>(xs.size()));
    }
    return e;
}

struct Interval {
    double low = 0.0;
    double high = 1.0;
};

/// Wilson score interval for a binomial proportion.
inline Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

/// Evaluates fn(i) for i in [0, count) on `workers` threads and returns the
/// results indexed by i. Each trial must derive its randomness from i alone;
/// the output is then independent of the worker count.
template <class T, class Fn>
std::vector<T> run_trials(std::uint64_t count, int workers, Fn&& fn) {
    std::vector<T> out(count);
    const auto w = static_cast<std::uint64_t>(std::max(1, workers));
    if (w == 1 || count < 2) {
        for (std::uint64_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    {
        std::vector<std::jthread> pool;
        pool.reserve(w);
        for (std::uint64_t k = 0; k < w; ++k) {
            pool.emplace_back([&, k] {
                for (std::uint64_t i = k; i < count; i += w) out[i] = fn(i);
            });
        }
    }
    return out;
}

/// Empirical quantile with the nearest-rank rule on a sorted copy.
inline double quantile(std::vector<double> xs, double q) {
    if (xs.empty()) return 0.0;
    std::sort(xs.begin(), xs.end());
    const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(xs.size())));
    return xs[std::min(xs.size() - 1, rank == 0 ? 0 : rank - 1)];
}

}  // namespace rqcm
