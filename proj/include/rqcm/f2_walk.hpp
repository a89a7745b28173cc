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
#include <deque>
#include <span>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include "json.hpp"

#include "rqcm/bitstring.hpp"
#include "rqcm/errors.hpp"
#include "rqcm/f2_matrix.hpp"
#include "rqcm/rng.hpp"

// The random walk sigma on the group of reversible (CNOT-generated) circuits:
// each step applies a uniformly random element of GL(2,2) to a uniformly
// random periodic nearest-neighbour pair.

namespace rqcm {

struct SigmaStep {
    int site = 0;
    int local = 0;  // index into local_group()
    F2Matrix matrix = F2Matrix::identity(2);
};

inline SigmaStep sample_sigma_step(int n, Stream& rng) {
    if (n < 2) throw InputError("sample_sigma_step: need n >= 2");
    SigmaStep s;
    s.site = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    s.local = static_cast<int>(rng.below(6));
    s.matrix = embed_local(local_group()[static_cast<std::size_t>(s.local)], n, s.site);
    return s;
}

/// All 6n (site, local element) generators of sigma, each with weight 1/(6n).
inline std::vector<F2Matrix> sigma_generators(int n) {
    std::vector<F2Matrix> gens;
    for (int site = 0; site < n; ++site) {
        for (const auto& g : local_group()) gens.push_back(embed_local(g, n, site));
    }
    return gens;
}

inline constexpr int kMaxGroupQubits = 4;

/// The enumerated group together with the one-step kernel of sigma.
struct GroupTable {
    int n = 0;
    std::vector<F2Matrix> elements;  // sorted; elements[identity_index] is 1
    std::unordered_map<std::uint64_t, std::uint32_t> index;
    std::uint32_t identity_index = 0;
    /// Distinct generators (as element indices) with their sigma probabilities.
    std::vector<std::uint32_t> gen_index;
    std::vector<double> gen_weight;
    /// step[g * gens + s] = index of generator_s * element_g
    std::vector<std::uint32_t> step;

    std::size_t size() const { return elements.size(); }
    std::size_t generators() const { return gen_index.size(); }

    std::uint32_t lookup(const F2Matrix& m) const {
        auto it = index.find(m.key());
        if (it == index.end()) throw InputError("GroupTable: matrix is not in the group");
        return it->second;
    }
};

/// Closure of the embedded nearest-neighbour generators, by breadth-first search.
inline GroupTable enumerate_group(int n) {
    if (n < 2) throw InputError("enumerate_group: need n >= 2");
    if (n > kMaxGroupQubits) throw CapacityError("enumerate_group: n > 4 exceeds the table limit");
    const auto raw = sigma_generators(n);

    std::unordered_map<std::uint64_t, F2Matrix> seen;
    std::deque<F2Matrix> frontier{F2Matrix::identity(n)};
    seen.emplace(F2Matrix::identity(n).key(), F2Matrix::identity(n));
    while (!frontier.empty()) {
        const auto g = frontier.front();
        frontier.pop_front();
        for (const auto& s : raw) {
            auto h = s * g;
            if (seen.emplace(h.key(), h).second) frontier.push_back(std::move(h));
        }
    }

    GroupTable t;
    t.n = n;
    for (auto& [k, m] : seen) t.elements.push_back(m);
    std::sort(t.elements.begin(), t.elements.end());
    for (std::uint32_t i = 0; i < t.elements.size(); ++i) t.index.emplace(t.elements[i].key(), i);
    t.identity_index = t.lookup(F2Matrix::identity(n));

    std::vector<double> weight_by_index(t.size(), 0.0);
    for (const auto& s : raw) weight_by_index[t.lookup(s)] += 1.0 / static_cast<double>(raw.size());
    for (std::uint32_t i = 0; i < t.size(); ++i) {
        if (weight_by_index[i] > 0) {
            t.gen_index.push_back(i);
            t.gen_weight.push_back(weight_by_index[i]);
        }
    }
    t.step.resize(t.size() * t.generators());
    for (std::size_t g = 0; g < t.size(); ++g) {
        for (std::size_t s = 0; s < t.generators(); ++s) {
            t.step[g * t.generators() + s] = t.lookup(t.elements[t.gen_index[s]] * t.elements[g]);
        }
    }
    return t;
}

inline nlohmann::json group_table_json(const GroupTable& t) {
    nlohmann::json elements = nlohmann::json::array();
    for (const auto& m : t.elements) elements.push_back(m.rows());
    return {{"n", t.n}, {"size", t.size()}, {"row_layout", "bit n-1-c holds column c"}, {"elements", elements}};
}

// ---------------------------------------------------------------------------
// Exact distributions

struct WalkDistribution {
    std::uint64_t steps = 0;
    std::vector<double> probs;
};

inline constexpr double kNormalizationGuard = 1e-12;

/// Convolution powers of sigma started from the identity. Each step checks
/// that the mass is still 1 within kNormalizationGuard.
class WalkEvolution {
  public:
    explicit WalkEvolution(const GroupTable& table) : table_(&table), next_(table.size(), 0.0) {
        dist_.probs.assign(table.size(), 0.0);
        dist_.probs[table.identity_index] = 1.0;
    }

    void advance() {
        const auto& t = *table_;
        std::fill(next_.begin(), next_.end(), 0.0);
        const std::size_t S = t.generators();
        for (std::size_t g = 0; g < t.size(); ++g) {
            const double p = dist_.probs[g];
            if (p == 0.0) continue;
            for (std::size_t s = 0; s < S; ++s) next_[t.step[g * S + s]] += p * t.gen_weight[s];
        }
        double mass = 0.0;
        for (double p : next_) mass += p;
        if (std::abs(mass - 1.0) > kNormalizationGuard) {
            throw NumericalError("WalkEvolution: total mass drifted to " + std::to_string(mass));
        }
        std::swap(dist_.probs, next_);
        ++dist_.steps;
    }

    const WalkDistribution& current() const { return dist_; }

  private:
    const GroupTable* table_;
    WalkDistribution dist_;
    std::vector<double> next_;
};

inline WalkDistribution exact_walk_distribution(const GroupTable& table, std::uint64_t k) {
    WalkEvolution ev(table);
    for (std::uint64_t i = 0; i < k; ++i) ev.advance();
    return ev.current();
}

using Rational = boost::multiprecision::cpp_rational;

/// Exact rational k-step distribution, offered only at n = 2 where the
/// denominators stay small.
inline std::vector<Rational> exact_walk_distribution_rational(const GroupTable& table, std::uint64_t k) {
    if (table.n != 2) throw CapacityError("rational walk distributions are offered only at n = 2");
    const auto raw = sigma_generators(2);
    std::vector<Rational> w(table.generators());
    for (const auto& s : raw) {
        const auto it = std::find(table.gen_index.begin(), table.gen_index.end(), table.lookup(s));
        w[static_cast<std::size_t>(it - table.gen_index.begin())] += Rational(1, static_cast<long>(raw.size()));
    }
    std::vector<Rational> dist(table.size()), next(table.size());
    dist[table.identity_index] = 1;
    const std::size_t S = table.generators();
    for (std::uint64_t i = 0; i < k; ++i) {
        std::fill(next.begin(), next.end(), Rational(0));
        for (std::size_t g = 0; g < table.size(); ++g) {
            if (dist[g] == 0) continue;
            for (std::size_t s = 0; s < S; ++s) next[table.step[g * S + s]] += dist[g] * w[s];
        }
        std::swap(dist, next);
    }
    return dist;
}

inline double tv_to_uniform(std::span<const double> probs) {
    const double u = 1.0 / static_cast<double>(probs.size());
    double s = 0.0;
    for (double p : probs) s += std::abs(p - u);
    return 0.5 * s;
}

/// Comparison-technique rate eta / diam^2 with eta = 1/(6n), the chance of
/// one specific local generator. diam = 9n^2 gives 1/(486 n^5).
inline double comparison_rate(int n, double diameter) { return 1.0 / (6.0 * n * diameter * diameter); }

/// The rounded rate 1/(500 n^5) used by default.
inline double default_tv_rate(int n) { return 1.0 / (500.0 * std::pow(n, 5)); }

/// log2 of 2^{n^2+n} (1 - rate)^k.
inline double tv_step_bound_log2(int n, double k, double rate) {
    return static_cast<double>(n) * n + n + k * std::log2(1.0 - rate);
}
inline double tv_step_bound_log2(int n, double k) { return tv_step_bound_log2(n, k, default_tv_rate(n)); }

inline double tv_step_bound(int n, double k, double rate) { return std::exp2(tv_step_bound_log2(n, k, rate)); }
inline double tv_step_bound(int n, double k) { return tv_step_bound(n, k, default_tv_rate(n)); }

/// Smallest k with the closed-form bound <= 1.
inline std::uint64_t tv_first_useful_step(int n, double rate) {
    auto k = static_cast<std::uint64_t>(std::ceil((static_cast<double>(n) * n + n) / -std::log2(1.0 - rate)));
    while (k > 0 && tv_step_bound_log2(n, static_cast<double>(k - 1), rate) <= 0.0) --k;
    while (tv_step_bound_log2(n, static_cast<double>(k), rate) > 0.0) ++k;
    return k;
}
inline std::uint64_t tv_first_useful_step(int n) { return tv_first_useful_step(n, default_tv_rate(n)); }

struct TvComparison {
    std::uint64_t k = 0;
    double tv = 0;
    double bound = 0;
    bool bound_vacuous = false;  // bound > 1
    bool holds = true;           // tv <= bound, required whenever the bound is not vacuous
};

inline TvComparison tv_distance(const WalkDistribution& dist, int n, double rate) {
    TvComparison c;
    c.k = dist.steps;
    c.tv = tv_to_uniform(dist.probs);
    c.bound = tv_step_bound(n, static_cast<double>(dist.steps), rate);
    c.bound_vacuous = c.bound > 1.0;
    c.holds = c.tv <= c.bound;
    return c;
}

inline TvComparison tv_distance(const WalkDistribution& dist, int n) { return tv_distance(dist, n, default_tv_rate(n)); }

// ---------------------------------------------------------------------------
// Spectral gap of the averaging operator

inline constexpr std::size_t kMaxDenseGroupSize = 4096;

/// One-step transition operator on L^2(G): P[h][g] = Pr[g -> h].
inline Eigen::MatrixXd transition_matrix(const GroupTable& t) {
    if (t.size() > kMaxDenseGroupSize) throw CapacityError("transition_matrix: group too large for a dense operator");
    const auto G = static_cast<Eigen::Index>(t.size());
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(G, G);
    const std::size_t S = t.generators();
    for (std::size_t g = 0; g < t.size(); ++g) {
        for (std::size_t s = 0; s < S; ++s) {
            P(static_cast<Eigen::Index>(t.step[g * S + s]), static_cast<Eigen::Index>(g)) += t.gen_weight[s];
        }
    }
    return P;
}

struct SpectralGap {
    double lambda_second = 0;  // second largest eigenvalue
    double lambda_min = 0;
    double second_singular = 0;  // largest |eigenvalue| off the constant mode
    double gap = 0;              // 1 - second_singular
    double symmetry_error = 0;   // max |P - P^T|
};

inline SpectralGap walk_spectral_gap(const GroupTable& t) {
    const Eigen::MatrixXd P = transition_matrix(t);
    SpectralGap out;
    out.symmetry_error = (P - P.transpose()).cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (P + P.transpose()), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();  // ascending
    const Eigen::Index m = ev.size();
    out.lambda_min = ev(0);
    out.lambda_second = m > 1 ? ev(m - 2) : 0.0;
    out.second_singular = m > 1 ? std::max(std::abs(out.lambda_second), std::abs(out.lambda_min)) : 0.0;
    out.gap = 1.0 - out.second_singular;
    return out;
}

/// tv(k) <= (1/2) sqrt(|G|) lambda^k for a symmetric walk with second
/// singular value lambda, valid for every k.
inline double spectral_tv_envelope(double second_singular, std::size_t group_size, double k) {
    return 0.5 * std::sqrt(static_cast<double>(group_size)) * std::pow(second_singular, k);
}

// ---------------------------------------------------------------------------
// Z-string mixing

/// Per-generator Z-string maps y -> s^{-T} y, one per (site, local element).
inline std::vector<F2Matrix> zstring_step_maps(int n) {
    std::vector<F2Matrix> maps;
    for (const auto& s : sigma_generators(n)) maps.push_back(s.inverse().transpose());
    return maps;
}

inline constexpr int kMaxExactZstringQubits = 20;

/// Exact TV between the law of M^{-T} e_1 (M ~ sigma^{*k}) and the uniform
/// law on nonzero strings, for every k in [0, kmax].
inline std::vector<double> zstring_tv_exact(int n, std::uint64_t kmax) {
    if (n < 2) throw InputError("zstring_tv_exact: need n >= 2");
    if (n > kMaxExactZstringQubits) throw CapacityError("zstring_tv_exact: n > 20");
    const auto maps = zstring_step_maps(n);
    const std::uint32_t N = std::uint32_t{1} << n;
    std::vector<std::vector<std::uint32_t>> image(maps.size(), std::vector<std::uint32_t>(N));
    for (std::size_t s = 0; s < maps.size(); ++s) {
        for (std::uint32_t y = 0; y < N; ++y) image[s][y] = maps[s].apply(y);
    }
    const double w = 1.0 / static_cast<double>(maps.size());
    const double u = 1.0 / static_cast<double>(N - 1);
    std::vector<double> p(N, 0.0), next(N, 0.0);
    p[BitString::unit(n, 0).bits()] = 1.0;
    auto tv = [&] {
        double s = 0.0;
        for (std::uint32_t y = 1; y < N; ++y) s += std::abs(p[y] - u);
        return 0.5 * s;
    };
    std::vector<double> out{tv()};
    for (std::uint64_t k = 0; k < kmax; ++k) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::uint32_t y = 1; y < N; ++y) {
            if (p[y] == 0.0) continue;
            for (const auto& img : image) next[img[y]] += p[y] * w;
        }
        std::swap(p, next);
        out.push_back(tv());
    }
    return out;
}

/// Empirical TV from `trials` independent walks of k steps (any n <= 30).
/// Unvisited strings count with their full uniform mass.
inline double zstring_tv_sampled(int n, std::uint64_t k, std::uint64_t trials, std::uint64_t seed) {
    if (n < 2 || n > kMaxQubits) throw InputError("zstring_tv_sampled: need 2 <= n <= 30");
    if (trials == 0) throw InputError("zstring_tv_sampled: trials must be >= 1");
    const auto maps = zstring_step_maps(n);
    std::unordered_map<std::uint32_t, std::uint64_t> counts;
    for (std::uint64_t i = 0; i < trials; ++i) {
        Stream rng(seed, i, streams::kF2Walk);
        std::uint32_t y = BitString::unit(n, 0).bits();
        for (std::uint64_t j = 0; j < k; ++j) y = maps[rng.below(maps.size())].apply(y);
        ++counts[y];
    }
    const double nonzero = std::ldexp(1.0, n) - 1.0;
    const double u = 1.0 / nonzero;
    double s = 0.0;
    for (const auto& [y, c] : counts) s += std::abs(static_cast<double>(c) / static_cast<double>(trials) - u);
    s += (nonzero - static_cast<double>(counts.size())) * u;
    return 0.5 * s;
}

/// TV between the uniform law on nonzero strings and on all strings, by mass
/// accounting; equals 2^{-n}.
inline double nonzero_vs_all_tv(int n) {
    const double N = std::ldexp(1.0, n);
    return 0.5 * ((N - 1.0) * (1.0 / (N - 1.0) - 1.0 / N) + 1.0 / N);
}

}  // namespace rqcm
