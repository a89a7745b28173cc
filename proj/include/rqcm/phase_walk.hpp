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

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/distributions/binomial.hpp>

#include "json.hpp"
#include "rqcm/bitstring.hpp"
#include "rqcm/boolean_fourier.hpp"
#include "rqcm/errors.hpp"
#include "rqcm/f2_matrix.hpp"
#include "rqcm/rng.hpp"
#include "rqcm/stats.hpp"

// Phase-state random walks.
//
// A phase state 2^{-n/2} sum_x e^{i theta_x} |x> is closed under diagonal
// rotations e^{i phi Z^y} and under reversible circuits |x> -> |Mx>, so the
// auxiliary walk (local CNOT-group gates mixed with single-qubit Z rotations)
// and the ideal walk (rotations about uniformly random Z-strings) can both be
// simulated on the 2^n phases alone.

namespace rqcm {

inline constexpr int kMaxPhaseQubits = 24;

struct DiagonalRotation {
    BitString y;
    double phi = 0.0;
};

class PhaseVector {
  public:
    explicit PhaseVector(int n) : n_(n) {
        if (n < 1 || n > kMaxPhaseQubits) throw CapacityError("PhaseVector: n must be in [1, 24]");
        phases_.assign(std::size_t{1} << n, 0.0);
    }

    PhaseVector(int n, std::vector<double> phases) : PhaseVector(n) {
        if (phases.size() != phases_.size()) throw InputError("PhaseVector: need 2^n phases");
        phases_ = std::move(phases);
    }

    int n() const { return n_; }
    const std::vector<double>& phases() const { return phases_; }

    /// Phases reduced to [0, 2pi); used only when serializing.
    std::vector<double> reduced_phases() const {
        std::vector<double> out(phases_);
        for (double& p : out) {
            p = std::fmod(p, 2.0 * std::numbers::pi);
            if (p < 0) p += 2.0 * std::numbers::pi;
        }
        return out;
    }

    /// theta_x += phi * p_y(x)
    void rotate(std::uint32_t y, double phi) {
        for (std::uint32_t x = 0; x < phases_.size(); ++x) phases_[x] += phi * monomial_sign(y, x);
    }

    /// theta'_{Mx} = theta_x
    void permute(const F2Matrix& m) {
        if (m.n() != n_) throw InputError("PhaseVector::permute: dimension mismatch");
        std::vector<double> out(phases_.size());
        for (std::uint32_t x = 0; x < phases_.size(); ++x) out[m.apply(x)] = phases_[x];
        phases_ = std::move(out);
    }

    /// <+^n| state> = 2^{-n} sum_x e^{i theta_x}
    std::complex<double> plus_overlap() const {
        double re = 0.0, im = 0.0;
        for (double p : phases_) {
            re += std::cos(p);
            im += std::sin(p);
        }
        const double s = std::ldexp(1.0, -n_);
        return {re * s, im * s};
    }

  private:
    int n_;
    std::vector<double> phases_;
};

inline PhaseVector apply_rotation(PhaseVector state, const DiagonalRotation& rot) {
    if (rot.y.size() != state.n()) throw InputError("apply_rotation: dimension mismatch");
    state.rotate(rot.y.bits(), rot.phi);
    return state;
}

inline PhaseVector apply_f2_perm(PhaseVector state, const F2Matrix& m) {
    state.permute(m);
    return state;
}

inline std::complex<double> plus_overlap(const PhaseVector& state) { return state.plus_overlap(); }

// ---------------------------------------------------------------------------
// Auxiliary walk: each step picks a periodic pair (i, i+1) and, with
// probability 1/2 each, a uniform GL(2,2) element on the pair or the rotation
// e^{i phi Z} on qubit i with phi uniform in [0, 2pi).

struct AuxStep {
    enum class Kind { Group, Rotation };
    Kind kind = Kind::Group;
    int site = 0;
    int local = 0;     // GL(2,2) index, Group steps only
    double phi = 0.0;  // Rotation steps only
};

inline AuxStep sample_aux_step(int n, Stream& rng) {
    AuxStep s;
    s.site = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    if (rng.coin()) {
        s.kind = AuxStep::Kind::Group;
        s.local = static_cast<int>(rng.below(6));
    } else {
        s.kind = AuxStep::Kind::Rotation;
        s.phi = 2.0 * std::numbers::pi * rng.uniform();
    }
    return s;
}

inline std::vector<AuxStep> sample_aux_walk(int n, std::uint64_t d, Stream& rng) {
    std::vector<AuxStep> steps;
    steps.reserve(d);
    for (std::uint64_t j = 0; j < d; ++j) steps.push_back(sample_aux_step(n, rng));
    return steps;
}

inline void apply_aux_step(PhaseVector& state, const AuxStep& s) {
    const int n = state.n();
    if (s.kind == AuxStep::Kind::Group) {
        state.permute(embed_local(local_group()[static_cast<std::size_t>(s.local)], n, s.site));
    } else {
        state.rotate(BitString::unit(n, s.site).bits(), s.phi);
    }
}

inline Estimate mc_moment_aux(int n, std::uint64_t d, int t, std::uint64_t trials, std::uint64_t seed,
                              int workers = 1) {
    if (n < 2) throw InputError("mc_moment_aux: need n >= 2");
    if (t < 1 || trials < 1) throw InputError("mc_moment_aux: need t >= 1 and trials >= 1");
    const auto samples = run_trials<double>(trials, workers, [&](std::uint64_t i) {
        Stream rng(seed, i, streams::kPhaseWalk);
        PhaseVector state(n);
        for (std::uint64_t j = 0; j < d; ++j) apply_aux_step(state, sample_aux_step(n, rng));
        return std::pow(std::norm(state.plus_overlap()), t);
    });
    return summarize(samples);
}

// ---------------------------------------------------------------------------
// Ideal walk: m rotations e^{i phi Z^y}, y uniform over all 2^n strings.

struct IdealWalkTrace {
    int n = 1;
    std::vector<DiagonalRotation> rotations;
};

inline IdealWalkTrace sample_ideal_walk(int n, std::uint64_t m, Stream& rng) {
    IdealWalkTrace tr;
    tr.n = n;
    tr.rotations.reserve(m);
    const std::uint64_t N = std::uint64_t{1} << n;
    for (std::uint64_t j = 0; j < m; ++j) {
        const auto y = static_cast<std::uint32_t>(rng.below(N));
        const double phi = 2.0 * std::numbers::pi * rng.uniform();
        tr.rotations.push_back({BitString(n, y), phi});
    }
    return tr;
}

inline Estimate mc_moment_ideal(int n, std::uint64_t m, int t, std::uint64_t trials, std::uint64_t seed,
                                int workers = 1) {
    if (t < 1 || trials < 1) throw InputError("mc_moment_ideal: need t >= 1 and trials >= 1");
    const auto samples = run_trials<double>(trials, workers, [&](std::uint64_t i) {
        Stream rng(seed, i, streams::kIdealWalk);
        PhaseVector state(n);
        for (const auto& r : sample_ideal_walk(n, m, rng).rotations) state.rotate(r.y.bits(), r.phi);
        return std::pow(std::norm(state.plus_overlap()), t);
    });
    return summarize(samples);
}

/// The ideal walk's t-fold moment operator is diagonal in the tuple-pair
/// basis with eigenvalue q(pair) = Pr_y[fhat(y) = 0]. This table records, for
/// each zero count k = 2^n q, the number of ordered pairs with that value.
class IdealSpectrum {
  public:
    IdealSpectrum(int n, int t) : n_(n), t_(t) {
        if (2 * n * t > 62) throw CapacityError("IdealSpectrum: 2nt exceeds 62");
        for_each_canonical_pair(n, t, [&](const CanonicalTuple& a, const CanonicalTuple& b, std::uint64_t w) {
            const auto rep = support_report(build_f(n, a.values, b.values));
            auto [it, fresh] = weights_.try_emplace(rep.zero_count(), 0);
            it->second += w;
            if (fresh) witness_[rep.zero_count()] = {a.values, b.values};
        });
    }

    int n() const { return n_; }
    int t() const { return t_; }
    std::uint64_t dimension() const { return std::uint64_t{1} << n_; }

    /// zero count -> multiplicity (ordered pairs); multiplicities sum to 2^{2nt}.
    const std::map<std::uint64_t, std::uint64_t>& multiplicities() const { return weights_; }

    Ratio top() const { return {weights_.rbegin()->first, dimension()}; }

    /// Largest eigenvalue strictly below 1, if any.
    std::optional<Ratio> second() const {
        for (auto it = weights_.rbegin(); it != weights_.rend(); ++it) {
            if (it->first < dimension()) return Ratio{it->first, dimension()};
        }
        return std::nullopt;
    }

    /// The first canonical pair (in enumeration order) attaining the given zero count.
    std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> witness(std::uint64_t zero_count) const {
        return witness_.at(zero_count);
    }

    /// E |<+|U|+>|^{2t} after m ideal rotations: 2^{-2nt} sum_pairs q^m.
    double moment(std::uint64_t m) const {
        long double s = 0.0L;
        for (const auto& [k, w] : weights_) {
            s += static_cast<long double>(w) * ipow(static_cast<long double>(k) / static_cast<long double>(dimension()), m);
        }
        return static_cast<double>(std::ldexp(s, -2 * n_ * t_));
    }

    /// m -> infinity limit: only permutation-related pairs (q = 1) survive.
    double permutation_floor() const {
        auto it = weights_.find(dimension());
        const long double w = it == weights_.end() ? 0.0L : static_cast<long double>(it->second);
        return static_cast<double>(std::ldexp(w, -2 * n_ * t_));
    }

  private:
    static long double ipow(long double b, std::uint64_t e) {
        long double r = 1.0L;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    int n_;
    int t_;
    std::map<std::uint64_t, std::uint64_t> weights_;
    std::map<std::uint64_t, std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>> witness_;
};

inline double exact_moment_ideal(int n, std::uint64_t m, int t) { return IdealSpectrum(n, t).moment(m); }

/// Eigenvalue of the ideal-walk moment operator on one tuple pair.
inline Ratio ideal_eigenvalue(const TuplePair& pair) { return support_report(build_f(pair)).zero_prob(); }

// ---------------------------------------------------------------------------
// Blocking statistics for the auxiliary walk

struct BlockStatistics {
    std::uint64_t d = 0, k = 0;
    int n = 0;
    double p_block = 0;          // Pr[block of 4k draws has >= 1 rotation and >= k group gates]
    double p_block_failure = 0;  // 1 - p_block, computed directly
    double p_rotation = 0;       // Pr[>= 1 rotation in 4k draws] = 1 - 2^{-4k}
    double claimed_failure = 0;  // 2^{-n-1}
    bool claim_holds = false;    // p_block_failure <= 2^{-n-1}
    std::uint64_t block_pairs = 0;  // floor(d / 8k)
    double p_pair = 0;              // left block has a rotation, right block >= k group gates
    double p_half_blocks = 0;       // Pr[at least half the block pairs succeed], exact
    double hoeffding = 0;           // 1 - e^{-d/20k}
};

inline BlockStatistics block_statistics(std::uint64_t d, std::uint64_t k, int n) {
    if (k < 1 || d < 4 * k) throw DomainError("block_statistics: need k >= 1 and d >= 4k");
    using boost::math::binomial_distribution;
    using boost::math::cdf;
    using boost::math::complement;
    BlockStatistics s;
    s.d = d;
    s.k = k;
    s.n = n;
    const auto draws = static_cast<double>(4 * k);
    binomial_distribution<double> rotations(draws, 0.5);
    // Failure: no rotation at all, or more than 3k rotations (fewer than k group gates).
    const double no_rotation = std::exp2(-draws);
    const double too_many = cdf(complement(rotations, 3.0 * static_cast<double>(k)));
    s.p_block_failure = no_rotation + too_many;
    s.p_block = 1.0 - s.p_block_failure;
    s.p_rotation = 1.0 - no_rotation;
    s.claimed_failure = std::exp2(-(n + 1.0));
    s.claim_holds = s.p_block_failure <= s.claimed_failure;
    const double enough_group = 1.0 - too_many;
    s.p_pair = s.p_rotation * enough_group;
    s.block_pairs = d / (8 * k);
    if (s.block_pairs == 0) {
        s.p_half_blocks = 1.0;
    } else {
        const auto pairs = static_cast<double>(s.block_pairs);
        const double need = std::ceil(pairs / 2.0);
        binomial_distribution<double> good(pairs, s.p_pair);
        s.p_half_blocks = need <= 0 ? 1.0 : cdf(complement(good, need - 1.0));
    }
    s.hoeffding = 1.0 - std::exp(-static_cast<double>(d) / (20.0 * static_cast<double>(k)));
    return s;
}

// ---------------------------------------------------------------------------
// Serialization

inline nlohmann::json aux_trace_json(int n, const std::vector<AuxStep>& steps) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& s : steps) {
        if (s.kind == AuxStep::Kind::Group) {
            out.push_back({{"kind", "group"}, {"site", s.site}, {"y", nullptr}, {"phi", nullptr}, {"element", s.local}});
        } else {
            out.push_back({{"kind", "rotation"}, {"site", s.site}, {"y", BitString::unit(n, s.site).str()}, {"phi", s.phi}});
        }
    }
    return out;
}

inline nlohmann::json ideal_trace_json(const IdealWalkTrace& tr) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : tr.rotations) {
        const double phi = std::fmod(r.phi, 2.0 * std::numbers::pi);
        out.push_back({{"kind", "rotation"}, {"site", nullptr}, {"y", r.y.str()}, {"phi", phi < 0 ? phi + 2.0 * std::numbers::pi : phi}});
    }
    return out;
}

}  // namespace rqcm
