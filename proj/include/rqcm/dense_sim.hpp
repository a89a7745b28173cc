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
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "rqcm/errors.hpp"
#include "rqcm/f2_matrix.hpp"
#include "rqcm/rng.hpp"
#include "rqcm/stats.hpp"

// Small-n statevector simulation of local random quantum circuits: each gate
// is drawn from a two-qubit measure and applied to a uniformly random
// periodic nearest-neighbour pair (i, i+1 mod n).

namespace rqcm {

using cplx = std::complex<double>;
using Gate4 = Eigen::Matrix4cd;

inline constexpr int kMaxDenseQubits = 12;

/// Haar-random two-qubit gate: QR of a complex Ginibre matrix with the phases
/// of R's diagonal absorbed into Q, then divided by a fourth root of its
/// determinant. Moments |<a|U|b>|^{2t} do not see the global phase.
inline Gate4 haar_su4(Stream& rng) {
    std::normal_distribution<double> normal(0.0, std::numbers::sqrt2 / 2.0);
    Gate4 z;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) z(i, j) = cplx(normal(rng), normal(rng));
    }
    Eigen::HouseholderQR<Gate4> qr(z);
    Gate4 q = qr.householderQ();
    const Gate4 r = qr.matrixQR();
    for (int j = 0; j < 4; ++j) {
        const cplx d = r(j, j);
        q.col(j) *= d / std::abs(d);
    }
    const cplx det = q.determinant();
    return q / std::pow(det, 0.25);
}

/// Permutation matrix of a GL(2,2) element on the local basis |2 q0 + q1>.
inline Gate4 local_permutation_gate(const F2Matrix& g) {
    Gate4 u = Gate4::Zero();
    for (std::uint32_t a = 0; a < 4; ++a) u(g.apply(a), a) = 1.0;
    return u;
}

/// e^{i phi Z} (x) 1 on the pair, acting on the pair's first qubit.
inline Gate4 local_z_rotation(double phi) {
    Gate4 u = Gate4::Zero();
    u(0, 0) = u(1, 1) = std::polar(1.0, phi);
    u(2, 2) = u(3, 3) = std::polar(1.0, -phi);
    return u;
}

/// Two-qubit measure that mixes the CNOT group on the pair (probability 1/2)
/// with a uniformly random Z rotation on its first qubit (probability 1/2).
inline Gate4 zeta_gate(Stream& rng) {
    if (rng.coin()) return local_permutation_gate(local_group()[rng.below(6)]);
    return local_z_rotation(2.0 * std::numbers::pi * rng.uniform());
}

enum class GateMeasure { Haar, Zeta };

inline Gate4 sample_gate(GateMeasure measure, Stream& rng) {
    return measure == GateMeasure::Haar ? haar_su4(rng) : zeta_gate(rng);
}

class StateVector {
  public:
    explicit StateVector(int n) : n_(n) {
        if (n < 1 || n > kMaxDenseQubits) throw CapacityError("StateVector: n must be in [1, 12]");
        amps_.assign(std::size_t{1} << n, cplx(0.0, 0.0));
        amps_[0] = 1.0;
    }

    StateVector(int n, std::vector<cplx> amps) : StateVector(n) {
        if (amps.size() != amps_.size()) throw InputError("StateVector: need 2^n amplitudes");
        amps_ = std::move(amps);
    }

    static StateVector zero(int n) { return StateVector(n); }

    static StateVector plus(int n) {
        StateVector s(n);
        const double a = std::pow(2.0, -0.5 * n);
        for (auto& v : s.amps_) v = a;
        return s;
    }

    int n() const { return n_; }
    const std::vector<cplx>& amplitudes() const { return amps_; }

    double norm() const {
        double s = 0.0;
        for (const auto& a : amps_) s += std::norm(a);
        return std::sqrt(s);
    }

    /// <this|other>
    cplx inner(const StateVector& other) const {
        if (other.n_ != n_) throw InputError("StateVector::inner: dimension mismatch");
        cplx s = 0.0;
        for (std::size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
        return s;
    }

    /// Applies u to qubits (a, b); u's local index is 2 q_a + q_b.
    void apply(const Gate4& u, int a, int b) {
        if (a == b || a < 0 || b < 0 || a >= n_ || b >= n_) throw InputError("StateVector::apply: bad qubit pair");
        const std::size_t ma = std::size_t{1} << (n_ - 1 - a);
        const std::size_t mb = std::size_t{1} << (n_ - 1 - b);
        for (std::size_t base = 0; base < amps_.size(); ++base) {
            if (base & (ma | mb)) continue;
            const std::size_t idx[4] = {base, base | mb, base | ma, base | ma | mb};
            cplx in[4];
            for (int k = 0; k < 4; ++k) in[k] = amps_[idx[k]];
            for (int r = 0; r < 4; ++r) {
                amps_[idx[r]] = u(r, 0) * in[0] + u(r, 1) * in[1] + u(r, 2) * in[2] + u(r, 3) * in[3];
            }
        }
    }

  private:
    int n_;
    std::vector<cplx> amps_;
};

struct CircuitGate {
    int site = 0;
    Gate4 u;
};

struct RqcRun {
    StateVector state;
    std::vector<CircuitGate> gates;  // filled only when recording
    std::uint32_t touched = 0;       // bit q set once qubit q has been acted on
};

/// U_d ... U_1 |init>; gate j acts on (site, site+1 mod n).
inline RqcRun run_rqc(int n, std::uint64_t d, Stream& rng, GateMeasure measure = GateMeasure::Haar,
                      const StateVector* init = nullptr, bool record = false) {
    if (n < 2) throw InputError("run_rqc: need n >= 2");
    if (n > kMaxDenseQubits) throw CapacityError("run_rqc: n > 12 exceeds the dense limit");
    RqcRun run{init ? *init : StateVector::zero(n), {}, 0};
    if (run.state.n() != n) throw InputError("run_rqc: initial state has the wrong size");
    for (std::uint64_t j = 0; j < d; ++j) {
        const int site = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const Gate4 u = sample_gate(measure, rng);
        run.state.apply(u, site, (site + 1) % n);
        run.touched |= (1u << site) | (1u << ((site + 1) % n));
        if (record) run.gates.push_back({site, u});
    }
    return run;
}

/// Sample mean of |<bra| U |ket>|^{2t} over `trials` independent circuits.
inline Estimate mc_moment(int n, std::uint64_t d, int t, const StateVector& bra, const StateVector& ket,
                          GateMeasure measure, std::uint64_t trials, std::uint64_t seed, int workers = 1) {
    if (t < 1 || trials < 1) throw InputError("mc_moment: need t >= 1 and trials >= 1");
    const auto samples = run_trials<double>(trials, workers, [&](std::uint64_t i) {
        Stream rng(seed, i, streams::kCircuit);
        const auto run = run_rqc(n, d, rng, measure, &ket);
        return std::pow(std::norm(bra.inner(run.state)), t);
    });
    return summarize(samples);
}

/// E |<psi| U |0^n>|^{2t} for Haar two-qubit gates.
inline Estimate mc_moment_rqc(int n, std::uint64_t d, int t, const StateVector& psi, std::uint64_t trials,
                              std::uint64_t seed, int workers = 1) {
    return mc_moment(n, d, t, psi, StateVector::zero(n), GateMeasure::Haar, trials, seed, workers);
}

/// 1 / binom(N + t - 1, t) = t! (N-1)! / (N+t-1)!, evaluated in log space.
inline double haar_exact_moment_log(double N, int t) {
    if (N < 1 || t < 1) throw InputError("haar_exact_moment: need N >= 1 and t >= 1");
    return std::lgamma(t + 1.0) + std::lgamma(N) - std::lgamma(N + t);
}

/// Direct product prod_{i<=t} i/(N+i-1) for small t; log space otherwise.
inline double haar_exact_moment(double N, int t) {
    if (t > 64) return std::exp(haar_exact_moment_log(N, t));
    if (N < 1 || t < 1) throw InputError("haar_exact_moment: need N >= 1 and t >= 1");
    double p = 1.0;
    for (int i = 1; i <= t; ++i) p *= i / (N + i - 1.0);
    return p;
}

/// Haar-random pure state of dimension 2^n (normalized complex Gaussian).
inline StateVector haar_random_state(int n, Stream& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<cplx> a(std::size_t{1} << n);
    double s = 0.0;
    for (auto& v : a) {
        v = cplx(normal(rng), normal(rng));
        s += std::norm(v);
    }
    for (auto& v : a) v /= std::sqrt(s);
    return StateVector(n, std::move(a));
}

/// Fraction of circuits of d gates that leave some qubit untouched.
inline Estimate untouched_qubit_frequency(int n, std::uint64_t d, std::uint64_t trials, std::uint64_t seed,
                                          int workers = 1) {
    const std::uint32_t all = n >= 32 ? ~0u : ((1u << n) - 1u);
    const auto samples = run_trials<double>(trials, workers, [&](std::uint64_t i) {
        Stream rng(seed, i, streams::kCircuit);
        return run_rqc(n, d, rng).touched == all ? 0.0 : 1.0;
    });
    return summarize(samples);
}

/// (1/2) || |a><a| - |b><b| ||_1 from the eigenvalues of the difference.
inline double trace_distance_pure(const StateVector& a, const StateVector& b) {
    const auto N = static_cast<Eigen::Index>(a.amplitudes().size());
    Eigen::VectorXcd va(N), vb(N);
    for (Eigen::Index i = 0; i < N; ++i) {
        va(i) = a.amplitudes()[static_cast<std::size_t>(i)];
        vb(i) = b.amplitudes()[static_cast<std::size_t>(i)];
    }
    const Eigen::MatrixXcd diff = va * va.adjoint() - vb * vb.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace rqcm
