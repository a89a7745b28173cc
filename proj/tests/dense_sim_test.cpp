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

#include "rqcm/dense_sim.hpp"

#include <gtest/gtest.h>

#include "rqcm/bounds.hpp"
#include "rqcm/phase_walk.hpp"

using namespace rqcm;

TEST(HaarGate, UnitaryWithUnitDeterminant) {
    for (std::uint64_t i = 0; i < 200; ++i) {
        Stream rng(1, i);
        const Gate4 u = haar_su4(rng);
        EXPECT_LT((u * u.adjoint() - Gate4::Identity()).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_NEAR(std::abs(u.determinant() - cplx(1.0, 0.0)), 0.0, 1e-12);
    }
}

TEST(HaarGate, SingleGateMomentsAreHaar) {
    // One Haar gate on two qubits is Haar on the full space.
    for (int t = 1; t <= 3; ++t) {
        const auto e = mc_moment_rqc(2, 1, t, StateVector::zero(2), 20000, 3);
        EXPECT_TRUE(e.within(haar_exact_moment(4, t), 4.0)) << "t=" << t << " " << e.mean;
    }
}

TEST(HaarGate, ExactMomentValues) {
    EXPECT_DOUBLE_EQ(haar_exact_moment(4, 1), 0.25);
    EXPECT_DOUBLE_EQ(haar_exact_moment(4, 2), 0.1);
    EXPECT_DOUBLE_EQ(haar_exact_moment(4, 3), 0.05);
    EXPECT_NEAR(haar_exact_moment_log(1024, 5), std::log(haar_exact_moment(1024, 5)), 1e-12);
    EXPECT_NEAR(haar_exact_moment(1e6, 100), std::exp(haar_exact_moment_log(1e6, 100)), 1e-300);
}

TEST(StateVector, PermutationGateMatchesF2Action) {
    const int n = 4;
    for (int site = 0; site < n; ++site) {
        for (const auto& g : local_group()) {
            const auto m = embed_local(g, n, site);
            for (std::uint32_t x = 0; x < 16; ++x) {
                std::vector<cplx> a(16, 0.0);
                a[x] = 1.0;
                StateVector s(n, a);
                s.apply(local_permutation_gate(g), site, (site + 1) % n);
                EXPECT_EQ(std::abs(s.amplitudes()[m.apply(x)] - cplx(1.0)), 0.0);
            }
        }
    }
}

TEST(StateVector, PhaseWalkAgreesWithDenseSimulation) {
    // The same auxiliary steps applied to |+^n> in both representations.
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        const int n = 4;
        Stream rng(2, trial);
        const auto steps = sample_aux_walk(n, 30, rng);
        PhaseVector p(n);
        StateVector s = StateVector::plus(n);
        for (const auto& st : steps) {
            apply_aux_step(p, st);
            const Gate4 u = st.kind == AuxStep::Kind::Group
                                ? local_permutation_gate(local_group()[static_cast<std::size_t>(st.local)])
                                : local_z_rotation(st.phi);
            s.apply(u, st.site, (st.site + 1) % n);
        }
        const double a = 0.25;  // 2^{-n/2}
        for (std::size_t x = 0; x < 16; ++x) {
            EXPECT_NEAR(std::abs(s.amplitudes()[x] - std::polar(a, p.phases()[x])), 0.0, 1e-12);
        }
        EXPECT_NEAR(std::abs(StateVector::plus(n).inner(s) - p.plus_overlap()), 0.0, 1e-12);
    }
}

TEST(StateVector, NormPreservedThroughDeepCircuits) {
    for (int n : {2, 5, 8}) {
        Stream rng(4, static_cast<std::uint64_t>(n));
        const auto run = run_rqc(n, 300, rng);
        EXPECT_NEAR(run.state.norm(), 1.0, 1e-10);
    }
    Stream rng(5, 0);
    EXPECT_THROW(run_rqc(13, 1, rng), CapacityError);
    EXPECT_THROW(run_rqc(1, 1, rng), InputError);
}

TEST(StateVector, ZeroDepthGivesOneExactly) {
    const auto e = mc_moment_rqc(3, 0, 2, StateVector::zero(3), 50, 1);
    EXPECT_EQ(e.mean, 1.0);
    EXPECT_EQ(e.stderr_, 0.0);
}

TEST(Moments, DeepCircuitsApproachHaarAtThreeQubits) {
    const auto e = mc_moment_rqc(3, 120, 2, StateVector::zero(3), 4000, 6);
    EXPECT_TRUE(e.within(haar_exact_moment(8, 2), 4.0)) << e.mean;
}

TEST(Moments, CauchySchwarzConsistency) {
    // E_d |<psi|U|+>|^{2t} <= sqrt(E_{2d} |<+|U|+>|^{2t}) up to sampling error.
    for (int n = 2; n <= 4; ++n) {
        for (std::uint64_t d : {2u, 6u, 12u}) {
            const auto lhs = mc_moment(n, d, 2, StateVector::zero(n), StateVector::plus(n), GateMeasure::Haar, 3000, 7);
            const auto rhs = mc_moment(n, 2 * d, 2, StateVector::plus(n), StateVector::plus(n), GateMeasure::Haar, 3000, 8);
            // Delta method for the square root.
            const double rhs_se = rhs.mean > 0 ? rhs.stderr_ / (2.0 * std::sqrt(rhs.mean)) : 0.0;
            EXPECT_LE(lhs.mean, std::sqrt(rhs.mean) + 3.0 * std::hypot(lhs.stderr_, rhs_se)) << n << " " << d;
        }
    }
}

TEST(Moments, WorkerInvariance) {
    const auto a = mc_moment_rqc(3, 20, 2, StateVector::zero(3), 500, 11, 1);
    const auto b = mc_moment_rqc(3, 20, 2, StateVector::zero(3), 500, 11, 4);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.stderr_, b.stderr_);
}

TEST(Coupon, UntouchedFrequencyMatchesInclusionExclusion) {
    for (std::uint64_t d : {4u, 8u}) {
        const auto e = untouched_qubit_frequency(4, d, 20000, 12);
        const auto cc = bounds::coupon_collector(4, static_cast<double>(d));
        EXPECT_TRUE(e.within(cc.exact, 4.0)) << d << " " << e.mean << " " << cc.exact;
        EXPECT_LE(cc.exact, cc.exact_union + 1e-15);
    }
}

TEST(TraceDistance, PureStateIdentity) {
    for (std::uint64_t i = 0; i < 30; ++i) {
        Stream rng(13, i);
        const auto a = haar_random_state(3, rng), b = haar_random_state(3, rng);
        EXPECT_NEAR(trace_distance_pure(a, b), bounds::pure_trace_distance_from_overlap(std::abs(a.inner(b))), 1e-10);
    }
}
