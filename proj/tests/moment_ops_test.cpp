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

#include "rqcm/moment_ops.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <unsupported/Eigen/KroneckerProduct>

using namespace rqcm;

namespace {

// Brute-force E[g^{(x)t,t}] for a given list of equally likely local gates.
Eigen::MatrixXcd average_tensor_power(const std::vector<Gate4>& gates, int t) {
    const Eigen::Index D = Eigen::Index{1} << (4 * t);
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(D, D);
    for (const auto& u : gates) {
        Eigen::MatrixXcd k = Eigen::MatrixXcd::Ones(1, 1);
        for (int l = 0; l < t; ++l) k = Eigen::kroneckerProduct(k, u).eval();
        for (int l = 0; l < t; ++l) k = Eigen::kroneckerProduct(k, u.conjugate()).eval();
        acc += k;
    }
    return acc / static_cast<double>(gates.size());
}

}  // namespace

TEST(MomentOps, ZetaMatchesBruteForceAverage) {
    // phi uniform on a grid of 2(2t+1) points averages e^{i s phi} exactly for |s| <= 2t.
    for (int t = 1; t <= 2; ++t) {
        std::vector<Gate4> perms, rots;
        for (const auto& g : local_group()) perms.push_back(local_permutation_gate(g));
        const int grid = 4 * t + 2;
        for (int k = 0; k < grid; ++k) rots.push_back(local_z_rotation(2.0 * std::numbers::pi * k / grid));
        const Eigen::MatrixXcd expect = 0.5 * average_tensor_power(perms, t) + 0.5 * average_tensor_power(rots, t);
        const auto z = moment_op_zeta(t);
        EXPECT_LT((expect - z.entries.cast<cplx>()).cwiseAbs().maxCoeff(), 1e-12) << "t=" << t;
    }
}

TEST(MomentOps, HaarProjectorProperties) {
    const int ranks[] = {1, 2, 6};
    for (int t = 1; t <= 3; ++t) {
        const auto h = moment_op_haar(t);
        const Eigen::MatrixXd& p = h.entries;
        EXPECT_LT((p * p - p).cwiseAbs().maxCoeff(), 1e-9);
        EXPECT_LT((p - p.transpose()).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_NEAR(p.trace(), ranks[t - 1], 1e-9);
    }
}

TEST(MomentOps, HaarProjectorFixedByZeta) {
    // Each gate in the mixture fixes the commutant, so M(zeta) P = P.
    for (int t = 1; t <= 2; ++t) {
        const auto z = moment_op_zeta(t);
        const auto h = moment_op_haar(t);
        EXPECT_LT((z.entries * h.entries - h.entries).cwiseAbs().maxCoeff(), 1e-8);
    }
}

TEST(MomentOps, HaarProjectorAgreesWithSampledGates) {
    const auto h = moment_op_haar(1);
    const auto mc = mc_moment_operator_haar(1, 20000, 17);
    // Entries are bounded by 1, so the sampling error is below ~4/sqrt(N).
    EXPECT_LT((mc - h.entries.cast<cplx>()).cwiseAbs().maxCoeff(), 0.03);
    EXPECT_NEAR(h.entries(0, 0), 0.25, 1e-12);
}

TEST(MomentOps, PsdDominationSmallT) {
    for (int t = 1; t <= 2; ++t) {
        const auto r = psd_domination_check(t);
        EXPECT_TRUE(r.holds) << "t=" << t << " min eig " << r.min_eig;
        EXPECT_EQ(r.tolerance, kPsdTolerance);
    }
}

TEST(MomentOps, CapacityAndInputErrors) {
    EXPECT_THROW(moment_op_zeta(4), CapacityError);
    EXPECT_THROW(moment_op_haar(0), InputError);
    EXPECT_THROW(psd_domination_check(moment_op_zeta(1), moment_op_haar(2)), InputError);
}

TEST(MomentOps, ExportFormat) {
    const auto dir = std::filesystem::temp_directory_path() / "rqcm_moment_export";
    std::filesystem::create_directories(dir);
    const std::string stem = (dir / "haar_t1").string();
    const auto h = moment_op_haar(1);
    export_moment_operator(h, stem);
    EXPECT_EQ(std::filesystem::file_size(stem + ".bin"), 16u * 16u * 16u);
    std::ifstream in(stem + ".bin", std::ios::binary);
    std::vector<double> buf(2 * 256);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size() * sizeof(double)));
    for (Eigen::Index r = 0; r < 16; ++r) {
        for (Eigen::Index c = 0; c < 16; ++c) {
            EXPECT_EQ(buf[static_cast<std::size_t>(2 * (16 * r + c))], h.entries(r, c));
            EXPECT_EQ(buf[static_cast<std::size_t>(2 * (16 * r + c) + 1)], 0.0);
        }
    }
    const auto j = nlohmann::json::parse(std::ifstream(stem + ".json"));
    EXPECT_EQ(j["t"], 1);
    EXPECT_EQ(j["dim"], 16);
    EXPECT_EQ(j["dtype"], "complex128");
    EXPECT_EQ(j["order"], "row-major");
    std::filesystem::remove_all(dir);
}
