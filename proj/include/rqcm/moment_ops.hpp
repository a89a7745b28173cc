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
#include <cstdint>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "rqcm/dense_sim.hpp"
#include "rqcm/errors.hpp"
#include "rqcm/f2_matrix.hpp"

// Exact t-fold moment operators M(nu, t) = E U^{(x)t} (x) conj(U)^{(x)t} on a
// two-qubit register (local dimension 4, operator dimension 16^t).
//
// Basis index of (C^4)^{(x)2t}: digit l (l = 0 .. 2t-1, most significant
// first) is the local state a_l = 2 q0 + q1 of copy l; copies 0..t-1 carry U,
// copies t..2t-1 carry conj(U). Both operators built here have real entries.

namespace rqcm {

inline constexpr int kMaxMomentT = 3;

struct MomentOperatorMatrix {
    int t = 1;
    Eigen::MatrixXd entries;

    Eigen::Index dim() const { return entries.rows(); }
};

namespace detail {

inline Eigen::Index moment_dim(int t) {
    if (t < 1) throw InputError("moment operator: need t >= 1");
    if (t > kMaxMomentT) throw CapacityError("moment operator: t > 3 exceeds the dense limit");
    return Eigen::Index{1} << (4 * t);
}

inline int digit(Eigen::Index idx, int l, int t) { return static_cast<int>((idx >> (2 * (2 * t - 1 - l))) & 3); }

}  // namespace detail

/// M(zeta, t) = (1/2)(1/6) sum_g g^{(x)t,t} + (1/2) E_phi R_phi^{(x)t,t}.
///
/// The phi average is taken exactly: R_phi^{(x)t,t} is diagonal with phase
/// exp(i phi (s_U - s_conj)), where s sums the Z eigenvalue (+1 for q0 = 0,
/// -1 for q0 = 1) over the copies, and a uniform phi keeps exactly the
/// entries with s_U = s_conj.
inline MomentOperatorMatrix moment_op_zeta(int t) {
    const Eigen::Index D = detail::moment_dim(t);
    MomentOperatorMatrix m{t, Eigen::MatrixXd::Zero(D, D)};
    const double wg = 0.5 / 6.0;
    for (const auto& g : local_group()) {
        std::uint32_t perm[4];
        for (std::uint32_t a = 0; a < 4; ++a) perm[a] = g.apply(a);
        for (Eigen::Index idx = 0; idx < D; ++idx) {
            Eigen::Index img = 0;
            for (int l = 0; l < 2 * t; ++l) img = (img << 2) | perm[detail::digit(idx, l, t)];
            m.entries(img, idx) += wg;
        }
    }
    for (Eigen::Index idx = 0; idx < D; ++idx) {
        int charge = 0;
        for (int l = 0; l < 2 * t; ++l) {
            const int z = (detail::digit(idx, l, t) >> 1) ? -1 : 1;
            charge += l < t ? z : -z;
        }
        if (charge == 0) m.entries(idx, idx) += 0.5;
    }
    return m;
}

/// Vectorized permutation operators: column pi has a 1 at every index with
/// a_{t+l} = a_{pi(l)} for all l < t. Columns follow std::next_permutation order.
inline Eigen::MatrixXd permutation_vectors(int t) {
    const Eigen::Index D = detail::moment_dim(t);
    std::vector<int> pi(static_cast<std::size_t>(t));
    std::iota(pi.begin(), pi.end(), 0);
    std::vector<std::vector<int>> perms;
    do {
        perms.push_back(pi);
    } while (std::next_permutation(pi.begin(), pi.end()));
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(D, static_cast<Eigen::Index>(perms.size()));
    for (std::size_t p = 0; p < perms.size(); ++p) {
        for (Eigen::Index idx = 0; idx < D; ++idx) {
            bool ok = true;
            for (int l = 0; l < t && ok; ++l) {
                ok = detail::digit(idx, t + l, t) == detail::digit(idx, perms[p][static_cast<std::size_t>(l)], t);
            }
            if (ok) v(idx, static_cast<Eigen::Index>(p)) = 1.0;
        }
    }
    return v;
}

/// M(Haar, t) as the orthogonal projector V (V^T V)^{-1} V^T onto the span of
/// the permutation vectors. For t < 4 these t! vectors are independent and
/// the SU(4) and U(4) commutants coincide.
inline MomentOperatorMatrix moment_op_haar(int t) {
    const Eigen::MatrixXd v = permutation_vectors(t);
    const Eigen::MatrixXd gram = v.transpose() * v;
    const Eigen::MatrixXd ginv = gram.ldlt().solve(Eigen::MatrixXd::Identity(gram.rows(), gram.cols()));
    return {t, v * ginv * v.transpose()};
}

struct PsdDomination {
    int t = 0;
    double min_eig = 0;
    double tolerance = -1e-8;
    bool holds = false;
};

inline constexpr double kPsdTolerance = -1e-8;

/// Smallest eigenvalue of M(zeta, t) - M(Haar, t); must be >= -1e-8.
inline PsdDomination psd_domination_check(const MomentOperatorMatrix& zeta, const MomentOperatorMatrix& haar) {
    if (zeta.t != haar.t || zeta.dim() != haar.dim()) throw InputError("psd_domination_check: operators differ in t");
    const Eigen::MatrixXd diff = zeta.entries - haar.entries;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(diff, Eigen::EigenvaluesOnly);
    PsdDomination r;
    r.t = zeta.t;
    r.min_eig = es.eigenvalues()(0);
    r.tolerance = kPsdTolerance;
    r.holds = r.min_eig >= kPsdTolerance;
    return r;
}

inline PsdDomination psd_domination_check(int t) { return psd_domination_check(moment_op_zeta(t), moment_op_haar(t)); }

inline Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

/// Monte Carlo average of U^{(x)t,t} over Haar two-qubit gates.
inline Eigen::MatrixXcd mc_moment_operator_haar(int t, std::uint64_t samples, std::uint64_t seed) {
    const Eigen::Index D = detail::moment_dim(t);
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(D, D);
    for (std::uint64_t i = 0; i < samples; ++i) {
        Stream rng(seed, i, streams::kCircuit);
        const Gate4 u = haar_su4(rng);
        const Gate4 ub = u.conjugate();
        for (Eigen::Index c = 0; c < D; ++c) {
            for (Eigen::Index r = 0; r < D; ++r) {
                cplx v = 1.0;
                for (int l = 0; l < 2 * t; ++l) {
                    const auto& g = l < t ? u : ub;
                    v *= g(detail::digit(r, l, t), detail::digit(c, l, t));
                }
                acc(r, c) += v;
            }
        }
    }
    return acc / static_cast<double>(samples);
}

/// Writes `<stem>.bin` (row-major complex128, interleaved re/im, host byte
/// order) and `<stem>.json` with {t, dim, dtype, order, file}.
inline void export_moment_operator(const MomentOperatorMatrix& m, const std::string& stem) {
    const std::string bin = stem + ".bin";
    std::ofstream out(bin, std::ios::binary);
    if (!out) throw InputError("export_moment_operator: cannot open " + bin);
    for (Eigen::Index r = 0; r < m.dim(); ++r) {
        for (Eigen::Index c = 0; c < m.dim(); ++c) {
            const double re = m.entries(r, c);
            const double im = 0.0;
            out.write(reinterpret_cast<const char*>(&re), sizeof re);
            out.write(reinterpret_cast<const char*>(&im), sizeof im);
        }
    }
    nlohmann::json header = {{"t", m.t}, {"dim", m.dim()}, {"dtype", "complex128"}, {"order", "row-major"}, {"file", bin}};
    std::ofstream(stem + ".json") << header.dump(2) << "\n";
}

}  // namespace rqcm
