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
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "rqcm/bitstring.hpp"
#include "rqcm/errors.hpp"

namespace rqcm {

/// Invertible n x n matrix over GF(2), acting on basis labels by x -> Mx.
///
/// Row q is a packed word in the BitString layout (qubit c at bit n-1-c), so
/// bit q of the image, (Mx)_q, is the parity of rows[q] & x.
class F2Matrix {
  public:
    /// Throws InputError if the rows are singular or malformed.
    static F2Matrix from_rows(int n, std::vector<std::uint32_t> rows) {
        F2Matrix m(n, std::move(rows));
        if (m.rank() != n) throw InputError("F2Matrix: rows are not invertible over GF(2)");
        return m;
    }

    static F2Matrix identity(int n) {
        std::vector<std::uint32_t> rows(static_cast<std::size_t>(n));
        for (int q = 0; q < n; ++q) rows[static_cast<std::size_t>(q)] = std::uint32_t{1} << (n - 1 - q);
        return F2Matrix(n, std::move(rows));
    }

    /// CNOT with the given control and target qubits.
    static F2Matrix cnot(int n, int control, int target) {
        auto m = identity(n);
        m.rows_[static_cast<std::size_t>(target)] ^= std::uint32_t{1} << (n - 1 - control);
        return m;
    }

    int n() const { return n_; }
    const std::vector<std::uint32_t>& rows() const { return rows_; }
    bool entry(int row, int col) const { return (rows_[static_cast<std::size_t>(row)] >> (n_ - 1 - col)) & 1u; }

    std::uint32_t apply(std::uint32_t x) const {
        std::uint32_t out = 0;
        for (int q = 0; q < n_; ++q) {
            out |= static_cast<std::uint32_t>(dot_parity(rows_[static_cast<std::size_t>(q)], x)) << (n_ - 1 - q);
        }
        return out;
    }

    BitString apply(const BitString& x) const {
        if (x.size() != n_) throw InputError("F2Matrix::apply: dimension mismatch");
        return BitString(n_, apply(x.bits()));
    }

    /// Matrix product; (a * b).apply(x) == a.apply(b.apply(x)).
    friend F2Matrix operator*(const F2Matrix& a, const F2Matrix& b) {
        if (a.n_ != b.n_) throw InputError("F2Matrix: dimension mismatch in product");
        std::vector<std::uint32_t> rows(static_cast<std::size_t>(a.n_), 0);
        for (int i = 0; i < a.n_; ++i) {
            for (int k = 0; k < a.n_; ++k) {
                if (a.entry(i, k)) rows[static_cast<std::size_t>(i)] ^= b.rows_[static_cast<std::size_t>(k)];
            }
        }
        return F2Matrix(a.n_, std::move(rows));
    }

    F2Matrix transpose() const {
        std::vector<std::uint32_t> rows(static_cast<std::size_t>(n_), 0);
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < n_; ++j) {
                if (entry(j, i)) rows[static_cast<std::size_t>(i)] |= std::uint32_t{1} << (n_ - 1 - j);
            }
        }
        return F2Matrix(n_, std::move(rows));
    }

    /// Gauss-Jordan elimination on [M | I].
    F2Matrix inverse() const {
        auto a = rows_;
        auto inv = identity(n_).rows_;
        for (int col = 0; col < n_; ++col) {
            const std::uint32_t bit = std::uint32_t{1} << (n_ - 1 - col);
            int pivot = -1;
            for (int r = col; r < n_; ++r) {
                if (a[static_cast<std::size_t>(r)] & bit) {
                    pivot = r;
                    break;
                }
            }
            if (pivot < 0) throw InputError("F2Matrix::inverse: singular matrix");
            std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(pivot)]);
            std::swap(inv[static_cast<std::size_t>(col)], inv[static_cast<std::size_t>(pivot)]);
            for (int r = 0; r < n_; ++r) {
                if (r != col && (a[static_cast<std::size_t>(r)] & bit)) {
                    a[static_cast<std::size_t>(r)] ^= a[static_cast<std::size_t>(col)];
                    inv[static_cast<std::size_t>(r)] ^= inv[static_cast<std::size_t>(col)];
                }
            }
        }
        return F2Matrix(n_, std::move(inv));
    }

    int rank() const {
        auto a = rows_;
        int r = 0;
        for (int col = 0; col < n_ && r < n_; ++col) {
            const std::uint32_t bit = std::uint32_t{1} << (n_ - 1 - col);
            auto it = std::find_if(a.begin() + r, a.end(), [bit](std::uint32_t w) { return (w & bit) != 0; });
            if (it == a.end()) continue;
            std::iter_swap(a.begin() + r, it);
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (static_cast<int>(i) != r && (a[i] & bit)) a[i] ^= a[static_cast<std::size_t>(r)];
            }
            ++r;
        }
        return r;
    }

    /// Packs all n^2 bits into one word (row 0 most significant); needs n <= 8.
    std::uint64_t key() const {
        std::uint64_t k = 0;
        for (auto row : rows_) k = (k << n_) | row;
        return k;
    }

    friend bool operator==(const F2Matrix&, const F2Matrix&) = default;
    friend auto operator<=>(const F2Matrix& a, const F2Matrix& b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return a.rows_ <=> b.rows_;
    }

  private:
    F2Matrix(int n, std::vector<std::uint32_t> rows) : n_(n), rows_(std::move(rows)) {
        if (n < 1 || n > kMaxQubits) throw InputError("F2Matrix: n must be in [1, 30]");
        if (rows_.size() != static_cast<std::size_t>(n)) throw InputError("F2Matrix: need exactly n rows");
        for (auto row : rows_) {
            if (n < 32 && (row >> n) != 0) throw InputError("F2Matrix: row has bits beyond column n");
        }
    }

    int n_;
    std::vector<std::uint32_t> rows_;
};

/// Z-string conjugation under the reversible circuit U|x> = |Mx>.
///
/// U Z^y U^dagger = Z^{y'} with y' = M^{-T} y. This is a left action:
/// conjugate_zstring(A * B, y) == conjugate_zstring(A, conjugate_zstring(B, y)).
inline BitString conjugate_zstring(const F2Matrix& m, const BitString& y) {
    return m.inverse().transpose().apply(y);
}

/// GL(2,2): the six two-qubit reversible circuits generated by CNOTs, in a
/// fixed order starting with the identity.
inline const std::vector<F2Matrix>& local_group() {
    static const std::vector<F2Matrix> group = [] {
        std::vector<F2Matrix> g;
        for (std::uint32_t r0 = 1; r0 < 4; ++r0) {
            for (std::uint32_t r1 = 1; r1 < 4; ++r1) {
                if (r0 != r1) g.push_back(F2Matrix::from_rows(2, {r0, r1}));
            }
        }
        std::stable_partition(g.begin(), g.end(), [](const F2Matrix& m) { return m == F2Matrix::identity(2); });
        return g;
    }();
    return group;
}

/// Embeds a two-qubit element on the periodic pair (site, site+1 mod n); the
/// local element's first qubit is `site`.
inline F2Matrix embed_local(const F2Matrix& local, int n, int site) {
    if (local.n() != 2) throw InputError("embed_local: expected a 2x2 element");
    if (n < 2 || site < 0 || site >= n) throw InputError("embed_local: site out of range");
    const int a = site;
    const int b = (site + 1) % n;
    auto rows = F2Matrix::identity(n).rows();
    const std::uint32_t ea = std::uint32_t{1} << (n - 1 - a);
    const std::uint32_t eb = std::uint32_t{1} << (n - 1 - b);
    auto row = [&](int i) {
        return (local.entry(i, 0) ? ea : 0u) | (local.entry(i, 1) ? eb : 0u);
    };
    rows[static_cast<std::size_t>(a)] = row(0);
    rows[static_cast<std::size_t>(b)] = row(1);
    return F2Matrix::from_rows(n, std::move(rows));
}

}  // namespace rqcm
