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

#include "rqcm/f2_matrix.hpp"

#include <gtest/gtest.h>

#include <set>

#include "rqcm/rng.hpp"

using namespace rqcm;

namespace {

F2Matrix random_invertible(int n, Stream& rng) {
    for (;;) {
        std::vector<std::uint32_t> rows(static_cast<std::size_t>(n));
        for (auto& r : rows) r = static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << n));
        try {
            return F2Matrix::from_rows(n, rows);
        } catch (const InputError&) {
        }
    }
}

}  // namespace

TEST(F2Matrix, CnotActsOnBasisStrings) {
    const auto c = F2Matrix::cnot(2, 0, 1);
    EXPECT_EQ(c.apply(BitString::parse("10")).str(), "11");
    EXPECT_EQ(c.apply(BitString::parse("11")).str(), "10");
    EXPECT_EQ(c.apply(BitString::parse("01")).str(), "01");
    EXPECT_EQ(c.apply(BitString::parse("00")).str(), "00");
    const auto c3 = F2Matrix::cnot(3, 2, 0);
    EXPECT_EQ(c3.apply(BitString::parse("001")).str(), "101");
}

TEST(F2Matrix, ZStringConjugationOfCnot) {
    // CNOT (control 0, target 1): Z on the control commutes through, Z on the
    // target picks up a Z on the control.
    const auto c = F2Matrix::cnot(2, 0, 1);
    EXPECT_EQ(conjugate_zstring(c, BitString::parse("10")).str(), "10");
    EXPECT_EQ(conjugate_zstring(c, BitString::parse("01")).str(), "11");
    EXPECT_EQ(conjugate_zstring(c, BitString::parse("11")).str(), "01");
}

TEST(F2Matrix, ConjugationMatchesDiagonalOperator) {
    // U Z^y U^dagger is diagonal with entry (-1)^{<y,x>} at |Mx>; it must equal Z^{y'}.
    Stream rng(1, 0);
    for (int n = 2; n <= 5; ++n) {
        for (int rep = 0; rep < 20; ++rep) {
            const auto m = random_invertible(n, rng);
            for (std::uint32_t y = 0; y < (1u << n); ++y) {
                const auto yp = conjugate_zstring(m, BitString(n, y)).bits();
                for (std::uint32_t x = 0; x < (1u << n); ++x) {
                    ASSERT_EQ(dot_parity(yp, m.apply(x)), dot_parity(y, x));
                }
            }
        }
    }
}

TEST(F2Matrix, ConjugationIsALeftAction) {
    Stream rng(2, 0);
    for (int rep = 0; rep < 50; ++rep) {
        const auto a = random_invertible(4, rng), b = random_invertible(4, rng);
        const BitString y(4, static_cast<std::uint32_t>(rng.below(16)));
        EXPECT_EQ(conjugate_zstring(a * b, y), conjugate_zstring(a, conjugate_zstring(b, y)));
    }
}

TEST(F2Matrix, ProductInverseTranspose) {
    Stream rng(3, 0);
    for (int n : {1, 2, 3, 7, 16, 30}) {
        const auto a = random_invertible(n, rng), b = random_invertible(n, rng);
        for (int rep = 0; rep < 20; ++rep) {
            const auto x = static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << n));
            EXPECT_EQ((a * b).apply(x), a.apply(b.apply(x)));
            EXPECT_EQ(a.inverse().apply(a.apply(x)), x);
        }
        EXPECT_EQ(a * a.inverse(), F2Matrix::identity(n));
        EXPECT_EQ(a.transpose().transpose(), a);
        EXPECT_EQ((a * b).transpose(), b.transpose() * a.transpose());
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) EXPECT_EQ(a.transpose().entry(r, c), a.entry(c, r));
        }
    }
}

TEST(F2Matrix, RejectsSingularRows) {
    EXPECT_THROW(F2Matrix::from_rows(2, {0b11, 0b11}), InputError);
    EXPECT_THROW(F2Matrix::from_rows(3, {0b100, 0b010, 0b110}), InputError);
    EXPECT_NO_THROW(F2Matrix::from_rows(3, {0b100, 0b010, 0b111}));
}

TEST(LocalGroup, IsGL22) {
    const auto& g = local_group();
    ASSERT_EQ(g.size(), 6u);
    EXPECT_EQ(g.front(), F2Matrix::identity(2));
    std::set<F2Matrix> s(g.begin(), g.end());
    EXPECT_EQ(s.size(), 6u);
    for (const auto& a : g) {
        for (const auto& b : g) EXPECT_TRUE(s.count(a * b));
    }
    EXPECT_TRUE(s.count(F2Matrix::cnot(2, 0, 1)));
    EXPECT_TRUE(s.count(F2Matrix::cnot(2, 1, 0)));
}

TEST(LocalGroup, EmbeddingWrapsAroundTheRing) {
    const auto e = embed_local(F2Matrix::cnot(2, 0, 1), 4, 3);
    EXPECT_EQ(e, F2Matrix::cnot(4, 3, 0));
    EXPECT_EQ(embed_local(F2Matrix::cnot(2, 1, 0), 4, 1), F2Matrix::cnot(4, 2, 1));
    EXPECT_THROW(embed_local(F2Matrix::identity(3), 4, 0), InputError);
    EXPECT_THROW(embed_local(F2Matrix::identity(2), 4, 4), InputError);
}
