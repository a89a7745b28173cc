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

#include "rqcm/bitstring.hpp"

#include <gtest/gtest.h>

using rqcm::BitString;

TEST(BitString, TextRoundTripAndQubitOrder) {
    const auto b = BitString::parse("0110");
    EXPECT_EQ(b.size(), 4);
    EXPECT_EQ(b.bits(), 0b0110u);
    EXPECT_EQ(b.str(), "0110");
    EXPECT_FALSE(b.at(0));
    EXPECT_TRUE(b.at(1));
    EXPECT_TRUE(b.at(2));
    EXPECT_FALSE(b.at(3));
    EXPECT_EQ(BitString::unit(4, 0).str(), "1000");
    EXPECT_EQ(BitString::unit(4, 3).str(), "0001");
}

TEST(BitString, IntegerOrderIsLexicographic) {
    for (std::uint32_t a = 0; a < 32; ++a) {
        for (std::uint32_t b = 0; b < 32; ++b) {
            const BitString x(5, a), y(5, b);
            EXPECT_EQ(x < y, x.str() < y.str());
        }
    }
}

TEST(BitString, RejectsBadInput) {
    EXPECT_THROW(BitString::parse(""), rqcm::InputError);
    EXPECT_THROW(BitString::parse("01a"), rqcm::InputError);
    EXPECT_THROW(BitString::parse(std::string(31, '0')), rqcm::InputError);
    EXPECT_THROW(BitString(3, 8u), rqcm::InputError);
    EXPECT_THROW(BitString(0, 0u), rqcm::InputError);
    EXPECT_NO_THROW(BitString(30, (1u << 30) - 1));
}

TEST(BitString, XorNeedsEqualLength) {
    EXPECT_EQ((BitString::parse("0110") ^ BitString::parse("1100")).str(), "1010");
    EXPECT_THROW(BitString::parse("01") ^ BitString::parse("011"), rqcm::InputError);
}

TEST(Monomial, MatchesCharacterDefinition) {
    // p_y(x) = prod_q (-1)^{y_q x_q}, computed qubit by qubit from the text form.
    for (std::uint32_t y = 0; y < 16; ++y) {
        for (std::uint32_t x = 0; x < 16; ++x) {
            const BitString ys(4, y), xs(4, x);
            int sign = 1;
            for (int q = 0; q < 4; ++q) {
                if (ys.str()[q] == '1' && xs.str()[q] == '1') sign = -sign;
            }
            EXPECT_EQ(rqcm::monomial_eval(ys, xs), sign);
        }
    }
}

TEST(Monomial, ZeroStringIsConstantAndLengthsMustMatch) {
    for (std::uint32_t x = 0; x < 8; ++x) EXPECT_EQ(rqcm::monomial_eval(BitString::zeros(3), BitString(3, x)), 1);
    EXPECT_EQ(rqcm::monomial_eval(BitString::parse("1"), BitString::parse("1")), -1);
    EXPECT_THROW(rqcm::monomial_eval(BitString::parse("01"), BitString::parse("011")), rqcm::InputError);
}
