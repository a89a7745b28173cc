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

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "rqcm/errors.hpp"

namespace rqcm {

inline constexpr int kMaxQubits = 30;

/// An n-bit label for a computational basis state or a Pauli-Z string.
///
/// Qubit q (0-based, q = 0 is the leftmost character of the text form) lives
/// at bit position n-1-q of `bits()`. With this layout integer order on the
/// packed word coincides with lexicographic order on the text form, and the
/// packed word doubles as the index of |x> in a 2^n amplitude array.
class BitString {
  public:
    BitString() = default;

    BitString(int n, std::uint32_t bits) : n_(n), bits_(bits) {
        if (n < 1 || n > kMaxQubits) {
            throw InputError("BitString: qubit count must be in [1, 30], got " + std::to_string(n));
        }
        if (n < 32 && (bits >> n) != 0) {
            throw InputError("BitString: value has bits above position n");
        }
    }

    static BitString parse(std::string_view text) {
        if (text.empty() || text.size() > static_cast<std::size_t>(kMaxQubits)) {
            throw InputError("BitString: literal length must be in [1, 30]");
        }
        std::uint32_t v = 0;
        for (char c : text) {
            if (c != '0' && c != '1') {
                throw InputError("BitString: literal may contain only '0' and '1'");
            }
            v = (v << 1) | static_cast<std::uint32_t>(c - '0');
        }
        return BitString(static_cast<int>(text.size()), v);
    }

    static BitString zeros(int n) { return BitString(n, 0); }

    /// The string with a single 1 at qubit q.
    static BitString unit(int n, int q) { return BitString(n, std::uint32_t{1} << (n - 1 - q)); }

    int size() const { return n_; }
    std::uint32_t bits() const { return bits_; }
    bool is_zero() const { return bits_ == 0; }
    bool at(int q) const { return (bits_ >> (n_ - 1 - q)) & 1u; }

    std::string str() const {
        std::string s(static_cast<std::size_t>(n_), '0');
        for (int q = 0; q < n_; ++q) {
            if (at(q)) s[static_cast<std::size_t>(q)] = '1';
        }
        return s;
    }

    friend BitString operator^(BitString a, BitString b) {
        require_same_size(a, b);
        return BitString(a.n_, a.bits_ ^ b.bits_);
    }

    friend bool operator==(const BitString&, const BitString&) = default;
    friend auto operator<=>(const BitString& a, const BitString& b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return a.bits_ <=> b.bits_;
    }

    static void require_same_size(const BitString& a, const BitString& b) {
        if (a.n_ != b.n_) {
            throw InputError("BitString: length mismatch (" + std::to_string(a.n_) + " vs " +
                             std::to_string(b.n_) + ")");
        }
    }

  private:
    int n_ = 1;
    std::uint32_t bits_ = 0;
};

/// Parity of <y, x> over GF(2), on packed words.
inline int dot_parity(std::uint32_t y, std::uint32_t x) { return std::popcount(y & x) & 1; }

/// The character p_y(x) = (-1)^{<y,x>}. Bit value b corresponds to the sign (-1)^b.
inline int monomial_sign(std::uint32_t y, std::uint32_t x) { return 1 - 2 * dot_parity(y, x); }

inline int monomial_eval(const BitString& y, const BitString& x) {
    BitString::require_same_size(y, x);
    return monomial_sign(y.bits(), x.bits());
}

}  // namespace rqcm
