#pragma once

#include <cassert>
#include <cstdint>
#include <string>
#include <string_view>

#include "optlab/errors.hpp"

namespace optlab {

/// Fixed-length bit sequence, at most 64 symbols.
///
/// Symbol 0 is the leftmost bit; an n-bit sequence read as an integer is
/// big-endian, so BitString(11, 4) is "1011". Every configuration encoding
/// in this project fits the 64-bit budget (the space size caps guarantee it),
/// which keeps encodings cheap to copy, hash, and feed to the complexity
/// estimator.
class BitString {
public:
    static constexpr uint32_t kMaxBits = 64;

    BitString() = default;

    BitString(uint64_t value, uint32_t size) : size_(size) {
        if (size > kMaxBits)
            throw ValidationError("bit sequence longer than 64 symbols");
        value_ = value & mask(size);
    }

    static BitString from_string(std::string_view s) {
        if (s.size() > kMaxBits)
            throw ValidationError("bit sequence longer than 64 symbols");
        BitString b;
        for (char ch : s) {
            if (ch != '0' && ch != '1')
                throw ValidationError(std::string("invalid bit character '") + ch + "'");
            b.append(ch == '1');
        }
        return b;
    }

    uint32_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    /// Value of symbol i (0 = leftmost).
    bool bit(uint32_t i) const {
        assert(i < size_);
        return (value_ >> (size_ - 1 - i)) & 1u;
    }

    /// The sequence read as a big-endian integer.
    uint64_t value() const { return value_; }

    void append(bool b) {
        assert(size_ < kMaxBits);
        value_ = (value_ << 1) | uint64_t(b);
        ++size_;
    }

    BitString complement() const { return {~value_ & mask(size_), size_}; }

    std::string str() const {
        std::string s(size_, '0');
        for (uint32_t i = 0; i < size_; ++i)
            if (bit(i)) s[i] = '1';
        return s;
    }

    /// Bits packed big-endian into bytes (first symbol = MSB of first byte,
    /// last byte zero-padded), then lowercase hex.
    std::string hex() const {
        static constexpr char digits[] = "0123456789abcdef";
        std::string out;
        const uint32_t nbytes = (size_ + 7) / 8;
        out.reserve(2 * nbytes);
        for (uint32_t j = 0; j < nbytes; ++j) {
            uint8_t byte = 0;
            for (uint32_t t = 0; t < 8; ++t) {
                uint32_t pos = 8 * j + t;
                byte = uint8_t(byte << 1);
                if (pos < size_ && bit(pos)) byte |= 1;
            }
            out.push_back(digits[byte >> 4]);
            out.push_back(digits[byte & 0xf]);
        }
        return out;
    }

    friend bool operator==(const BitString&, const BitString&) = default;

private:
    static constexpr uint64_t mask(uint32_t size) {
        return size >= 64 ? ~uint64_t{0} : (uint64_t{1} << size) - 1;
    }

    uint64_t value_ = 0;
    uint32_t size_ = 0;
};

} // namespace optlab
