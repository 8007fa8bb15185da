#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nbl {

/// Fixed-length string of logic bits b_0..b_{N-1}. Rendered with b_0 as the
/// leftmost character; the dense-vector index maps b_i to the 2^i place.
class BitString {
  public:
    explicit BitString(std::size_t n) : bits_(n, 0) {}

    static BitString parse(std::string_view text) {
        BitString b(text.size());
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] == '1')
                b.bits_[i] = 1;
            else if (text[i] != '0')
                throw std::invalid_argument("BitString: expected only '0'/'1'");
        }
        return b;
    }

    static BitString from_index(std::size_t n, std::uint64_t index) {
        if (n > 64)
            throw std::invalid_argument("BitString::from_index: n > 64");
        BitString b(n);
        for (std::size_t i = 0; i < n; ++i)
            b.bits_[i] = static_cast<std::uint8_t>((index >> i) & 1u);
        return b;
    }

    std::size_t size() const noexcept { return bits_.size(); }
    int operator[](std::size_t i) const { return bits_.at(i); }
    void set(std::size_t i, int v) { bits_.at(i) = v ? 1 : 0; }

    BitString flipped(std::size_t i) const {
        BitString b = *this;
        b.bits_.at(i) ^= 1u;
        return b;
    }

    /// Dense-vector index with b_0 in the least significant position.
    std::uint64_t index() const {
        if (size() > 64)
            throw std::domain_error("BitString::index: more than 64 bits");
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < size(); ++i)
            idx |= static_cast<std::uint64_t>(bits_[i]) << i;
        return idx;
    }

    std::string str() const {
        std::string s(size(), '0');
        for (std::size_t i = 0; i < size(); ++i)
            if (bits_[i])
                s[i] = '1';
        return s;
    }

    friend bool operator==(const BitString&, const BitString&) = default;
    friend auto operator<=>(const BitString&, const BitString&) = default;

  private:
    std::vector<std::uint8_t> bits_;
};

} // namespace nbl
