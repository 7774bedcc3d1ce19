#include "polar/bits.hpp"

#include <bit>
#include <stdexcept>

namespace polar {

bool is_power_of_two(std::size_t v) { return v != 0 && std::has_single_bit(v); }

unsigned log2_exact(std::size_t v) {
    if (!is_power_of_two(v))
        throw std::invalid_argument("log2_exact: " + std::to_string(v) + " is not a power of two");
    return static_cast<unsigned>(std::bit_width(v) - 1);
}

Bit parity(const BitVector& bits) {
    Bit p = 0;
    for (Bit b : bits) p ^= (b & 1);
    return p;
}

std::string to_hex(const BitVector& bits) {
    static const char* digits = "0123456789ABCDEF";
    std::string out;
    out.reserve((bits.size() + 3) / 4);
    for (std::size_t i = 0; i < bits.size(); i += 4) {
        unsigned nibble = 0;
        for (std::size_t j = 0; j < 4; ++j) {
            nibble <<= 1;
            if (i + j < bits.size()) nibble |= (bits[i + j] & 1);
        }
        out.push_back(digits[nibble]);
    }
    return out;
}

BitVector from_hex(const std::string& hex, std::size_t bit_count) {
    const std::size_t want_digits = (bit_count + 3) / 4;
    if (hex.size() != want_digits)
        throw std::invalid_argument("from_hex: expected " + std::to_string(want_digits) +
                                    " hex digits for " + std::to_string(bit_count) + " bits, got " +
                                    std::to_string(hex.size()));
    BitVector bits(bit_count, 0);
    for (std::size_t d = 0; d < hex.size(); ++d) {
        char c = hex[d];
        unsigned nibble = 0;
        if (c >= '0' && c <= '9')
            nibble = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f')
            nibble = static_cast<unsigned>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F')
            nibble = static_cast<unsigned>(c - 'A' + 10);
        else
            throw std::invalid_argument(std::string("from_hex: bad hex digit '") + c + "'");
        for (std::size_t j = 0; j < 4; ++j) {
            const std::size_t idx = 4 * d + j;
            const Bit bit = static_cast<Bit>((nibble >> (3 - j)) & 1u);
            if (idx < bit_count) {
                bits[idx] = bit;
            } else if (bit != 0) {
                throw std::invalid_argument("from_hex: nonzero padding bits past position " +
                                            std::to_string(bit_count));
            }
        }
    }
    return bits;
}

}  // namespace polar
