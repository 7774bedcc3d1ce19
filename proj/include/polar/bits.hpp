#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace polar {

using Bit = std::uint8_t;
using BitVector = std::vector<Bit>;

bool is_power_of_two(std::size_t v);

// log2 of a power of two; throws std::invalid_argument otherwise.
unsigned log2_exact(std::size_t v);

// XOR of all elements.
Bit parity(const BitVector& bits);

// Hex encoding of bit vectors: bit 0 maps to the most significant bit of
// the first hex digit; the final digit is zero-padded on the right.
std::string to_hex(const BitVector& bits);
BitVector from_hex(const std::string& hex, std::size_t bit_count);

}  // namespace polar
