#pragma once

#include <stdexcept>
#include <string>

#include "polar/bits.hpp"

namespace polar {

// An (n, k) polar code: n = 2^m, frozen marks the n-k zeroed positions.
struct CodeConfig {
    std::size_t n = 0;
    std::size_t k = 0;
    unsigned m = 0;
    BitVector frozen;  // length n, 1 = frozen
};

// Builds a CodeConfig from an explicit frozen mask, validating its shape.
CodeConfig config_from_mask(std::size_t n, BitVector frozen);

// Bhattacharyya-parameter construction over a BEC with the given erasure
// probability: the n-k channels with the largest parameters are frozen,
// ties frozen toward the lower index.
CodeConfig construct_frozen(std::size_t n, std::size_t k, double design_param = 0.5);

// Synthetic-channel Bhattacharyya parameters for all n channels.
std::vector<double> bhattacharyya_parameters(std::size_t n, double design_param);

// Row i of the n x n generator matrix, the m-fold Kronecker power of
// [[1,0],[1,1]]: entry (i, k) is 1 iff the bits of k are a subset of i.
BitVector generator_row(std::size_t n, std::size_t i);

// In-place butterfly computing u * F^(m) over GF(2); self-inverse.
BitVector polar_transform(BitVector bits);

// x = u * G. u must have length n and zeros at frozen positions.
BitVector encode(const CodeConfig& cfg, const BitVector& u);

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Frozen-set file: first line "n k", then the n-k frozen indices in
// ascending order, whitespace separated.
CodeConfig load_frozen_file(const std::string& path);
void save_frozen_file(const CodeConfig& cfg, const std::string& path);

}  // namespace polar
