#pragma once

#include <vector>

#include "polar/bits.hpp"

// Independent reference implementations used only by tests: the generator
// matrix is materialized by explicit block doubling (G_{2L} = [[G,0],[G,G]])
// and multiplied out column by column, with no shortcuts shared with the
// library code paths under test.
namespace oracle {

using Matrix = std::vector<polar::BitVector>;  // row-major, square

Matrix kronecker_power(std::size_t n);

// u * G over GF(2)
polar::BitVector matvec_gf2(const polar::BitVector& u, const Matrix& g);

// Gaussian tail probability Q(x)
double q_function(double x);

}  // namespace oracle
