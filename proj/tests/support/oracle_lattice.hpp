#pragma once

#include <vector>

#include "chc/integer_matrix.hpp"

namespace chc::testing {

// All invariant factors (including 1s) of an integer matrix, computed via
// gcds of k x k minors (determinantal divisors): s_k = D_k / D_{k-1}. A
// different algorithm from elimination-based Smith reduction; only suitable
// for small matrices.
std::vector<mpz_class> invariant_factors_oracle(const IntMatrix& a);

}  // namespace chc::testing
