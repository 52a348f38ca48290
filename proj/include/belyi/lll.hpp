#pragma once

#include <gmpxx.h>

#include <vector>

namespace belyi {

// Row basis of an integer lattice.
using IntegerLattice = std::vector<std::vector<mpz_class>>;

// Exact integral LLL on linearly independent rows, delta = num/den.
// Throws NumericError when the rows are dependent.
void lll_reduce(IntegerLattice& basis, long delta_num = 3, long delta_den = 4);

// checks the size-reduction and Lovasz conditions exactly
bool is_lll_reduced(const IntegerLattice& basis, long delta_num = 3, long delta_den = 4);

mpz_class squared_norm(const std::vector<mpz_class>& v);

}  // namespace belyi
