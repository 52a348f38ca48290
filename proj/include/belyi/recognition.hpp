#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "belyi/bigfloat.hpp"
#include "belyi/dessin.hpp"
#include "belyi/exact.hpp"
#include "belyi/field.hpp"
#include "belyi/newton.hpp"

namespace belyi {

// Small integer vector r with sum r_i v_i ~ 0, the values being good to
// `digits` significant digits.  Accepted when |sum| < 10^(-digits/2) M,
// M = max(1, max |v_i|), and max |r_i| <= 10^(P / (2 m)) for m values,
// with P = digits for real input and 2 digits for complex input.
std::optional<std::vector<mpz_class>> integer_relation(const std::vector<BigComplex>& v, long digits,
                                                       double lll_delta = 0.99);

// integer polynomial of degree <= d vanishing at x, low-to-high
std::optional<std::vector<mpz_class>> algdep(const BigComplex& x, int d, long digits, double lll_delta = 0.99);

// tries d = 1, 2, ..., max_degree; primitive, positive leading coefficient
std::optional<std::vector<mpz_class>> minimal_polynomial(const BigComplex& x, int max_degree, long digits,
                                                         double lll_delta = 0.99);

mpz_class height(const std::vector<mpz_class>& p);

// A common number field containing every value, with the values as exact
// elements.  The generator is one of the values (or a small combination);
// rational input gives Q.  Throws RecognitionFailure.
struct UnifiedField {
  FieldPtr field;
  std::vector<FieldElement> values;
};

UnifiedField unify_field(const std::vector<BigComplex>& values, int max_degree, long digits,
                         double lll_delta = 0.99);

// Recognizes the free coefficients of P3, P1, Q2, Q1, derives c and R
// exactly and checks them against the numeric solution.
ExactAnsatz exactify(const NumericAnsatz& a, const Passport& p, int max_degree, long digits,
                     double lll_delta = 0.99);

}  // namespace belyi
