#pragma once

#include <string>
#include <vector>

#include "pillai/realnum.hpp"

namespace pillai {

// One application of the Matveev lower bound with s numbers in a degree-D
// field. The A factors are upper bounds for max{D h(gamma_j), |log gamma_j|,
// 0.16}; factors of (1+log B) are kept symbolic (poly_degree counts them).
struct MatveevInstance {
    std::string label;  // Lambda, Lambda1, Lambda2, Lambda3
    long s = 3;
    long D = 6;
    std::vector<CertReal> A;
    int log_factor_degree = 1;  // power of (1+log 2n) in the final coefficient
};

// The chain of constants from the four instances down to the absolute bound.
struct BoundChain {
    CertReal matveev_c36;          // C(3,6)
    CertReal lambda_coefficient;   // ~8.45e13
    CertReal case1_coefficient;    // ~2.96e27
    CertReal case2_coefficient;    // ~1.97e27
    CertReal final_coefficient;    // ~2.08e41
    CertReal a1_lambda;            // 7.23
    CertReal a1_case1;             // ~2.534e14
    CertReal a1_case2;             // 1.69e14
    CertReal a1_case3;             // 1.78e28
    BigInt n_absolute;             // ~2.84e47
};

// C(s, D) = 1.4 * 30^{s+3} * s^{4.5} * D^2 (1 + log D)
CertReal matveev_constant(long s, long D, unsigned precision);

// C(s, D) * A_1 ... A_s
CertReal lower_bound_coefficient(const MatveevInstance& inst, unsigned precision);

// Case 1 height decomposition: (k/2) log delta + log sqrt5 + (log 23)/3 + log 2
CertReal height_bound_gamma1_case1(long k, const AlgebraicConstants& c);

// Least N with (n - offset) >= coefficient * (1 + log 2n)^exponent for all
// n >= N, by certified bisection on the monotone crossover.
BigInt derive_absolute_bound(const CertReal& coefficient, int exponent, long offset);

// Certified evaluation of the four Lambda expressions at given indices;
// true when every interval excludes zero.
bool nonvanishing_spot_check(long n, long n1, long m, long m1, unsigned precision,
                             ConstantsProvider& constants);

// Builds the full chain with the reference A1 choices validated against
// (and raised to, when the reference under-rounds) the certified heights.
BoundChain build_bound_chain(ConstantsProvider& constants, unsigned precision);

}  // namespace pillai
