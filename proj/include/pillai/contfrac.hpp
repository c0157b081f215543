#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pillai/realnum.hpp"

namespace pillai {

// Re-evaluates a real at the requested precision; must be re-entrant.
using RefinableReal = std::function<CertReal(unsigned precision)>;

struct PartialQuotients {
    std::vector<BigInt> a;  // a0, a1, ...
    std::string source;
    bool truncated = false;          // precision cap reached before `count`
    bool exhausted = false;          // input was rational and fully expanded
    unsigned precision_used = 0;
    std::vector<size_t> suspicious;  // indices with a_i > 10^6
};

struct Convergent {
    size_t index;
    BigInt p;
    BigInt q;
};

// Certified expansion: a quotient is emitted only once floor(lo) == floor(hi)
// for the current remainder interval, escalating precision otherwise.
PartialQuotients expand(const RefinableReal& x, size_t count, std::string source_desc,
                        unsigned start_precision = kDefaultPrecision,
                        unsigned max_precision = kPrecisionCap);

// Exact expansion of a rational input (conceptually the point interval
// [x, x]); terminates when the Euclidean remainder vanishes.
PartialQuotients expand(const BigRat& x, size_t count, std::string source_desc);

std::vector<Convergent> convergents(const PartialQuotients& pq);

// Least-index convergent with q > threshold; nullopt when the expansion is
// too short (caller extends).
std::optional<Convergent> first_convergent_exceeding(const std::vector<Convergent>& conv,
                                                     const BigInt& threshold);
std::optional<Convergent> first_convergent_exceeding(const PartialQuotients& pq,
                                                     const BigInt& threshold);

}  // namespace pillai
