#pragma once

#include <cstddef>
#include <deque>
#include <vector>

#include "pillai/realnum.hpp"

namespace pillai {

enum class SequenceKind { Padovan, Fibonacci };

// Grow-only cache of exact terms. P_{k+3} = P_{k+1} + P_k with seeds 1,1,1;
// F_{k+2} = F_{k+1} + F_k with seeds 0,1.
class TermCache {
  public:
    explicit TermCache(SequenceKind kind);
    const BigInt& term(size_t k);
    SequenceKind kind() const { return kind_; }
    // recompute from seeds and compare against the cache (test hook)
    bool audit(size_t up_to) const;

  private:
    SequenceKind kind_;
    std::deque<BigInt> terms_;  // growth keeps references stable
};

// shared per-process caches
const BigInt& term(SequenceKind kind, size_t k);

// Certified interval containing term(kind, k), from the Binet formulas.
// Escalates precision internally until the width drops below 1.
CertReal binet_enclosure(SequenceKind kind, size_t k, unsigned precision,
                         ConstantsProvider& constants);

// Indices k in [k_min, k_max] violating the growth sandwich
// alpha^{k-2} <= P_k <= alpha^{k-1} (k_min >= 4), resp.
// delta^{k-2} <= F_k <= delta^{k-1} (k_min >= 1). Empty when all hold.
std::vector<size_t> growth_bounds_report(SequenceKind kind, size_t k_min, size_t k_max,
                                         ConstantsProvider& constants);

}  // namespace pillai
