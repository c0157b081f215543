#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pillai/realnum.hpp"

namespace pillai {

using IndexPair = std::pair<int, int>;  // (m, n)
using DifferenceMap = std::map<BigInt, std::vector<IndexPair>>;

struct SolutionRecord {
    BigInt c;
    std::vector<IndexPair> pairs;  // lexicographically sorted, no duplicates
};

// Exact map of every P_m - F_n over the box. Requires m_min >= 4, n_min >= 2
// (Theorem domain); empty ranges yield an empty map.
DifferenceMap enumerate_differences(int m_min, int m_max, int n_min, int n_max);

std::vector<SolutionRecord> multi_represented(const DifferenceMap& map, size_t min_count);

// The 35 values of the theorem with their representation pairs.
const std::vector<SolutionRecord>& theorem1_table();

struct VerificationReport {
    int n_cutoff = 0;
    int m_cutoff = 0;
    bool matches_theorem = false;
    std::vector<SolutionRecord> records;
    std::vector<BigInt> missing;  // in the theorem list, not found
    std::vector<BigInt> extra;    // found, not in the theorem list
    size_t sandwich_checked = 0;  // informational growth-sandwich tally
    size_t sandwich_holds = 0;
};

// Derives the m-cutoff from the certified growth inequality
// alpha^{m-7} <= delta^{n-1} (and m < 2n), enumerates the implied rectangle,
// and compares the multi-represented set against the theorem table.
VerificationReport verify_theorem(int n_cutoff, ConstantsProvider& constants);

}  // namespace pillai
