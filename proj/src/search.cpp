#include "pillai/search.hpp"

#include <algorithm>
#include <stdexcept>

#include "pillai/recurrences.hpp"

namespace pillai {

DifferenceMap enumerate_differences(int m_min, int m_max, int n_min, int n_max) {
    if (m_min < 4 || n_min < 2)
        throw std::invalid_argument("enumerate_differences: theorem domain is m >= 4, n >= 2");
    DifferenceMap out;
    TermCache padovan(SequenceKind::Padovan);
    TermCache fibonacci(SequenceKind::Fibonacci);
    for (int m = m_min; m <= m_max; ++m) {
        const BigInt& pm = padovan.term(static_cast<size_t>(m));
        for (int n = n_min; n <= n_max; ++n) {
            BigInt c = pm - fibonacci.term(static_cast<size_t>(n));
            out[c].emplace_back(m, n);
        }
    }
    for (auto& [c, pairs] : out) std::sort(pairs.begin(), pairs.end());
    return out;
}

std::vector<SolutionRecord> multi_represented(const DifferenceMap& map, size_t min_count) {
    std::vector<SolutionRecord> out;
    for (const auto& [c, pairs] : map)
        if (pairs.size() >= min_count) out.push_back({c, pairs});
    return out;  // std::map iteration is already ascending in c
}

const std::vector<SolutionRecord>& theorem1_table() {
    static const std::vector<SolutionRecord> table = [] {
        std::vector<SolutionRecord> t;
        auto add = [&t](long c, std::vector<IndexPair> ps) {
            t.push_back({BigInt(c), std::move(ps)});
        };
        add(-226, {{8, 13}, {19, 14}});
        add(-82, {{8, 11}, {19, 13}});
        add(-52, {{5, 10}, {14, 11}});
        add(-30, {{6, 9}, {18, 12}});
        add(-27, {{8, 9}, {13, 10}});
        add(-18, {{5, 8}, {11, 9}, {14, 10}});
        add(-9, {{6, 7}, {10, 8}});
        add(-6, {{4, 6}, {8, 7}, {13, 9}, {15, 10}});
        add(-5, {{5, 6}, {11, 8}});
        add(-4, {{6, 6}, {9, 7}});
        add(-3, {{4, 5}, {7, 6}, {17, 11}});
        add(-1, {{4, 4}, {6, 5}, {8, 6}, {10, 7}});
        add(0, {{4, 3}, {5, 4}, {7, 5}, {12, 8}});
        add(1, {{4, 2}, {5, 3}, {6, 4}, {9, 6}});
        add(2, {{5, 2}, {6, 3}, {7, 4}, {8, 5}});
        add(3, {{6, 2}, {7, 3}, {11, 7}, {14, 9}});
        add(4, {{7, 2}, {8, 4}, {9, 5}, {10, 6}});
        add(6, {{8, 2}, {9, 4}, {24, 15}});
        add(7, {{9, 3}, {10, 5}, {13, 8}, {19, 12}});
        add(8, {{9, 2}, {11, 6}, {12, 7}});
        add(10, {{10, 3}, {16, 10}});
        add(11, {{10, 2}, {11, 5}});
        add(13, {{11, 4}, {12, 6}});
        add(15, {{11, 2}, {13, 7}, {15, 9}});
        add(16, {{12, 5}, {14, 8}});
        add(20, {{12, 2}, {13, 6}});
        add(25, {{13, 4}, {18, 11}});
        add(31, {{16, 9}, {17, 10}});
        add(32, {{14, 5}, {21, 13}});
        add(36, {{14, 2}, {15, 7}});
        add(44, {{15, 5}, {16, 8}});
        add(52, {{16, 7}, {17, 9}});
        add(62, {{16, 4}, {19, 11}});
        add(111, {{18, 4}, {20, 11}});
        add(262, {{21, 4}, {22, 11}});
        return t;
    }();
    return table;
}

namespace {

// m-cutoff from alpha^{m-7} <= delta^{n-1}: m <= 7 + (n-1) log delta / log alpha
int certified_m_cutoff(int n_cutoff, ConstantsProvider& constants) {
    const AlgebraicConstants& c = constants.at(kComparePrecisionStart);
    CertReal bound = CertReal(static_cast<long>(n_cutoff) - 1, c.precision) *
                         (c.log_delta / c.log_alpha) +
                     7;
    long m = bound.ceil_hi().get_si();
    return static_cast<int>(std::min<long>(m, 2L * n_cutoff));
}

// informational: corrected Eq.-(8) sandwich on a record's largest pair
bool sandwich_holds(const IndexPair& pair, const AlgebraicConstants& c) {
    auto [m, n] = pair;
    CertReal ratio = c.log_alpha / c.log_delta;
    CertReal low = ratio * (static_cast<long>(m) - 7) + 1;
    CertReal high = ratio * (static_cast<long>(m) - 1) + 4;
    BigInt nn(static_cast<long>(n));
    return low.cmp_hi(nn) < 0 && high.cmp_lo(nn) > 0;
}

}  // namespace

VerificationReport verify_theorem(int n_cutoff, ConstantsProvider& constants) {
    if (n_cutoff < 2) throw std::invalid_argument("verify_theorem: n_cutoff too small");
    VerificationReport rep;
    rep.n_cutoff = n_cutoff;
    rep.m_cutoff = certified_m_cutoff(n_cutoff, constants);

    DifferenceMap diffs = enumerate_differences(4, rep.m_cutoff, 2, n_cutoff);
    rep.records = multi_represented(diffs, 2);

    const auto& expected = theorem1_table();
    auto key = [](const std::vector<SolutionRecord>& v) {
        std::vector<BigInt> k;
        for (const auto& r : v) k.push_back(r.c);
        return k;
    };
    std::vector<BigInt> got = key(rep.records), want = key(expected);
    std::set_difference(want.begin(), want.end(), got.begin(), got.end(),
                        std::back_inserter(rep.missing));
    std::set_difference(got.begin(), got.end(), want.begin(), want.end(),
                        std::back_inserter(rep.extra));
    rep.matches_theorem = rep.missing.empty() && rep.extra.empty();
    if (rep.matches_theorem) {
        for (size_t i = 0; i < expected.size(); ++i)
            if (rep.records[i].pairs != expected[i].pairs) rep.matches_theorem = false;
    }

    const AlgebraicConstants& c = constants.at(kComparePrecisionStart);
    for (const auto& r : rep.records) {
        ++rep.sandwich_checked;
        if (sandwich_holds(r.pairs.back(), c)) ++rep.sandwich_holds;
    }
    return rep;
}

}  // namespace pillai
