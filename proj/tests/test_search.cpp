#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pillai/recurrences.hpp"
#include "pillai/search.hpp"

using namespace pillai;

TEST_CASE("table rows from the enumeration") {
    DifferenceMap map = enumerate_differences(4, 189, 2, 300);
    auto it = map.find(BigInt(-226));
    REQUIRE(it != map.end());
    CHECK(it->second == std::vector<IndexPair>{{8, 13}, {19, 14}});
    auto z = map.find(BigInt(0));
    REQUIRE(z != map.end());
    CHECK(z->second == std::vector<IndexPair>{{4, 3}, {5, 4}, {7, 5}, {12, 8}});
}

TEST_CASE("tiny boxes") {
    DifferenceMap one = enumerate_differences(4, 4, 2, 2);
    REQUIRE(one.size() == 1);
    CHECK(one.begin()->first == 1);  // P_4 - F_2 = 2 - 1
    CHECK(multi_represented(one, 2).empty());
    CHECK(enumerate_differences(4, 3, 2, 2).empty());
    CHECK_THROWS_AS(enumerate_differences(3, 10, 2, 10), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_differences(4, 10, 1, 10), std::invalid_argument);
}

TEST_CASE("multi-represented set equals the theorem table on the reference box") {
    DifferenceMap map = enumerate_differences(4, 189, 2, 300);
    auto records = multi_represented(map, 2);
    const auto& expected = theorem1_table();
    REQUIRE(records.size() == 35);
    REQUIRE(expected.size() == 35);
    for (size_t i = 0; i < records.size(); ++i) {
        CHECK(records[i].c == expected[i].c);
        CHECK(records[i].pairs == expected[i].pairs);
    }
}

TEST_CASE("record examples from the table") {
    DifferenceMap map = enumerate_differences(4, 189, 2, 300);
    auto records = multi_represented(map, 2);
    auto find = [&records](long c) {
        for (const auto& r : records)
            if (r.c == c) return r;
        return SolutionRecord{};
    };
    CHECK(find(-6).pairs == std::vector<IndexPair>{{4, 6}, {8, 7}, {13, 9}, {15, 10}});
    CHECK(find(0).pairs == std::vector<IndexPair>{{4, 3}, {5, 4}, {7, 5}, {12, 8}});
    CHECK(multi_represented(map, 10).empty());
    auto triples = multi_represented(map, 3);
    std::vector<long> got;
    for (const auto& r : triples) got.push_back(r.c.get_si());
    CHECK(got == std::vector<long>{-18, -6, -3, -1, 0, 1, 2, 3, 4, 6, 7, 8, 15});
}

TEST_CASE("round-trip: every emitted pair re-evaluates to its c") {
    DifferenceMap map = enumerate_differences(4, 189, 2, 300);
    for (const auto& rec : multi_represented(map, 2))
        for (const auto& [m, n] : rec.pairs)
            CHECK(term(SequenceKind::Padovan, static_cast<size_t>(m)) -
                      term(SequenceKind::Fibonacci, static_cast<size_t>(n)) ==
                  rec.c);
}

TEST_CASE("monotone completeness: enlarging the box keeps every record") {
    DifferenceMap small = enumerate_differences(4, 100, 2, 150);
    DifferenceMap big = enumerate_differences(4, 140, 2, 200);
    for (const auto& rec : multi_represented(small, 2)) {
        auto it = big.find(rec.c);
        REQUIRE(it != big.end());
        for (const auto& p : rec.pairs)
            CHECK(std::find(it->second.begin(), it->second.end(), p) != it->second.end());
    }
}

TEST_CASE("verify_theorem at the reference cutoff") {
    ConstantsProvider constants;
    VerificationReport rep = verify_theorem(300, constants);
    CHECK(rep.matches_theorem);
    CHECK(rep.records.size() == 35);
    CHECK(rep.missing.empty());
    CHECK(rep.extra.empty());
    // certified cutoff from alpha^{m-7} <= delta^{n-1}, far beyond the
    // published 190
    CHECK(rep.m_cutoff >= 500);
    CHECK(rep.m_cutoff <= 520);
    CHECK(rep.sandwich_checked == 35);
    CHECK(rep.sandwich_holds == 35);
}

TEST_CASE("verify_theorem at the reduced cutoff") {
    ConstantsProvider constants;
    VerificationReport rep = verify_theorem(274, constants);
    CHECK(rep.matches_theorem);
}

TEST_CASE("verify_theorem below the table's reach is a proper subset") {
    ConstantsProvider constants;
    VerificationReport rep = verify_theorem(10, constants);
    CHECK(!rep.matches_theorem);
    CHECK(rep.extra.empty());
    CHECK(!rep.missing.empty());
    CHECK(rep.records.size() < 35);
    // every found value is in the theorem list
    for (const auto& r : rep.records) {
        bool in_table = false;
        for (const auto& t : theorem1_table())
            if (t.c == r.c) in_table = true;
        CHECK(in_table);
    }
}
