// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. argv[1] = path to the pillai CLI, argv[2] = Table-1 CSV fixture.
#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pillai/certificate.hpp"
#include "pillai/recurrences.hpp"

using namespace pillai;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what) {
    std::printf("%s criterion-%d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string run_command(const std::string& cmd, int& exit_code) {
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        exit_code = -1;
        return out;
    }
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

BigRat rat(const char* s) {
    BigRat r(s);
    r.canonicalize();
    return r;
}

bool within_rel5(const CertReal& x, const BigRat& target) {
    CertReal t(target, x.precision());
    return (((x - t) / t).abs()).cmp_hi(rat("5/100")) < 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: acceptance <pillai-cli> <table1.csv>\n");
        return 2;
    }
    const std::string cli = argv[1];
    const std::string fixture_path = argv[2];
    ConstantsProvider constants;

    // 1. Table 1 reproduction, byte-for-byte, < 5 s
    {
        auto t0 = Clock::now();
        int code = 0;
        std::string got =
            run_command(cli + " search --m-max 189 --n-max 300 --min-reps 2 --format csv", code);
        double secs = seconds_since(t0);
        std::string want = slurp(fixture_path);
        bool ok = code == 0 && !want.empty() && got == want && secs < 5.0;
        std::ostringstream ss;
        ss << "Table 1 byte-for-byte (exit " << code << ", " << secs << " s)";
        report(1, ok, ss.str());
    }

    // 2. Theorem 1 list equality, exact
    {
        DifferenceMap map = enumerate_differences(4, 189, 2, 300);
        auto records = multi_represented(map, 2);
        static const long expected[] = {-226, -82, -52, -30, -27, -18, -9, -6, -5, -4, -3, -1,
                                        0,    1,   2,   3,   4,   6,   7,  8,  10, 11, 13, 15,
                                        16,   20,  25,  31,  32,  36,  44, 52, 62, 111, 262};
        bool ok = records.size() == 35;
        for (size_t i = 0; ok && i < records.size(); ++i)
            if (records[i].c != expected[i]) ok = false;
        report(2, ok, "35 values of c match the theorem list exactly");
    }

    // 3. Continued-fraction fidelity, < 10 s at 512 bits
    {
        auto t0 = Clock::now();
        auto pq = expand(make_tau(CampaignSign::Positive, constants), 105,
                         "log delta / log alpha", 512);
        static const long prefix[] = {1, 1, 2, 2, 6, 2, 1, 2, 1, 2, 1, 1, 11, 1, 2, 3, 1, 7, 37, 4};
        bool ok = pq.a.size() >= 20 && !pq.truncated;
        for (size_t i = 0; ok && i < 20; ++i)
            if (pq.a[i] != prefix[i]) ok = false;
        BigInt p98("78093067704223831799032754534503501859635391435517");
        BigInt q98("45634243076387457097046528084208490147594968308975");
        bool found = false;
        for (const auto& c : convergents(pq))
            if (c.p == p98 && c.q == q98) found = true;
        double secs = seconds_since(t0);
        ok = ok && found && secs < 10.0;
        std::ostringstream ss;
        ss << "prefix and printed 50-digit p98/q98 reproduced (" << secs << " s)";
        report(3, ok, ss.str());
    }

    // 4. Matveev chain within 5%, < 1 s
    BigInt m_paper;
    {
        auto t0 = Clock::now();
        BoundChain chain = build_bound_chain(constants, 512);
        m_paper = chain.n_absolute;
        double secs = seconds_since(t0);
        bool ok = within_rel5(chain.lambda_coefficient, rat("84500000000000")) &&
                  within_rel5(chain.case1_coefficient, rat("2960000000000000000000000000")) &&
                  within_rel5(chain.case2_coefficient, rat("1970000000000000000000000000")) &&
                  within_rel5(chain.final_coefficient,
                              rat("208000000000000000000000000000000000000000"));
        BigRat ratio(chain.n_absolute,
                     BigInt("283000000000000000000000000000000000000000000000"));
        ratio.canonicalize();
        ok = ok && ratio > rat("95/100") && ratio < rat("105/100") && secs < 1.0;
        std::ostringstream ss;
        ss << "coefficients and absolute bound within 5% of reference (" << secs << " s)";
        report(4, ok, ss.str());
    }

    // 5. Reduction campaigns: certified eps > 0 everywhere, k-bounds within +5
    {
        auto t0 = Clock::now();
        CampaignOptions opts;
        auto conv_tau =
            convergents(expand(make_tau(CampaignSign::Positive, constants), 115, "tau"));
        auto conv_taur =
            convergents(expand(make_tau(CampaignSign::Negative, constants), 115, "taur"));
        auto gpos = run_gamma_case(CampaignSign::Positive, m_paper, conv_tau, constants, opts);
        auto gneg = run_gamma_case(CampaignSign::Negative, m_paper, conv_taur, constants, opts);
        bool ok = gpos.delta_branch.k_bound <= 250 + 5 && gpos.alpha_branch.k_bound <= 420 + 5 &&
                  gneg.delta_branch.k_bound <= 242 + 5 && gneg.alpha_branch.k_bound <= 406 + 5 &&
                  gpos.delta_branch.epsilon.cmp_lo(BigInt(0)) > 0 &&
                  gneg.delta_branch.epsilon.cmp_lo(BigInt(0)) > 0;
        auto g1p = campaign_gamma1(1, 250, CampaignSign::Positive, m_paper, conv_tau, constants,
                                   opts);
        auto g1n = campaign_gamma1(1, 250, CampaignSign::Negative, m_paper, conv_taur, constants,
                                   opts);
        auto g2 = campaign_gamma2(1, 420, CampaignSign::Positive, m_paper, conv_tau, constants,
                                  opts);
        CampaignOptions g3opts;
        g3opts.min_conv_index = 99;
        g3opts.record_points = false;
        auto g3 = campaign_gamma3(264, 446, CampaignSign::Positive, m_paper, conv_tau, constants,
                                  g3opts);
        double secs = seconds_since(t0);
        ok = ok && g1p.unresolved.empty() && g1n.unresolved.empty() && g2.unresolved.empty() &&
             g3.unresolved.empty();
        ok = ok && g1p.min_epsilon.cmp_lo(BigInt(0)) > 0 && g1n.min_epsilon.cmp_lo(BigInt(0)) > 0 &&
             g2.min_epsilon.cmp_lo(BigInt(0)) > 0 && g3.min_epsilon.cmp_lo(BigInt(0)) > 0;
        ok = ok && g1p.max_k_bound <= 446 + 5 && g1n.max_k_bound <= 429 + 5 &&
             g2.max_k_bound <= 263 + 5 && g3.max_k_bound <= 274 + 5;
        ok = ok && secs < 600.0;
        std::ostringstream ss;
        ss << "gamma " << gpos.delta_branch.k_bound << "/" << gpos.alpha_branch.k_bound << "/"
           << gneg.delta_branch.k_bound << "/" << gneg.alpha_branch.k_bound << ", gamma1 "
           << g1p.max_k_bound << "/" << g1n.max_k_bound << ", gamma2 " << g2.max_k_bound
           << ", gamma3 " << g3.max_k_bound << " (" << secs << " s)";
        report(5, ok, ss.str());
    }

    // 6. Height of sqrt5*a brackets 1.204
    {
        CertReal h = height_from_minpoly(AlgebraicConstants::minpoly_sqrt5a(), 512);
        bool ok = h.cmp_lo(rat("1195/1000")) > 0 && h.cmp_hi(rat("1215/1000")) < 0;
        report(6, ok, "h(sqrt5 a) in (1.195, 1.215), value " + h.str(10));
    }

    // 7. Property suites
    {
        bool ok = true;
        for (size_t m = 5; m <= 500 && ok; ++m)
            ok = term(SequenceKind::Padovan, m) - term(SequenceKind::Padovan, m - 1) ==
                 term(SequenceKind::Padovan, m - 5);
        ok = ok && growth_bounds_report(SequenceKind::Padovan, 4, 1000, constants).empty();
        ok = ok && growth_bounds_report(SequenceKind::Fibonacci, 1, 1000, constants).empty();
        for (size_t k = 0; k <= 200 && ok; ++k) {
            ok = binet_enclosure(SequenceKind::Padovan, k, 192, constants)
                     .contains(term(SequenceKind::Padovan, k)) &&
                 binet_enclosure(SequenceKind::Fibonacci, k, 192, constants)
                     .contains(term(SequenceKind::Fibonacci, k));
        }
        auto pq = expand(make_tau(CampaignSign::Positive, constants), 100, "tau");
        auto conv = convergents(pq);
        for (size_t i = 0; i + 1 < conv.size() && ok; ++i)
            ok = abs(conv[i].p * conv[i + 1].q - conv[i + 1].p * conv[i].q) == 1;
        // Lemma-2 soundness: no m <= 1e4 violates the certified exclusion
        CampaignOptions opts;
        auto rep = run_gamma_case(CampaignSign::Positive, m_paper, conv, constants, opts);
        const AlgebraicConstants& c = constants.at(192);
        CertReal t = c.log_delta / c.log_alpha;
        CertReal u = -c.sqrt5_a.log() / c.log_alpha;
        CertReal lim_d = c.delta.pow(-rep.delta_branch.k_bound) * 170;
        CertReal lim_a = c.alpha.pow(-rep.alpha_branch.k_bound) * 20;
        for (long m = 1; m <= 10000 && ok; ++m) {
            CertReal y = t * m + u;
            CertReal v = y - CertReal(y.round_mid(), 192);
            bool clear = v.cmp_hi(BigInt(0)) <= 0 ||
                         (certified_compare(lim_d, v) == Ordering::Less &&
                          certified_compare(lim_a, v) == Ordering::Less);
            ok = clear;
        }
        // same scan against two campaign certificates (gamma1, k = 1 and 2)
        auto g1 = campaign_gamma1(1, 2, CampaignSign::Positive, m_paper, conv, constants, opts);
        for (const auto& pt : g1.points) {
            CertReal mu_k = ((c.delta.pow(pt.k) - 1) / c.sqrt5_a).log() / c.log_alpha;
            CertReal lim = c.alpha.pow(-pt.k_bound) * 26;
            for (long n1 = 1; n1 <= 10000 && ok; ++n1) {
                CertReal y = t * n1 + mu_k;
                CertReal v = y - CertReal(y.round_mid(), 192);
                ok = v.cmp_hi(BigInt(0)) <= 0 || certified_compare(lim, v) == Ordering::Less;
            }
        }
        report(7, ok, "identities, sandwiches, enclosures, determinants, lemma soundness scan");
    }

    // 8. End-to-end verify, exit 0, < 15 min, deterministic certificate
    {
        auto t0 = Clock::now();
        int code = 0, code2 = 0;
        run_command(cli + " verify --out acceptance_certificate.json", code);
        run_command(cli + " verify --out acceptance_certificate2.json", code2);
        double secs = seconds_since(t0);
        std::string cert_text = slurp("acceptance_certificate.json");
        bool ok = code == 0 && code2 == 0 && secs < 900.0 && !cert_text.empty();
        if (ok) {
            auto j = nlohmann::json::parse(cert_text);
            ok = j["theorem_check"]["pass"].get<bool>() &&
                 j["final_n_bound"].get<long>() <= j["theorem_check"]["n_cutoff"].get<long>();
            auto j2 = nlohmann::json::parse(slurp("acceptance_certificate2.json"));
            j.erase("timings_ms");
            j2.erase("timings_ms");
            ok = ok && j == j2;  // identical payload across runs
        }
        std::ostringstream ss;
        ss << "cmd_verify exit " << code << ", deterministic payload (" << secs << " s)";
        report(8, ok, ss.str());
    }

    if (g_failures) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all 8 criteria passed\n");
    return 0;
}
