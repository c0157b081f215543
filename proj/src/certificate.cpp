#include "pillai/certificate.hpp"

#include <chrono>

#include "pillai/recurrences.hpp"

namespace pillai {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

const char* kTauP98 = "78093067704223831799032754534503501859635391435517";
const char* kTauQ98 = "45634243076387457097046528084208490147594968308975";
const char* kTaurP98 = "1000540334879242934726141761162813294034885977722";
const char* kTaurQ98 = "1712206861451396832387596141129961335575127483549";

ConvergentAnchor locate_pair(const std::vector<Convergent>& conv, const char* p_str,
                             const char* q_str, const std::string& label) {
    ConvergentAnchor a;
    a.tau = label;
    BigInt p(p_str), q(q_str);
    for (const auto& c : conv)
        if (c.p == p && c.q == q) {
            a.found = true;
            a.index = c.index;
            a.index_is_98 = (c.index == 98);
            break;
        }
    return a;
}

}  // namespace

PipelineCertificate run_pipeline(const PipelineOptions& opts) {
    PipelineCertificate cert;
    cert.precision_bits = opts.precision_bits;
    ConstantsProvider constants;
    CampaignOptions copts;
    copts.base_precision = opts.precision_bits;
    copts.record_points = opts.record_campaign_points;

    std::string stage = "constants";
    try {
        auto t0 = Clock::now();
        const AlgebraicConstants& c = constants.at(opts.precision_bits);
        cert.alpha_enclosure = c.alpha.str(30);
        cert.delta_enclosure = c.delta.str(30);
        cert.tau_enclosure = (c.log_delta / c.log_alpha).str(30);
        cert.timings.push_back({stage, ms_since(t0)});

        stage = "bound_chain";
        t0 = Clock::now();
        BoundChain chain = build_bound_chain(constants, opts.precision_bits);
        cert.c36 = chain.matveev_c36.str(8);
        cert.lambda_coeff = chain.lambda_coefficient.str(8);
        cert.case1_coeff = chain.case1_coefficient.str(8);
        cert.case2_coeff = chain.case2_coefficient.str(8);
        cert.final_coeff = chain.final_coefficient.str(8);
        cert.absolute_bound = chain.n_absolute;
        cert.absolute_bound_sound = sound_absolute_bound(chain, c);
        cert.timings.push_back({stage, ms_since(t0)});

        stage = "reduction";
        t0 = Clock::now();
        const size_t quotient_count = 118;
        auto pq_tau = expand(make_tau(CampaignSign::Positive, constants), quotient_count,
                             "log delta / log alpha", opts.precision_bits,
                             std::min<unsigned>(opts.precision_bits * 4, kPrecisionCap));
        auto pq_taur = expand(make_tau(CampaignSign::Negative, constants), quotient_count,
                              "log alpha / log delta", opts.precision_bits,
                              std::min<unsigned>(opts.precision_bits * 4, kPrecisionCap));
        if (pq_tau.truncated || pq_taur.truncated)
            throw PrecisionExhausted("continued fraction truncated below requested depth");
        for (size_t i = 0; i < 20 && i < pq_tau.a.size(); ++i)
            cert.cf_prefix_tau.push_back(pq_tau.a[i]);
        auto conv_tau = convergents(pq_tau);
        auto conv_taur = convergents(pq_taur);
        cert.anchors.push_back(locate_pair(conv_tau, kTauP98, kTauQ98, "log delta/log alpha"));
        cert.anchors.push_back(locate_pair(conv_taur, kTaurP98, kTaurQ98, "log alpha/log delta"));

        const BigInt& M0 = cert.absolute_bound;
        // reference set: M from the displayed closing bound
        cert.gamma_cases.push_back(
            run_gamma_case(CampaignSign::Positive, M0, conv_tau, constants, copts));
        cert.gamma_cases.push_back(
            run_gamma_case(CampaignSign::Negative, M0, conv_taur, constants, copts));
        cert.campaigns.push_back(campaign_gamma1(1, 250, CampaignSign::Positive, M0, conv_tau,
                                                 constants, copts));
        cert.campaigns.push_back(campaign_gamma1(1, 250, CampaignSign::Negative, M0, conv_taur,
                                                 constants, copts));
        cert.campaigns.push_back(campaign_gamma2(1, 420, CampaignSign::Positive, M0, conv_tau,
                                                 constants, copts));
        {
            CampaignOptions g3 = copts;
            g3.min_conv_index = 99;
            g3.record_points = false;
            cert.campaigns.push_back(
                campaign_gamma3(264, 446, CampaignSign::Positive, M0, conv_tau, constants, g3));
        }

        // sound set: corrected M, doubled for reciprocal-tau multipliers
        const BigInt& Ms = cert.absolute_bound_sound;
        const BigInt Ms2 = 2 * Ms;
        auto g_pos = run_gamma_case(CampaignSign::Positive, Ms, conv_tau, constants, copts);
        auto g_neg = run_gamma_case(CampaignSign::Negative, Ms2, conv_taur, constants, copts);
        cert.gamma_cases_sound.push_back(g_pos);
        cert.gamma_cases_sound.push_back(g_neg);
        long nn_gamma = std::max(g_pos.delta_branch.k_bound, g_neg.delta_branch.k_bound) - 1;
        long mm_gamma = std::max(g_pos.alpha_branch.k_bound, g_neg.alpha_branch.k_bound) - 1;
        auto g1p = campaign_gamma1(1, nn_gamma, CampaignSign::Positive, Ms, conv_tau, constants,
                                   copts);
        auto g1n = campaign_gamma1(1, nn_gamma, CampaignSign::Negative, Ms2, conv_taur, constants,
                                   copts);
        auto g2p = campaign_gamma2(1, mm_gamma, CampaignSign::Positive, Ms, conv_tau, constants,
                                   copts);
        auto g2n = campaign_gamma2(1, mm_gamma, CampaignSign::Negative, Ms2, conv_taur, constants,
                                   copts);
        long nn_max = std::max(nn_gamma, std::max(g2p.max_k_bound, g2n.max_k_bound) - 1);
        long mm_max = std::max(mm_gamma, std::max(g1p.max_k_bound, g1n.max_k_bound) - 1);
        CampaignOptions g3s = copts;
        g3s.min_conv_index = 99;
        g3s.record_points = false;
        auto g3p = campaign_gamma3(nn_max, mm_max, CampaignSign::Positive, Ms, conv_tau,
                                   constants, g3s);
        CampaignOptions g3sn = g3s;
        g3sn.min_conv_index = 0;
        auto g3n = campaign_gamma3(nn_max, mm_max, CampaignSign::Negative, Ms2, conv_taur,
                                   constants, g3sn);
        for (auto& r : {g1p, g1n, g2p, g2n, g3p, g3n}) {
            if (!r.unresolved.empty())
                throw std::runtime_error("campaign " + r.label + " left unresolved points");
            cert.campaigns_sound.push_back(r);
        }
        for (const auto& r : cert.campaigns)
            if (!r.unresolved.empty())
                throw std::runtime_error("campaign " + r.label + " left unresolved points");
        cert.final_n_bound = std::max(g3p.max_k_bound, g3n.max_k_bound);
        cert.timings.push_back({stage, ms_since(t0)});

        stage = "nonvanishing";
        t0 = Clock::now();
        cert.nonvanishing_ok =
            nonvanishing_spot_check(10, 9, 8, 7, opts.precision_bits, constants) &&
            nonvanishing_spot_check(300, 299, 500, 499, opts.precision_bits, constants) &&
            nonvanishing_spot_check(320, 70, 540, 120, opts.precision_bits, constants);
        cert.timings.push_back({stage, ms_since(t0)});

        stage = "search";
        t0 = Clock::now();
        cert.search_n_cutoff = 300;
        if (cert.final_n_bound > cert.search_n_cutoff)
            throw std::runtime_error("final n bound exceeds the search cutoff");
        cert.theorem = verify_theorem(cert.search_n_cutoff, constants);
        cert.theorem_pass = cert.theorem.matches_theorem;
        cert.timings.push_back({stage, ms_since(t0)});
    } catch (const std::exception& e) {
        cert.failed_stage = stage + ": " + e.what();
    }
    return cert;
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

nlohmann::json to_json(const SolutionRecord& rec) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& [m, n] : rec.pairs) pairs.push_back({m, n});
    return {{"c", rec.c.get_str()}, {"pairs", pairs}};
}

std::string csv_row(const SolutionRecord& rec) {
    std::string row = rec.c.get_str() + ",\"";
    for (size_t i = 0; i < rec.pairs.size(); ++i) {
        if (i) row += ",";
        row += "(" + std::to_string(rec.pairs[i].first) + "," +
               std::to_string(rec.pairs[i].second) + ")";
    }
    row += "\"";
    return row;
}

nlohmann::json to_json(const CampaignReport& rep, bool include_points) {
    nlohmann::json j{{"label", rep.label},
                     {"sign", rep.sign == CampaignSign::Positive ? "pos" : "neg"},
                     {"range", rep.parameter_range},
                     {"M", rep.M.get_str()},
                     {"q", rep.primary_q.get_str()},
                     {"conv_index", rep.primary_conv_index},
                     {"min_epsilon", rep.min_epsilon.lo_str(8)},
                     {"max_k_bound", rep.max_k_bound},
                     {"worst_param", {rep.worst_param.first, rep.worst_param.second}},
                     {"fallbacks", rep.fallback_count},
                     {"unresolved", rep.unresolved.size()},
                     {"max_precision_bits", rep.max_precision_bits}};
    if (include_points && !rep.points.empty()) {
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& p : rep.points) {
            nlohmann::json e{{"k", p.k},
                             {"epsilon_lo", p.epsilon_lo},
                             {"k_bound", p.k_bound},
                             {"conv_index", p.conv_index}};
            if (p.l > 0) e["l"] = p.l;
            pts.push_back(std::move(e));
        }
        j["points"] = std::move(pts);
    }
    return j;
}

namespace {
nlohmann::json cert_json(const ReductionCertificate& c) {
    return {{"conv_index", c.conv_index},
            {"q", c.q.get_str()},
            {"epsilon", c.epsilon.lo_str(8)},
            {"k_bound", c.k_bound},
            {"precision_bits", c.precision_bits}};
}
}  // namespace

nlohmann::json to_json(const GammaCaseReport& rep) {
    return {{"sign", rep.sign == CampaignSign::Positive ? "pos" : "neg"},
            {"delta_branch", cert_json(rep.delta_branch)},
            {"alpha_branch", cert_json(rep.alpha_branch)}};
}

nlohmann::json to_json(const PipelineCertificate& cert) {
    nlohmann::json campaigns = nlohmann::json::array();
    for (const auto& r : cert.campaigns) campaigns.push_back(to_json(r, false));
    nlohmann::json campaigns_sound = nlohmann::json::array();
    for (const auto& r : cert.campaigns_sound) campaigns_sound.push_back(to_json(r, false));
    nlohmann::json gammas = nlohmann::json::array();
    for (const auto& g : cert.gamma_cases) gammas.push_back(to_json(g));
    nlohmann::json gammas_sound = nlohmann::json::array();
    for (const auto& g : cert.gamma_cases_sound) gammas_sound.push_back(to_json(g));

    nlohmann::json cf = nlohmann::json::array();
    for (const auto& a : cert.cf_prefix_tau) cf.push_back(a.get_str());
    nlohmann::json anchors = nlohmann::json::array();
    for (const auto& a : cert.anchors)
        anchors.push_back({{"tau", a.tau},
                           {"found", a.found},
                           {"index", a.index},
                           {"index_is_98", a.index_is_98}});

    nlohmann::json records = nlohmann::json::array();
    for (const auto& r : cert.theorem.records) records.push_back(to_json(r));

    nlohmann::json timings = nlohmann::json::object();
    for (const auto& t : cert.timings) timings[t.stage] = t.milliseconds;

    return {{"precision_bits", cert.precision_bits},
            {"constants",
             {{"alpha", cert.alpha_enclosure},
              {"delta", cert.delta_enclosure},
              {"tau", cert.tau_enclosure}}},
            {"bound_chain",
             {{"C_3_6", cert.c36},
              {"lambda", cert.lambda_coeff},
              {"case1", cert.case1_coeff},
              {"case2", cert.case2_coeff},
              {"final", cert.final_coeff},
              {"absolute_bound", cert.absolute_bound.get_str()},
              {"absolute_bound_sound", cert.absolute_bound_sound.get_str()}}},
            {"continued_fraction", {{"prefix", cf}, {"anchors", anchors}}},
            {"gamma_cases", gammas},
            {"campaigns", campaigns},
            {"gamma_cases_sound", gammas_sound},
            {"campaigns_sound", campaigns_sound},
            {"final_n_bound", cert.final_n_bound},
            {"nonvanishing_ok", cert.nonvanishing_ok},
            {"theorem_check",
             {{"pass", cert.theorem_pass},
              {"n_cutoff", cert.theorem.n_cutoff},
              {"m_cutoff", cert.theorem.m_cutoff},
              {"records", records}}},
            {"timings_ms", timings},
            {"failed_stage", cert.failed_stage}};
}

}  // namespace pillai
