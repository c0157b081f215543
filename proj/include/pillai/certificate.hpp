#pragma once

#include <string>
#include <vector>

#include "pillai/reduction.hpp"
#include "pillai/search.hpp"

#include "json.hpp"

namespace pillai {

struct StageTiming {
    std::string stage;
    double milliseconds = 0;
};

struct ConvergentAnchor {
    std::string tau;     // which expansion
    size_t index = 0;    // discovered index of the printed p/q pair
    bool found = false;
    bool index_is_98 = false;
};

struct PipelineCertificate {
    unsigned precision_bits = 0;
    std::string alpha_enclosure;
    std::string delta_enclosure;
    std::string tau_enclosure;

    // bound chain (display-shape coefficients and the absolute bound)
    std::string c36, lambda_coeff, case1_coeff, case2_coeff, final_coeff;
    BigInt absolute_bound;        // from the display-shape closing inequality
    BigInt absolute_bound_sound;  // closing inequality with 1/log delta restored

    std::vector<BigInt> cf_prefix_tau;  // first 20 quotients of log delta / log alpha
    std::vector<ConvergentAnchor> anchors;

    // reference campaign set (M = absolute_bound, printed convergents)
    std::vector<GammaCaseReport> gamma_cases;
    std::vector<CampaignReport> campaigns;
    // sound set (M = absolute_bound_sound, 2x for reciprocal-tau cases)
    std::vector<GammaCaseReport> gamma_cases_sound;
    std::vector<CampaignReport> campaigns_sound;

    long final_n_bound = 0;  // certified: any solution has n < final_n_bound
    int search_n_cutoff = 0;
    bool theorem_pass = false;
    VerificationReport theorem;
    bool nonvanishing_ok = false;

    std::vector<StageTiming> timings;
    std::string failed_stage;  // empty on success
    bool passed() const { return failed_stage.empty() && theorem_pass; }
};

struct PipelineOptions {
    unsigned precision_bits = kDefaultPrecision;
    bool record_campaign_points = false;
};

PipelineCertificate run_pipeline(const PipelineOptions& opts);

nlohmann::json to_json(const SolutionRecord& rec);
nlohmann::json to_json(const CampaignReport& rep, bool include_points = true);
nlohmann::json to_json(const GammaCaseReport& rep);
nlohmann::json to_json(const PipelineCertificate& cert);

std::string csv_row(const SolutionRecord& rec);

}  // namespace pillai
