#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pillai/contfrac.hpp"
#include "pillai/linforms.hpp"
#include "pillai/realnum.hpp"

namespace pillai {

enum class LogBase { Alpha, Delta };
enum class CampaignSign { Positive, Negative };
enum class MuFamily { GammaConst, Gamma1, Gamma2, Gamma3 };

struct ReductionProblem {
    RefinableReal tau;
    RefinableReal mu;
    BigRat A;      // envelope constant, > 0
    LogBase B;     // decay base (> 1)
    BigInt M;      // bound on the tau multiplier
    std::string label;
};

struct ReductionCertificate {
    size_t conv_index = 0;
    BigInt q;
    CertReal epsilon;  // certified enclosure with lo > 0
    long k_bound = 0;  // ceil(log(A q / eps) / log B)
    unsigned precision_bits = 0;
};

enum class ReduceError { None, DenominatorTooSmall, EpsilonNonPositive, PrecisionExhausted };

struct ReduceOutcome {
    std::optional<ReductionCertificate> certificate;
    ReduceError error = ReduceError::None;
    bool ok() const { return certificate.has_value(); }
};

// Lemma-style single reduction with the given convergent. Escalates the
// working precision up to 4x base before reporting exhaustion.
ReduceOutcome baker_davenport(const ReductionProblem& prob, const Convergent& conv,
                              ConstantsProvider& constants,
                              unsigned base_precision = kDefaultPrecision);

struct CampaignPoint {
    long k = 0;
    long l = 0;
    std::string epsilon_lo;  // certified lower bound, decimal string
    long k_bound = 0;
    size_t conv_index = 0;
};

struct CampaignReport {
    std::string label;
    CampaignSign sign = CampaignSign::Positive;
    std::string parameter_range;
    BigInt M;
    size_t primary_conv_index = 0;
    BigInt primary_q;
    CertReal min_epsilon;
    long max_k_bound = 0;
    std::pair<long, long> worst_param{0, 0};
    size_t fallback_count = 0;  // points resolved on a deeper convergent
    std::vector<std::pair<long, long>> unresolved;
    unsigned max_precision_bits = 0;
    std::vector<CampaignPoint> points;
};

struct CampaignOptions {
    unsigned base_precision = kDefaultPrecision;
    // accept the first convergent certifying eps >= floor; otherwise keep the
    // best bound among max_deeper convergents
    BigRat epsilon_floor = BigRat(1, 10000);
    size_t max_deeper = 10;
    size_t min_conv_index = 0;
    bool record_points = true;
};

struct CampaignSpec {
    std::string label;
    MuFamily family = MuFamily::Gamma1;
    CampaignSign sign = CampaignSign::Positive;
    long k_min = 1;
    long k_max = 1;
    long l_min = 0;  // secondary grid (Gamma3); 0 when absent
    long l_max = 0;
    BigRat A;
    LogBase B = LogBase::Delta;
    BigInt M;
};

// Shared engine; campaign_gamma* wrappers fill the published parameters.
CampaignReport run_campaign(const CampaignSpec& spec, const std::vector<Convergent>& convs,
                            ConstantsProvider& constants, const CampaignOptions& opts);

CampaignReport campaign_gamma1(long k_min, long k_max, CampaignSign sign, const BigInt& M,
                               const std::vector<Convergent>& convs,
                               ConstantsProvider& constants, const CampaignOptions& opts);
CampaignReport campaign_gamma2(long k_min, long k_max, CampaignSign sign, const BigInt& M,
                               const std::vector<Convergent>& convs,
                               ConstantsProvider& constants, const CampaignOptions& opts);
CampaignReport campaign_gamma3(long k_max, long l_max, CampaignSign sign, const BigInt& M,
                               const std::vector<Convergent>& convs,
                               ConstantsProvider& constants, const CampaignOptions& opts);

// Gamma itself is a single linear form reduced under two (A, B) envelopes.
struct GammaCaseReport {
    CampaignSign sign;
    ReductionCertificate delta_branch;  // bound on n - n1
    ReductionCertificate alpha_branch;  // bound on m - m1
};
GammaCaseReport run_gamma_case(CampaignSign sign, const BigInt& M,
                               const std::vector<Convergent>& convs,
                               ConstantsProvider& constants, const CampaignOptions& opts);

// tau = log delta / log alpha (Positive) or its reciprocal (Negative)
RefinableReal make_tau(CampaignSign sign, ConstantsProvider& constants);

// certified numerator bound 1/sqrt5 + 2|b||beta|(1 + |beta|) on the
// conjugate tail of the linear forms
CertReal envelope_numerator_bound(const AlgebraicConstants& c);

// certified minimum admissible A for the family/sign; campaigns assert their
// configured A dominates it
CertReal envelope_requirement(MuFamily family, CampaignSign sign, const AlgebraicConstants& c);

// absolute bound re-derived with the closing inequality's 1/log delta
// factor and envelope constant restored (the display shape drops both)
BigInt sound_absolute_bound(const BoundChain& chain, const AlgebraicConstants& c);

}  // namespace pillai
