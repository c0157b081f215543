#include "pillai/reduction.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace pillai {

namespace {

// enclosure of the distance from w to the nearest integer, given floor(w)
CertReal dist_to_nearest(const CertReal& w, const BigInt& fl) {
    CertReal f = w - CertReal(fl, w.precision());
    CertReal g = 1 - f;
    // min(f, g) elementwise
    mpfr_t lo, hi;
    mpfr_init2(lo, w.precision());
    mpfr_init2(hi, w.precision());
    mpfr_min(lo, f.lo_raw(), g.lo_raw(), MPFR_RNDD);
    mpfr_min(hi, f.hi_raw(), g.hi_raw(), MPFR_RNDU);
    CertReal r = CertReal::from_endpoints(lo, hi, w.precision());
    mpfr_clear(lo);
    mpfr_clear(hi);
    return r;
}

const CertReal& log_base(const AlgebraicConstants& c, LogBase b) {
    return b == LogBase::Delta ? c.log_delta : c.log_alpha;
}

long ceil_kbound(const BigRat& A, const BigInt& q, const CertReal& eps,
                 const AlgebraicConstants& c, LogBase B) {
    CertReal ratio = CertReal(A, eps.precision()) * CertReal(q, eps.precision()) / eps;
    CertReal kb = ratio.log() / log_base(c, B);
    BigInt v = kb.ceil_hi();
    return v.get_si();
}

}  // namespace

RefinableReal make_tau(CampaignSign sign, ConstantsProvider& constants) {
    if (sign == CampaignSign::Positive)
        return [&constants](unsigned prec) {
            const auto& c = constants.at(prec);
            return c.log_delta / c.log_alpha;
        };
    return [&constants](unsigned prec) {
        const auto& c = constants.at(prec);
        return c.log_alpha / c.log_delta;
    };
}

ReduceOutcome baker_davenport(const ReductionProblem& prob, const Convergent& conv,
                              ConstantsProvider& constants, unsigned base_precision) {
    if (prob.A <= 0 || prob.M < 1)
        throw std::invalid_argument("baker_davenport: need A > 0 and M >= 1");
    if (!(conv.q > 6 * prob.M)) return {std::nullopt, ReduceError::DenominatorTooSmall};
    const unsigned max_prec = std::min<unsigned>(base_precision * 4, kPrecisionCap);
    for (unsigned prec = base_precision; prec <= max_prec; prec *= 2) {
        const AlgebraicConstants& c = constants.at(prec);
        CertReal tq = conv.q * prob.tau(prec);
        CertReal mq = conv.q * prob.mu(prec);
        auto ft = tq.certified_floor();
        auto fm = mq.certified_floor();
        if (!ft || !fm) continue;
        CertReal eps = dist_to_nearest(mq, *fm) - prob.M * dist_to_nearest(tq, *ft);
        if (eps.cmp_hi(BigInt(0)) <= 0) return {std::nullopt, ReduceError::EpsilonNonPositive};
        if (eps.cmp_lo(BigInt(0)) <= 0) continue;  // undecided sign
        ReductionCertificate cert{conv.index, conv.q, eps,
                                  ceil_kbound(prob.A, conv.q, eps, c, prob.B), prec};
        return {std::move(cert), ReduceError::None};
    }
    return {std::nullopt, ReduceError::PrecisionExhausted};
}

// ---------------------------------------------------------------------------
// Campaign engine
// ---------------------------------------------------------------------------

namespace {

// Precomputed per (convergent, precision): the mu-building blocks multiplied
// by q, and M * ||tau q||.
struct ConvData {
    BigInt q;
    CertReal m_tau_q;              // M * ||tau q||
    CertReal c0;                   // q * log(sqrt5 a) / logX
    std::vector<CertReal> w_delta; // q * log(delta^k - 1) / logX, index k
    std::vector<CertReal> z_alpha; // q * log(alpha^l - 1) / logX, index l
    bool tau_ok = false;
};

struct Engine {
    const CampaignSpec& spec;
    const std::vector<Convergent>& convs;
    ConstantsProvider& constants;
    const CampaignOptions& opts;
    size_t first_index;
    std::map<std::pair<size_t, unsigned>, ConvData> cache;

    long need_delta_pows() const {
        if (spec.family == MuFamily::Gamma1 || spec.family == MuFamily::Gamma3)
            return spec.k_max;
        return 0;
    }
    long need_alpha_pows() const {
        if (spec.family == MuFamily::Gamma2) return spec.k_max;
        if (spec.family == MuFamily::Gamma3) return spec.l_max;
        return 0;
    }

    const ConvData& data(size_t idx, unsigned prec) {
        auto key = std::make_pair(idx, prec);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        const AlgebraicConstants& c = constants.at(prec);
        const CertReal& lx = log_base(
            c, spec.sign == CampaignSign::Positive ? LogBase::Alpha : LogBase::Delta);
        ConvData d;
        d.q = convs[idx].q;
        CertReal qr(d.q, prec);
        CertReal inv_lx = lx.reciprocal();
        RefinableReal tau = make_tau(spec.sign, constants);
        CertReal tq = qr * tau(prec);
        if (auto ft = tq.certified_floor()) {
            d.m_tau_q = spec.M * dist_to_nearest(tq, *ft);
            d.tau_ok = true;
        }
        d.c0 = qr * c.sqrt5_a.log() * inv_lx;
        long nd = need_delta_pows();
        d.w_delta.resize(static_cast<size_t>(nd) + 1);
        CertReal qinv = qr * inv_lx;
        for (long k = 1; k <= nd; ++k)
            d.w_delta[static_cast<size_t>(k)] = qinv * (c.delta.pow(k) - 1).log();
        long na = need_alpha_pows();
        d.z_alpha.resize(static_cast<size_t>(na) + 1);
        for (long l = 1; l <= na; ++l)
            d.z_alpha[static_cast<size_t>(l)] = qinv * (c.alpha.pow(l) - 1).log();
        return cache.emplace(key, std::move(d)).first->second;
    }

    // mu * q for the point (k, l) from precomputed blocks
    CertReal mu_q(const ConvData& d, long k, long l) const {
        const bool pos = spec.sign == CampaignSign::Positive;
        switch (spec.family) {
            case MuFamily::GammaConst:
                return pos ? -d.c0 : d.c0;
            case MuFamily::Gamma1: {
                const CertReal& w = d.w_delta[static_cast<size_t>(k)];
                return pos ? w - d.c0 : d.c0 - w;
            }
            case MuFamily::Gamma2: {
                const CertReal& z = d.z_alpha[static_cast<size_t>(k)];
                return pos ? -(d.c0 + z) : d.c0 + z;
            }
            case MuFamily::Gamma3: {
                const CertReal& w = d.w_delta[static_cast<size_t>(k)];
                const CertReal& z = d.z_alpha[static_cast<size_t>(l)];
                return pos ? w - d.c0 - z : d.c0 + z - w;
            }
        }
        throw std::logic_error("mu_q: bad family");
    }

    struct Resolved {
        CertReal epsilon;
        long k_bound = 0;
        size_t conv_index = 0;
        unsigned precision = 0;
    };

    std::optional<Resolved> resolve(long k, long l) {
        const unsigned max_prec = std::min<unsigned>(opts.base_precision * 4, kPrecisionCap);
        std::optional<Resolved> best;
        const size_t stop = std::min(first_index + opts.max_deeper, convs.size());
        for (size_t j = first_index; j < stop; ++j) {
            for (unsigned prec = opts.base_precision; prec <= max_prec; prec *= 2) {
                const ConvData& d = data(j, prec);
                if (!d.tau_ok) continue;
                CertReal w = mu_q(d, k, l);
                auto fl = w.certified_floor();
                if (!fl) continue;
                CertReal eps = dist_to_nearest(w, *fl) - d.m_tau_q;
                if (eps.cmp_hi(BigInt(0)) <= 0) break;  // certified failure here
                if (eps.cmp_lo(BigInt(0)) <= 0) continue;
                const AlgebraicConstants& c = constants.at(prec);
                long kb = ceil_kbound(spec.A, d.q, eps, c, spec.B);
                if (!best || kb < best->k_bound) best = Resolved{eps, kb, j, prec};
                if (eps.cmp_lo(opts.epsilon_floor) >= 0) return best;
                break;  // certified but small; try a deeper convergent
            }
        }
        return best;
    }
};

}  // namespace

CampaignReport run_campaign(const CampaignSpec& spec, const std::vector<Convergent>& convs,
                            ConstantsProvider& constants, const CampaignOptions& opts) {
    {
        const AlgebraicConstants& c = constants.at(opts.base_precision);
        CertReal req = envelope_requirement(spec.family, spec.sign, c);
        if (req.cmp_hi(spec.A) > 0)
            throw std::logic_error("campaign " + spec.label +
                                   ": envelope constant A below certified requirement");
    }
    auto first = first_convergent_exceeding(convs, 6 * spec.M);
    if (!first) throw std::invalid_argument("run_campaign: no convergent with q > 6M");

    Engine eng{spec, convs, constants, opts,
               std::max(first->index, opts.min_conv_index), {}};

    CampaignReport rep;
    rep.label = spec.label;
    rep.sign = spec.sign;
    rep.M = spec.M;
    rep.primary_conv_index = eng.first_index;
    rep.primary_q = convs[eng.first_index].q;
    {
        std::string range = "k=" + std::to_string(spec.k_min) + ".." + std::to_string(spec.k_max);
        if (spec.l_max > 0)
            range += " x l=" + std::to_string(spec.l_min) + ".." + std::to_string(spec.l_max);
        rep.parameter_range = range;
    }

    bool have_min = false;
    const long l_lo = spec.l_max > 0 ? spec.l_min : 0;
    const long l_hi = spec.l_max > 0 ? spec.l_max : 0;
    for (long k = spec.k_min; k <= spec.k_max; ++k) {
        for (long l = l_lo; l <= l_hi; ++l) {
            auto res = eng.resolve(k, l);
            if (!res) {
                rep.unresolved.emplace_back(k, l);
                continue;
            }
            if (res->conv_index != eng.first_index) ++rep.fallback_count;
            rep.max_precision_bits = std::max(rep.max_precision_bits, res->precision);
            if (res->k_bound > rep.max_k_bound) {
                rep.max_k_bound = res->k_bound;
                rep.worst_param = {k, l};
            }
            // track the epsilon with the smallest certified lower bound
            if (!have_min || mpfr_cmp(res->epsilon.lo_raw(), rep.min_epsilon.lo_raw()) < 0) {
                rep.min_epsilon = res->epsilon;
                have_min = true;
            }
            if (opts.record_points)
                rep.points.push_back(
                    {k, l, res->epsilon.lo_str(8), res->k_bound, res->conv_index});
        }
    }
    return rep;
}

CampaignReport campaign_gamma1(long k_min, long k_max, CampaignSign sign, const BigInt& M,
                               const std::vector<Convergent>& convs,
                               ConstantsProvider& constants, const CampaignOptions& opts) {
    CampaignSpec spec;
    spec.label = "gamma1";
    spec.family = MuFamily::Gamma1;
    spec.sign = sign;
    spec.k_min = k_min;
    spec.k_max = k_max;
    spec.A = sign == CampaignSign::Positive ? BigRat(26) : BigRat(16);
    spec.B = LogBase::Alpha;
    spec.M = M;
    return run_campaign(spec, convs, constants, opts);
}

CampaignReport campaign_gamma2(long k_min, long k_max, CampaignSign sign, const BigInt& M,
                               const std::vector<Convergent>& convs,
                               ConstantsProvider& constants, const CampaignOptions& opts) {
    CampaignSpec spec;
    spec.label = "gamma2";
    spec.family = MuFamily::Gamma2;
    spec.sign = sign;
    spec.k_min = k_min;
    spec.k_max = k_max;
    spec.A = sign == CampaignSign::Positive ? BigRat(830) : BigRat(486);
    spec.B = LogBase::Delta;
    spec.M = M;
    return run_campaign(spec, convs, constants, opts);
}

CampaignReport campaign_gamma3(long k_max, long l_max, CampaignSign sign, const BigInt& M,
                               const std::vector<Convergent>& convs,
                               ConstantsProvider& constants, const CampaignOptions& opts) {
    CampaignSpec spec;
    spec.label = "gamma3";
    spec.family = MuFamily::Gamma3;
    spec.sign = sign;
    spec.k_min = 1;
    spec.k_max = k_max;
    spec.l_min = 1;
    spec.l_max = l_max;
    spec.A = sign == CampaignSign::Positive ? BigRat(390) : BigRat(228);
    spec.B = LogBase::Delta;
    spec.M = M;
    return run_campaign(spec, convs, constants, opts);
}

GammaCaseReport run_gamma_case(CampaignSign sign, const BigInt& M,
                               const std::vector<Convergent>& convs,
                               ConstantsProvider& constants, const CampaignOptions& opts) {
    const bool pos = sign == CampaignSign::Positive;
    {
        const AlgebraicConstants& c = constants.at(opts.base_precision);
        CertReal req_d = envelope_requirement(MuFamily::GammaConst, sign, c);
        CertReal req_a = req_d / c.delta.pow(4);
        BigRat a_delta = pos ? BigRat(170) : BigRat(98);
        BigRat a_alpha = pos ? BigRat(20) : BigRat(12);
        if (req_d.cmp_hi(a_delta) > 0 || req_a.cmp_hi(a_alpha) > 0)
            throw std::logic_error("gamma case: envelope constants below certified requirement");
    }
    auto first = first_convergent_exceeding(convs, 6 * M);
    if (!first) throw std::invalid_argument("run_gamma_case: no convergent with q > 6M");

    RefinableReal tau = make_tau(sign, constants);
    RefinableReal mu = [&constants, pos](unsigned prec) {
        const auto& c = constants.at(prec);
        CertReal ls = c.sqrt5_a.log();
        return pos ? -ls / c.log_alpha : ls / c.log_delta;
    };
    ReductionProblem pd{tau, mu, pos ? BigRat(170) : BigRat(98), LogBase::Delta, M,
                        pos ? "Gamma>0" : "Gamma<0"};
    ReductionProblem pa{tau, mu, pos ? BigRat(20) : BigRat(12), LogBase::Alpha, M,
                        pos ? "Gamma>0" : "Gamma<0"};
    auto rd = baker_davenport(pd, *first, constants, opts.base_precision);
    auto ra = baker_davenport(pa, *first, constants, opts.base_precision);
    if (!rd.ok() || !ra.ok())
        throw std::runtime_error("gamma case reduction failed on the primary convergent");
    return GammaCaseReport{sign, *rd.certificate, *ra.certificate};
}

CertReal envelope_numerator_bound(const AlgebraicConstants& c) {
    return c.sqrt5.reciprocal() +
           c.b_c_modulus * 2 * c.beta_gamma_modulus * (c.beta_gamma_modulus + 1);
}

CertReal envelope_requirement(MuFamily family, CampaignSign sign, const AlgebraicConstants& c) {
    CertReal b3 = envelope_numerator_bound(c);
    const CertReal& lx = sign == CampaignSign::Positive ? c.log_alpha : c.log_delta;
    CertReal a_alpha_inv = (c.a_coeff * c.alpha).reciprocal();
    CertReal one_minus = 1 - c.alpha.reciprocal();
    switch (family) {
        case MuFamily::GammaConst: {
            // |Lambda| <= (C_delta + C_alpha) max{delta^{n1-n+4}, alpha^{m1-m}}
            CertReal c_delta = (c.a_coeff * c.sqrt5 * c.alpha).reciprocal();
            CertReal c_alpha = b3 * a_alpha_inv + 1;
            return (c_delta + c_alpha) * 2 * c.delta.pow(4) / lx;  // delta branch
        }
        case MuFamily::Gamma1:
            return (b3 * a_alpha_inv + 1) * 2 / lx;
        case MuFamily::Gamma2: {
            CertReal num = c.sqrt5.reciprocal() + b3 / c.delta;
            return num * 2 * c.delta.pow(4) / (c.sqrt5_a * c.alpha * one_minus * lx);
        }
        case MuFamily::Gamma3:
            return b3 * 2 * c.delta.pow(4) / (c.a_coeff * c.alpha * one_minus * lx);
    }
    throw std::logic_error("envelope_requirement: bad family");
}

BigInt sound_absolute_bound(const BoundChain& chain, const AlgebraicConstants& c) {
    // (n-4) log delta < final X^3 + log K', K' = B3 / (a alpha (1 - 1/alpha))
    CertReal b3 = envelope_numerator_bound(c);
    CertReal k_env = b3 / (c.a_coeff * c.alpha * (1 - c.alpha.reciprocal()));
    long extra = (k_env.log() / c.log_delta).ceil_hi().get_si();
    CertReal coeff = chain.final_coefficient / c.log_delta;
    CertReal coeff_hi = CertReal::from_endpoints(coeff.hi_raw(), coeff.hi_raw(), coeff.precision());
    return derive_absolute_bound(coeff_hi, 3, 4 + extra);
}

}  // namespace pillai
