#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pillai/reduction.hpp"

using namespace pillai;

namespace {

BigRat rat(const char* s) {
    BigRat r(s);
    r.canonicalize();
    return r;
}

struct Fixture {
    ConstantsProvider constants;
    BigInt M;
    std::vector<Convergent> conv_tau;
    std::vector<Convergent> conv_taur;
    CampaignOptions opts;

    Fixture() {
        BoundChain chain = build_bound_chain(constants, 512);
        M = chain.n_absolute;
        conv_tau = convergents(expand(make_tau(CampaignSign::Positive, constants), 115, "tau"));
        conv_taur = convergents(expand(make_tau(CampaignSign::Negative, constants), 115, "taur"));
    }
};

Fixture& fixture() {
    static Fixture f;
    return f;
}

RefinableReal gamma_mu(ConstantsProvider& constants, CampaignSign sign) {
    const bool pos = sign == CampaignSign::Positive;
    return [&constants, pos](unsigned prec) {
        const auto& c = constants.at(prec);
        CertReal ls = c.sqrt5_a.log();
        return pos ? -ls / c.log_alpha : ls / c.log_delta;
    };
}

BigRat exact_rat(mpfr_srcptr v) {
    BigRat r;
    mpfr_get_q(r.get_mpq_t(), v);
    return r;
}

BigRat exact_dist_to_nearest(const BigRat& x) {
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    BigRat f = x - BigRat(fl);
    BigRat g = 1 - f;
    return f < g ? f : g;
}

}  // namespace

TEST_CASE("gamma case, positive sign: published q98, bounds and epsilon") {
    auto& fx = fixture();
    auto rep = run_gamma_case(CampaignSign::Positive, fx.M, fx.conv_tau, fx.constants, fx.opts);
    CHECK(rep.delta_branch.q == BigInt("45634243076387457097046528084208490147594968308975"));
    CHECK(rep.delta_branch.conv_index == 98);
    CHECK(rep.delta_branch.epsilon.cmp_lo(rat("35/100")) > 0);  // published: eps > 0.35
    CHECK(rep.delta_branch.k_bound == 251);                     // published as 250
    CHECK(rep.alpha_branch.k_bound == 421);                     // published as 420
    // frozen: eps = 0.35371376...
    CHECK(rep.delta_branch.epsilon.cmp_lo(rat("3537/10000")) > 0);
    CHECK(rep.delta_branch.epsilon.cmp_hi(rat("3538/10000")) < 0);
}

TEST_CASE("gamma case, negative sign: reciprocal tau, published bounds") {
    auto& fx = fixture();
    auto rep = run_gamma_case(CampaignSign::Negative, fx.M, fx.conv_taur, fx.constants, fx.opts);
    CHECK(rep.delta_branch.q == BigInt("1712206861451396832387596141129961335575127483549"));
    CHECK(rep.delta_branch.epsilon.cmp_lo(rat("47/100")) > 0);  // published: eps > 0.47
    CHECK(rep.delta_branch.k_bound == 242);                     // published as 242
    CHECK(rep.alpha_branch.k_bound == 407);                     // published as 406
}

TEST_CASE("degenerate mu = 0 gives certified non-positive epsilon") {
    auto& fx = fixture();
    ReductionProblem prob{make_tau(CampaignSign::Positive, fx.constants),
                          [](unsigned prec) { return CertReal(0L, prec); },
                          BigRat(170),
                          LogBase::Delta,
                          fx.M,
                          "degenerate"};
    auto out = baker_davenport(prob, fx.conv_tau[98], fx.constants);
    CHECK(!out.ok());
    CHECK(out.error == ReduceError::EpsilonNonPositive);
}

TEST_CASE("denominator too small is rejected") {
    auto& fx = fixture();
    ReductionProblem prob{make_tau(CampaignSign::Positive, fx.constants),
                          gamma_mu(fx.constants, CampaignSign::Positive),
                          BigRat(170),
                          LogBase::Delta,
                          fx.M,
                          "small q"};
    auto out = baker_davenport(prob, fx.conv_tau[40], fx.constants);
    CHECK(!out.ok());
    CHECK(out.error == ReduceError::DenominatorTooSmall);
}

TEST_CASE("singleton campaign equals the direct reduction") {
    auto& fx = fixture();
    CampaignOptions opts = fx.opts;
    opts.epsilon_floor = BigRat(0);  // force acceptance of the first certified epsilon
    auto rep = campaign_gamma1(1, 1, CampaignSign::Positive, fx.M, fx.conv_tau, fx.constants,
                               opts);
    ReductionProblem prob{make_tau(CampaignSign::Positive, fx.constants),
                          [&fx](unsigned prec) {
                              const auto& c = fx.constants.at(prec);
                              return ((c.delta - 1) / c.sqrt5_a).log() / c.log_alpha;
                          },
                          BigRat(26),
                          LogBase::Alpha,
                          fx.M,
                          "gamma1 k=1"};
    auto direct = baker_davenport(prob, fx.conv_tau[98], fx.constants);
    REQUIRE(direct.ok());
    CHECK(rep.max_k_bound == direct.certificate->k_bound);
    CHECK(rep.points.size() == 1);
}

TEST_CASE("gamma1 campaigns reproduce the published bounds") {
    auto& fx = fixture();
    auto pos = campaign_gamma1(1, 250, CampaignSign::Positive, fx.M, fx.conv_tau, fx.constants,
                               fx.opts);
    CHECK(pos.unresolved.empty());
    CHECK(pos.max_k_bound == 446);  // published as 446
    CHECK(pos.min_epsilon.cmp_lo(rat("4/10000")) > 0);  // published: eps > 0.0004
    CHECK(pos.fallback_count >= 1);  // k = 171 needs a deeper convergent at q98

    auto neg = campaign_gamma1(1, 250, CampaignSign::Negative, fx.M, fx.conv_taur, fx.constants,
                               fx.opts);
    CHECK(neg.unresolved.empty());
    CHECK(neg.max_k_bound == 429);  // published as 429
}

TEST_CASE("gamma2 campaign bound within the acceptance slack") {
    auto& fx = fixture();
    auto rep = campaign_gamma2(1, 420, CampaignSign::Positive, fx.M, fx.conv_tau, fx.constants,
                               fx.opts);
    CHECK(rep.unresolved.empty());
    CHECK(rep.max_k_bound <= 268);  // published as 263, slack +5
    CHECK(rep.max_k_bound == 267);  // frozen
    CHECK(rep.min_epsilon.cmp_lo(rat("7/10000")) > 0);
}

TEST_CASE("gamma2 and gamma3 singletons equal the direct reduction") {
    auto& fx = fixture();
    CampaignOptions opts = fx.opts;
    opts.epsilon_floor = BigRat(0);
    auto rep2 = campaign_gamma2(1, 1, CampaignSign::Positive, fx.M, fx.conv_tau, fx.constants,
                                opts);
    ReductionProblem p2{make_tau(CampaignSign::Positive, fx.constants),
                        [&fx](unsigned prec) {
                            const auto& c = fx.constants.at(prec);
                            return -(c.sqrt5_a * (c.alpha - 1)).log() / c.log_alpha;
                        },
                        BigRat(830),
                        LogBase::Delta,
                        fx.M,
                        "gamma2 k=1"};
    auto d2 = baker_davenport(p2, fx.conv_tau[98], fx.constants);
    REQUIRE(d2.ok());
    CHECK(rep2.max_k_bound == d2.certificate->k_bound);

    opts.min_conv_index = 99;
    auto rep3 = campaign_gamma3(1, 1, CampaignSign::Positive, fx.M, fx.conv_tau, fx.constants,
                                opts);
    ReductionProblem p3{make_tau(CampaignSign::Positive, fx.constants),
                        [&fx](unsigned prec) {
                            const auto& c = fx.constants.at(prec);
                            return ((c.delta - 1) / (c.sqrt5_a * (c.alpha - 1))).log() /
                                   c.log_alpha;
                        },
                        BigRat(390),
                        LogBase::Delta,
                        fx.M,
                        "gamma3 k=l=1"};
    auto d3 = baker_davenport(p3, fx.conv_tau[99], fx.constants);
    REQUIRE(d3.ok());
    CHECK(rep3.max_k_bound == d3.certificate->k_bound);
}

TEST_CASE("campaign determinism: doubled precision reproduces epsilons") {
    auto& fx = fixture();
    CampaignOptions hi = fx.opts;
    hi.base_precision = 1024;
    auto a = campaign_gamma2(1, 40, CampaignSign::Positive, fx.M, fx.conv_tau, fx.constants,
                             fx.opts);
    auto b = campaign_gamma2(1, 40, CampaignSign::Positive, fx.M, fx.conv_tau, fx.constants, hi);
    CHECK(a.max_k_bound == b.max_k_bound);
    // refined epsilon stays positive and the enclosures overlap
    CHECK(b.min_epsilon.cmp_lo(BigInt(0)) > 0);
    CHECK(certified_compare(a.min_epsilon, b.min_epsilon) == Ordering::Undecided);
}

TEST_CASE("lemma soundness: brute-force scan finds no counterexample") {
    auto& fx = fixture();
    auto rep = run_gamma_case(CampaignSign::Positive, fx.M, fx.conv_tau, fx.constants, fx.opts);
    auto tau = make_tau(CampaignSign::Positive, fx.constants);
    auto mu = gamma_mu(fx.constants, CampaignSign::Positive);
    CertReal t = tau(192), u = mu(192);
    const AlgebraicConstants& c = fx.constants.at(192);
    // A B^{-k_bound} for both branches
    CertReal lim_d = c.delta.pow(-rep.delta_branch.k_bound) * 170;
    CertReal lim_a = c.alpha.pow(-rep.alpha_branch.k_bound) * 20;
    for (long m = 1; m <= 10000; ++m) {
        CertReal y = t * m + u;
        BigInt n = y.round_mid();
        CertReal v = y - CertReal(n, 192);
        // no 0 < v < A B^{-k}: certified when v <= 0 or v >= limit
        bool clear_d = v.cmp_hi(BigInt(0)) <= 0 || certified_compare(lim_d, v) == Ordering::Less;
        bool clear_a = v.cmp_hi(BigInt(0)) <= 0 || certified_compare(lim_a, v) == Ordering::Less;
        CHECK(clear_d);
        CHECK(clear_a);
    }
}

TEST_CASE("gamma3 subgrid matches an exact-rational recomputation") {
    auto& fx = fixture();
    CampaignOptions opts = fx.opts;
    opts.min_conv_index = 99;
    opts.epsilon_floor = BigRat(0);  // no fallback: single-convergent epsilons
    auto rep = campaign_gamma3(10, 10, CampaignSign::Positive, fx.M, fx.conv_tau, fx.constants,
                               opts);
    REQUIRE(rep.unresolved.empty());
    REQUIRE(rep.points.size() == 100);

    const Convergent& cv = fx.conv_tau[99];
    const AlgebraicConstants& c = fx.constants.at(3072);
    // independent route: point values at very high precision, exact rational
    // distance arithmetic on the dyadic endpoints
    BigRat tq = exact_rat((CertReal(cv.q, 3072) * c.log_delta / c.log_alpha).lo_raw());
    BigRat m_tau_q = BigRat(fx.M) * exact_dist_to_nearest(tq);
    for (const auto& p : rep.points) {
        CertReal mu = ((c.delta.pow(p.k) - 1) / (c.sqrt5_a * (c.alpha.pow(p.l) - 1))).log() /
                      c.log_alpha;
        BigRat muq = exact_rat((mu * CertReal(cv.q, 3072)).lo_raw());
        BigRat eps_oracle = exact_dist_to_nearest(muq) - m_tau_q;
        double got = std::stod(p.epsilon_lo);
        double want = eps_oracle.get_d();
        CHECK(got == doctest::Approx(want).epsilon(1e-6));
        CHECK(p.conv_index == 99);
    }
}

TEST_CASE("epsilon monotonicity under refinement") {
    auto& fx = fixture();
    ReductionProblem prob{make_tau(CampaignSign::Positive, fx.constants),
                          gamma_mu(fx.constants, CampaignSign::Positive),
                          BigRat(170),
                          LogBase::Delta,
                          fx.M,
                          "gamma"};
    auto lo = baker_davenport(prob, fx.conv_tau[98], fx.constants, 512);
    auto hi = baker_davenport(prob, fx.conv_tau[98], fx.constants, 2048);
    REQUIRE(lo.ok());
    REQUIRE(hi.ok());
    CHECK(hi.certificate->epsilon.cmp_lo(BigInt(0)) > 0);
    // the refined enclosure is contained in the coarse one
    CHECK(mpfr_cmp(hi.certificate->epsilon.lo_raw(), lo.certificate->epsilon.lo_raw()) >= 0);
    CHECK(mpfr_cmp(hi.certificate->epsilon.hi_raw(), lo.certificate->epsilon.hi_raw()) <= 0);
}

TEST_CASE("envelope requirements stay below the configured constants") {
    auto& fx = fixture();
    const AlgebraicConstants& c = fx.constants.at(512);
    CHECK(envelope_requirement(MuFamily::GammaConst, CampaignSign::Positive, c).cmp_hi(
              BigRat(170)) < 0);
    CHECK(envelope_requirement(MuFamily::Gamma1, CampaignSign::Positive, c).cmp_hi(BigRat(26)) <
          0);
    CHECK(envelope_requirement(MuFamily::Gamma2, CampaignSign::Positive, c).cmp_hi(BigRat(830)) <
          0);
    CHECK(envelope_requirement(MuFamily::Gamma3, CampaignSign::Positive, c).cmp_hi(BigRat(390)) <
          0);
    CHECK(envelope_requirement(MuFamily::Gamma3, CampaignSign::Negative, c).cmp_hi(BigRat(228)) <
          0);
}

TEST_CASE("sound absolute bound restores the dropped factor") {
    auto& fx = fixture();
    BoundChain chain = build_bound_chain(fx.constants, 512);
    BigInt sound = sound_absolute_bound(chain, fx.constants.at(512));
    // roughly 1/log(delta) times the display-shape bound
    CHECK(sound > chain.n_absolute * 2);
    CHECK(sound < chain.n_absolute * 3);
}
