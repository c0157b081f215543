#include "pillai/recurrences.hpp"

#include <mutex>
#include <stdexcept>

namespace pillai {

TermCache::TermCache(SequenceKind kind) : kind_(kind) {
    if (kind == SequenceKind::Padovan) {
        terms_.assign({BigInt(1), BigInt(1), BigInt(1)});
    } else {
        terms_.assign({BigInt(0), BigInt(1)});
    }
}

const BigInt& TermCache::term(size_t k) {
    while (terms_.size() <= k) {
        size_t n = terms_.size();
        if (kind_ == SequenceKind::Padovan)
            terms_.push_back(terms_[n - 2] + terms_[n - 3]);
        else
            terms_.push_back(terms_[n - 1] + terms_[n - 2]);
    }
    return terms_[k];
}

bool TermCache::audit(size_t up_to) const {
    TermCache fresh(kind_);
    for (size_t k = 0; k <= up_to && k < terms_.size(); ++k)
        if (fresh.term(k) != terms_[k]) return false;
    return true;
}

const BigInt& term(SequenceKind kind, size_t k) {
    static TermCache padovan(SequenceKind::Padovan);
    static TermCache fibonacci(SequenceKind::Fibonacci);
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    return (kind == SequenceKind::Padovan ? padovan : fibonacci).term(k);
}

CertReal binet_enclosure(SequenceKind kind, size_t k, unsigned precision,
                         ConstantsProvider& constants) {
    unsigned prec = std::max(precision, 64u);
    for (;;) {
        const AlgebraicConstants& c = constants.at(prec);
        CertReal value;
        if (kind == SequenceKind::Padovan) {
            // P_k = a alpha^k + b beta^k + c gamma^k, |b beta^k + c gamma^k| <= 2|b||beta|^k
            CertReal main = c.a_coeff * c.alpha.pow(static_cast<long>(k));
            CertReal wobble = c.b_c_modulus * 2 * c.beta_gamma_modulus.pow(static_cast<long>(k));
            value = main + CertReal::from_endpoints((-wobble).lo_raw(), wobble.hi_raw(),
                                                    wobble.precision());
        } else {
            value = (c.delta.pow(static_cast<long>(k)) - c.eta.pow(static_cast<long>(k))) / c.sqrt5;
        }
        if (value.width_below_2exp(0)) return value;
        if (prec >= kPrecisionCap)
            throw PrecisionExhausted("binet_enclosure: width >= 1 at precision cap");
        prec *= 2;
    }
}

std::vector<size_t> growth_bounds_report(SequenceKind kind, size_t k_min, size_t k_max,
                                         ConstantsProvider& constants) {
    const size_t floor_min = kind == SequenceKind::Padovan ? 4 : 1;
    if (k_min < floor_min)
        throw std::invalid_argument("growth_bounds_report: k_min below validity range");
    std::vector<size_t> violations;
    for (size_t k = k_min; k <= k_max; ++k) {
        const BigInt& t = term(kind, k);
        unsigned prec = kComparePrecisionStart;
        for (;;) {
            const AlgebraicConstants& c = constants.at(prec);
            const CertReal& base = kind == SequenceKind::Padovan ? c.alpha : c.delta;
            CertReal lo_pow = base.pow(static_cast<long>(k) - 2);
            CertReal hi_pow = base.pow(static_cast<long>(k) - 1);
            const bool lower_ok = lo_pow.cmp_hi(t) <= 0;
            const bool lower_bad = lo_pow.cmp_lo(t) > 0;
            const bool upper_ok = hi_pow.cmp_lo(t) >= 0;
            const bool upper_bad = hi_pow.cmp_hi(t) < 0;
            if ((lower_ok || lower_bad) && (upper_ok || upper_bad)) {
                if (lower_bad || upper_bad) violations.push_back(k);
                break;
            }
            if (prec >= kPrecisionCap)
                throw PrecisionExhausted("growth_bounds_report: undecidable comparison");
            prec *= 2;
        }
    }
    return violations;
}

}  // namespace pillai
