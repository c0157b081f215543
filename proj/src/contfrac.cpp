#include "pillai/contfrac.hpp"

#include <stdexcept>

namespace pillai {

namespace {

const BigInt kSuspicionThreshold = BigInt(1000000);

// remainder t_i = (p_{i-2} - q_{i-2} x) / (q_{i-1} x - p_{i-1}), exact p, q
CertReal remainder_from(const CertReal& x, const BigInt& p1, const BigInt& p2,
                        const BigInt& q1, const BigInt& q2) {
    CertReal num = CertReal(p2, x.precision()) - q2 * x;
    CertReal den = q1 * x - CertReal(p1, x.precision());
    return num / den;
}

}  // namespace

PartialQuotients expand(const RefinableReal& x, size_t count, std::string source_desc,
                        unsigned start_precision, unsigned max_precision) {
    PartialQuotients out;
    out.source = std::move(source_desc);
    unsigned prec = start_precision;
    CertReal xv = x(prec);
    out.precision_used = prec;

    // seeds: p_{-1}=1, p_{-2}=0, q_{-1}=0, q_{-2}=1
    BigInt p1 = 1, p2 = 0, q1 = 0, q2 = 1;
    while (out.a.size() < count) {
        CertReal t = out.a.empty() ? xv : remainder_from(xv, p1, p2, q1, q2);
        std::optional<BigInt> fl;
        bool exact_integer = false;
        for (;;) {
            fl = t.certified_floor();
            if (fl) {
                // rational endpoint: remainder may be exactly this integer,
                // in which case the expansion terminates here
                if (t.cmp_lo(*fl) == 0 && t.cmp_hi(*fl) == 0) exact_integer = true;
                break;
            }
            if (prec >= max_precision) {
                out.truncated = true;
                return out;
            }
            prec = std::min(prec * 2, max_precision);
            out.precision_used = prec;
            xv = x(prec);
            try {
                t = out.a.empty() ? xv : remainder_from(xv, p1, p2, q1, q2);
            } catch (const PrecisionExhausted&) {
                continue;  // denominator interval still straddles zero
            }
        }
        const BigInt a = *fl;
        if (!out.a.empty() && a < 1)
            throw std::logic_error("expand: partial quotient < 1 past index 0");
        if (a > kSuspicionThreshold) out.suspicious.push_back(out.a.size());
        out.a.push_back(a);
        BigInt np = a * p1 + p2, nq = a * q1 + q2;
        p2 = p1; p1 = np;
        q2 = q1; q1 = nq;
        if (exact_integer) {
            out.exhausted = true;
            break;
        }
    }
    return out;
}

PartialQuotients expand(const BigRat& x, size_t count, std::string source_desc) {
    PartialQuotients out;
    out.source = std::move(source_desc);
    BigInt num = x.get_num(), den = x.get_den();
    while (out.a.size() < count && den != 0) {
        BigInt q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (q > kSuspicionThreshold) out.suspicious.push_back(out.a.size());
        out.a.push_back(q);
        num = den;
        den = r;
        if (den == 0) out.exhausted = true;
    }
    return out;
}

std::vector<Convergent> convergents(const PartialQuotients& pq) {
    std::vector<Convergent> out;
    BigInt p1 = 1, p2 = 0, q1 = 0, q2 = 1;
    for (size_t i = 0; i < pq.a.size(); ++i) {
        BigInt np = pq.a[i] * p1 + p2, nq = pq.a[i] * q1 + q2;
        p2 = p1; p1 = np;
        q2 = q1; q1 = nq;
        out.push_back({i, p1, q1});
    }
    return out;
}

std::optional<Convergent> first_convergent_exceeding(const std::vector<Convergent>& conv,
                                                     const BigInt& threshold) {
    for (const auto& c : conv)
        if (c.q > threshold) return c;
    return std::nullopt;
}

std::optional<Convergent> first_convergent_exceeding(const PartialQuotients& pq,
                                                     const BigInt& threshold) {
    return first_convergent_exceeding(convergents(pq), threshold);
}

}  // namespace pillai
