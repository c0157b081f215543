#include "pillai/realnum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace pillai {

namespace {

unsigned clamp_prec(unsigned p) {
    if (p < 2) p = 2;
    if (p > kPrecisionCap + 64) p = kPrecisionCap + 64;
    return p;
}

}  // namespace

CertReal::CertReal(RawTag, unsigned precision) : precision_(clamp_prec(precision)) {
    mpfr_init2(lo_, precision_);
    mpfr_init2(hi_, precision_);
}

CertReal::CertReal() : CertReal(RawTag{}, 64) {
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

CertReal::CertReal(long value, unsigned precision) : CertReal(RawTag{}, precision) {
    mpfr_set_si(lo_, value, MPFR_RNDD);
    mpfr_set_si(hi_, value, MPFR_RNDU);
}

CertReal::CertReal(const BigInt& value, unsigned precision) : CertReal(RawTag{}, precision) {
    mpfr_set_z(lo_, value.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(hi_, value.get_mpz_t(), MPFR_RNDU);
}

CertReal::CertReal(const BigRat& value, unsigned precision) : CertReal(RawTag{}, precision) {
    mpfr_set_q(lo_, value.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, value.get_mpq_t(), MPFR_RNDU);
}

CertReal::CertReal(const CertReal& other) : CertReal(RawTag{}, other.precision_) {
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

CertReal::CertReal(CertReal&& other) noexcept : precision_(other.precision_) {
    mpfr_init2(lo_, 2);
    mpfr_init2(hi_, 2);
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
}

CertReal& CertReal::operator=(const CertReal& other) {
    if (this != &other) {
        mpfr_set_prec(lo_, mpfr_get_prec(other.lo_));
        mpfr_set_prec(hi_, mpfr_get_prec(other.hi_));
        mpfr_set(lo_, other.lo_, MPFR_RNDD);
        mpfr_set(hi_, other.hi_, MPFR_RNDU);
        precision_ = other.precision_;
    }
    return *this;
}

CertReal& CertReal::operator=(CertReal&& other) noexcept {
    if (this != &other) {
        mpfr_swap(lo_, other.lo_);
        mpfr_swap(hi_, other.hi_);
        precision_ = other.precision_;
    }
    return *this;
}

CertReal::~CertReal() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

CertReal CertReal::from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, unsigned precision) {
    CertReal r(RawTag{}, precision);
    mpfr_set(r.lo_, lo, MPFR_RNDD);
    mpfr_set(r.hi_, hi, MPFR_RNDU);
    return r;
}

CertReal CertReal::operator-() const {
    CertReal r(RawTag{}, precision_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

CertReal CertReal::abs() const {
    CertReal r(RawTag{}, precision_);
    if (mpfr_sgn(lo_) >= 0) {
        mpfr_set(r.lo_, lo_, MPFR_RNDD);
        mpfr_set(r.hi_, hi_, MPFR_RNDU);
    } else if (mpfr_sgn(hi_) <= 0) {
        mpfr_neg(r.lo_, hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    } else {
        mpfr_set_zero(r.lo_, 1);
        mpfr_neg(r.hi_, lo_, MPFR_RNDU);
        if (mpfr_cmp(r.hi_, hi_) < 0) mpfr_set(r.hi_, hi_, MPFR_RNDU);
    }
    return r;
}

CertReal CertReal::sqrt() const {
    if (mpfr_sgn(lo_) < 0)
        throw PrecisionExhausted("sqrt of interval with negative lower endpoint");
    CertReal r(RawTag{}, precision_);
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

CertReal CertReal::log() const {
    if (mpfr_sgn(lo_) <= 0)
        throw PrecisionExhausted("log of interval not certified positive");
    CertReal r(RawTag{}, precision_);
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

CertReal CertReal::exp() const {
    CertReal r(RawTag{}, precision_);
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
}

CertReal CertReal::reciprocal() const {
    if (contains_zero())
        throw PrecisionExhausted("reciprocal of interval containing zero");
    CertReal r(RawTag{}, precision_);
    mpfr_ui_div(r.lo_, 1, hi_, MPFR_RNDD);
    mpfr_ui_div(r.hi_, 1, lo_, MPFR_RNDU);
    return r;
}

CertReal CertReal::pow(long exponent) const {
    if (exponent < 0) return pow(-exponent).reciprocal();
    if (exponent == 0) return CertReal(1L, precision_);
    CertReal r(RawTag{}, precision_);
    const bool even = (exponent % 2 == 0);
    if (mpfr_sgn(lo_) >= 0) {
        mpfr_pow_si(r.lo_, lo_, exponent, MPFR_RNDD);
        mpfr_pow_si(r.hi_, hi_, exponent, MPFR_RNDU);
    } else if (mpfr_sgn(hi_) <= 0) {
        if (even) {
            mpfr_pow_si(r.lo_, hi_, exponent, MPFR_RNDD);
            mpfr_pow_si(r.hi_, lo_, exponent, MPFR_RNDU);
        } else {
            mpfr_pow_si(r.lo_, lo_, exponent, MPFR_RNDD);
            mpfr_pow_si(r.hi_, hi_, exponent, MPFR_RNDU);
        }
    } else if (even) {
        mpfr_t t;
        mpfr_init2(t, precision_);
        mpfr_pow_si(t, lo_, exponent, MPFR_RNDU);
        mpfr_pow_si(r.hi_, hi_, exponent, MPFR_RNDU);
        if (mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
        mpfr_set_zero(r.lo_, 1);
        mpfr_clear(t);
    } else {
        mpfr_pow_si(r.lo_, lo_, exponent, MPFR_RNDD);
        mpfr_pow_si(r.hi_, hi_, exponent, MPFR_RNDU);
    }
    return r;
}

CertReal CertReal::max_with(long v) const {
    CertReal r(*this);
    if (mpfr_cmp_si(r.lo_, v) < 0) mpfr_set_si(r.lo_, v, MPFR_RNDD);
    if (mpfr_cmp_si(r.hi_, v) < 0) mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

CertReal operator+(const CertReal& a, const CertReal& b) {
    CertReal r(CertReal::RawTag{}, std::max(a.precision_, b.precision_));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

CertReal operator-(const CertReal& a, const CertReal& b) {
    CertReal r(CertReal::RawTag{}, std::max(a.precision_, b.precision_));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
}

CertReal operator*(const CertReal& a, const CertReal& b) {
    const unsigned prec = std::max(a.precision_, b.precision_);
    CertReal r(CertReal::RawTag{}, prec);
    mpfr_t t;
    mpfr_init2(t, prec);
    // lo: min over endpoint products rounded down
    mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDD);
    if (mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDD);
    if (mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDD);
    if (mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
    // hi: max over endpoint products rounded up
    mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
    mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDU);
    if (mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDU);
    if (mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDU);
    if (mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

CertReal operator/(const CertReal& a, const CertReal& b) {
    return a * b.reciprocal();
}

CertReal operator+(const CertReal& a, long b) { return a + CertReal(b, a.precision_); }
CertReal operator-(const CertReal& a, long b) { return a - CertReal(b, a.precision_); }
CertReal operator*(const CertReal& a, long b) { return a * CertReal(b, a.precision_); }
CertReal operator/(const CertReal& a, long b) { return a / CertReal(b, a.precision_); }
CertReal operator-(long a, const CertReal& b) { return CertReal(a, b.precision_) - b; }
CertReal operator*(const BigInt& a, const CertReal& b) { return CertReal(a, b.precision_) * b; }
CertReal operator*(const CertReal& a, const BigRat& b) { return a * CertReal(b, a.precision_); }

bool CertReal::contains_zero() const {
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool CertReal::contains(const BigInt& v) const {
    return mpfr_cmp_z(lo_, v.get_mpz_t()) <= 0 && mpfr_cmp_z(hi_, v.get_mpz_t()) >= 0;
}

bool CertReal::contains(const BigRat& v) const {
    return mpfr_cmp_q(lo_, v.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, v.get_mpq_t()) >= 0;
}

bool CertReal::is_positive() const { return mpfr_sgn(lo_) > 0; }
bool CertReal::is_negative() const { return mpfr_sgn(hi_) < 0; }

std::optional<BigInt> CertReal::certified_floor() const {
    BigInt fl, fh;
    mpfr_get_z(fl.get_mpz_t(), lo_, MPFR_RNDD);
    mpfr_get_z(fh.get_mpz_t(), hi_, MPFR_RNDD);
    if (fl == fh) return fl;
    return std::nullopt;
}

BigInt CertReal::ceil_hi() const {
    BigInt c;
    mpfr_get_z(c.get_mpz_t(), hi_, MPFR_RNDU);
    return c;
}

BigInt CertReal::round_mid() const {
    mpfr_t mid;
    mpfr_init2(mid, precision_ + 1);
    mpfr_add(mid, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
    BigInt r;
    mpfr_get_z(r.get_mpz_t(), mid, MPFR_RNDN);
    mpfr_clear(mid);
    return r;
}

int CertReal::cmp_lo(const BigInt& v) const { return mpfr_cmp_z(lo_, v.get_mpz_t()); }
int CertReal::cmp_hi(const BigInt& v) const { return mpfr_cmp_z(hi_, v.get_mpz_t()); }
int CertReal::cmp_lo(const BigRat& v) const { return mpfr_cmp_q(lo_, v.get_mpq_t()); }
int CertReal::cmp_hi(const BigRat& v) const { return mpfr_cmp_q(hi_, v.get_mpq_t()); }

bool CertReal::width_below_2exp(long e) const {
    mpfr_t w;
    mpfr_init2(w, precision_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    const bool ok = mpfr_cmp_ui_2exp(w, 1, e) < 0;
    mpfr_clear(w);
    return ok;
}

double CertReal::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double CertReal::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
double CertReal::mid_double() const { return 0.5 * (lo_double() + hi_double()); }

namespace {
std::string mpfr_to_string(mpfr_srcptr v, int digits, mpfr_rnd_t rnd) {
    char buf[256];
    if (digits > 200) digits = 200;
    mpfr_snprintf(buf, sizeof buf, "%.*R*e", digits, rnd, v);
    return buf;
}
}  // namespace

std::string CertReal::str(int digits) const {
    return "[" + lo_str(digits) + ", " + hi_str(digits) + "]";
}
std::string CertReal::lo_str(int digits) const { return mpfr_to_string(lo_, digits, MPFR_RNDD); }
std::string CertReal::hi_str(int digits) const { return mpfr_to_string(hi_, digits, MPFR_RNDU); }

Ordering certified_compare(const CertReal& x, const CertReal& y) {
    if (mpfr_cmp(x.hi_raw(), y.lo_raw()) < 0) return Ordering::Less;
    if (mpfr_cmp(x.lo_raw(), y.hi_raw()) > 0) return Ordering::Greater;
    return Ordering::Undecided;
}

Ordering certified_compare(const CertReal& x, const BigRat& y) {
    if (x.cmp_hi(y) < 0) return Ordering::Less;
    if (x.cmp_lo(y) > 0) return Ordering::Greater;
    return Ordering::Undecided;
}

// ---------------------------------------------------------------------------
// Exact polynomial machinery: dyadic sign evaluation, Sturm sequences, and
// bisection refinement. Everything below is exact integer/rational work.
// ---------------------------------------------------------------------------

namespace {

// sign of p(num / 2^exp) for integer polynomial p, exp >= 0
int sign_at_dyadic(const std::vector<BigInt>& c, const BigInt& num, long exp) {
    BigInt acc = 0;
    BigInt two_e = 1;
    // evaluate sum c_i num^i 2^{exp (d-i)} via Horner from the top
    for (size_t i = c.size(); i-- > 0;) {
        acc = acc * num + c[i] * two_e;
        if (i > 0) {
            BigInt t;
            mpz_mul_2exp(t.get_mpz_t(), two_e.get_mpz_t(), static_cast<unsigned long>(exp));
            two_e = t;
        }
    }
    return sgn(acc);
}

struct Dyadic {
    BigInt num;
    long exp;  // value = num / 2^exp
    BigRat to_rat() const {
        BigRat r(num);
        BigRat d(1);
        mpz_mul_2exp(d.get_num().get_mpz_t(), d.get_num().get_mpz_t(),
                     static_cast<unsigned long>(exp));
        return r / d;
    }
};

using RatPoly = std::vector<BigRat>;  // ascending, may have zero lead after ops

RatPoly trim(RatPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

RatPoly derivative(const RatPoly& p) {
    RatPoly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    return trim(d);
}

// remainder of a by b (degree(b) >= 1)
RatPoly poly_rem(RatPoly a, const RatPoly& b) {
    a = trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        BigRat f = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        a = trim(a);
    }
    return a;
}

std::vector<RatPoly> sturm_chain(const RatPoly& p) {
    std::vector<RatPoly> chain{trim(p), derivative(p)};
    while (chain.back().size() > 1) {
        RatPoly r = poly_rem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;  // squarefree inputs should not reach here
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

BigRat eval_rat(const RatPoly& p, const BigRat& x) {
    BigRat acc = 0;
    for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

int sturm_variations(const std::vector<RatPoly>& chain, const BigRat& x) {
    int vars = 0, prev = 0;
    for (const auto& q : chain) {
        if (q.empty()) continue;
        int s = sgn(eval_rat(q, x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++vars;
        prev = s;
    }
    return vars;
}

// Distinct real roots in (a, b]
int roots_in(const std::vector<RatPoly>& chain, const BigRat& a, const BigRat& b) {
    return sturm_variations(chain, a) - sturm_variations(chain, b);
}


// Isolating dyadic intervals for all distinct real roots; exact dyadic roots
// come out as point intervals.
void isolate_real_roots(const std::vector<BigInt>& ip,
                        std::vector<std::pair<Dyadic, Dyadic>>& out) {
    RatPoly p;
    for (const auto& c : ip) p.push_back(BigRat(c));
    p = trim(p);
    auto chain = sturm_chain(p);

    // Cauchy bound: 1 + max |c_i| / |lead|
    BigInt lead = abs(ip.back());
    BigInt mx = 0;
    for (size_t i = 0; i + 1 < ip.size(); ++i) mx = std::max(mx, BigInt(abs(ip[i])));
    BigInt bound = mx / lead + 2;

    struct Seg { BigInt lo, hi; long exp; };
    std::vector<Seg> work{{-bound, bound, 0}};
    std::vector<BigRat> exact;  // dedup'd dyadic roots
    auto note_exact = [&exact](const Dyadic& d) {
        BigRat v = d.to_rat();
        if (std::find(exact.begin(), exact.end(), v) == exact.end()) exact.push_back(v);
    };
    while (!work.empty()) {
        Seg s = work.back();
        work.pop_back();
        Dyadic dl{s.lo, s.exp}, dh{s.hi, s.exp};
        BigRat rl = dl.to_rat(), rh = dh.to_rat();
        int n = roots_in(chain, rl, rh);
        int sl = sign_at_dyadic(ip, s.lo, s.exp);
        if (sl == 0) note_exact(dl);
        if (n == 0) continue;
        int sh = sign_at_dyadic(ip, s.hi, s.exp);
        if (sh == 0) {
            note_exact(dh);
            --n;  // (a, b] counts the root at b
        }
        if (n == 0) continue;
        if (n == 1 && sl != 0 && sh != 0 && sl != sh) {
            out.push_back({dl, dh});
            continue;
        }
        BigInt mid = s.lo + s.hi;  // split at (lo+hi)/2 = mid / 2^{exp+1}
        work.push_back({s.lo * 2, mid, s.exp + 1});
        work.push_back({mid, s.hi * 2, s.exp + 1});
    }
    for (const auto& v : exact) {
        // denominator is a power of two by construction
        BigInt den = v.get_den();
        long e = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1;
        Dyadic d{v.get_num(), e};
        out.push_back({d, d});
    }
}

// Shrink [lo, hi] (sign change certified) until width <= 2^-target_exp.
std::pair<Dyadic, Dyadic> refine_root(const std::vector<BigInt>& ip, Dyadic lo, Dyadic hi,
                                      long target_exp) {
    // normalize to common exponent
    while (lo.exp < hi.exp) { lo.num *= 2; ++lo.exp; }
    while (hi.exp < lo.exp) { hi.num *= 2; ++hi.exp; }
    auto narrow_enough = [&] {
        BigInt d = hi.num - lo.num;
        if (d == 0) return true;
        if (hi.exp < target_exp) return false;
        BigInt limit = 1;
        mpz_mul_2exp(limit.get_mpz_t(), limit.get_mpz_t(),
                     static_cast<unsigned long>(hi.exp - target_exp));
        return d <= limit;
    };
    int sl = sign_at_dyadic(ip, lo.num, lo.exp);
    while (!narrow_enough()) {
        BigInt mid = lo.num + hi.num;
        long e = lo.exp + 1;
        int sm = sign_at_dyadic(ip, mid, e);
        if (sm == 0) {
            return {{mid, e}, {mid, e}};
        }
        if (sm == sl) {
            lo = {mid, e};
            hi = {hi.num * 2, e};
        } else {
            hi = {mid, e};
            lo = {lo.num * 2, e};
        }
    }
    return {lo, hi};
}

CertReal dyadic_interval_to_real(const Dyadic& lo, const Dyadic& hi, unsigned prec) {
    mpfr_t l, h;
    mpfr_init2(l, prec);
    mpfr_init2(h, prec);
    mpfr_set_z_2exp(l, lo.num.get_mpz_t(), -lo.exp, MPFR_RNDD);
    mpfr_set_z_2exp(h, hi.num.get_mpz_t(), -hi.exp, MPFR_RNDU);
    CertReal r = CertReal::from_endpoints(l, h, prec);
    mpfr_clear(l);
    mpfr_clear(h);
    return r;
}

CertReal log_plus(const CertReal& x) {
    CertReal a = x.abs().max_with(1);
    return a.log();
}

}  // namespace

CertReal height_from_minpoly(const std::vector<BigInt>& coeffs_ascending, unsigned precision) {
    std::vector<BigInt> c = coeffs_ascending;
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.size() < 2) throw std::invalid_argument("height_from_minpoly: degree must be >= 1");
    const long degree_total = static_cast<long>(c.size()) - 1;

    // strip roots at zero (contribute log+ = 0)
    while (c.front() == 0) c.erase(c.begin());

    // x -> x^2 reductions preserve log|lead| + sum log+|roots|
    while (c.size() >= 3) {
        bool even = true;
        for (size_t i = 1; i < c.size(); i += 2)
            if (c[i] != 0) { even = false; break; }
        if (!even) break;
        std::vector<BigInt> half;
        for (size_t i = 0; i < c.size(); i += 2) half.push_back(c[i]);
        c = std::move(half);
    }

    const unsigned wp = precision + 64;
    CertReal mahler(0L, wp);
    {
        BigInt lead = abs(c.back());
        mahler = CertReal(lead, wp).log();
    }

    if (c.size() == 2) {
        // single rational root -c0/c1
        BigRat root(-c[0], c[1]);
        root.canonicalize();
        mahler = mahler + log_plus(CertReal(root, wp));
        return mahler / CertReal(BigInt(degree_total), wp);
    }

    std::vector<std::pair<Dyadic, Dyadic>> iso;
    isolate_real_roots(c, iso);
    const long deg = static_cast<long>(c.size()) - 1;
    const long nonreal = deg - static_cast<long>(iso.size());
    if (nonreal != 0 && nonreal != 2)
        throw std::invalid_argument("height_from_minpoly: unsupported root configuration");

    long target = 64;
    for (;;) {
        CertReal sum = mahler;
        CertReal prod_abs(1L, wp);
        bool near_zero = false;
        for (auto& [lo, hi] : iso) {
            auto [rl, rh] = refine_root(c, lo, hi, target);
            lo = rl;
            hi = rh;
            CertReal r = dyadic_interval_to_real(rl, rh, wp);
            sum = sum + log_plus(r);
            if (nonreal == 2) {
                CertReal a = r.abs();
                if (a.contains_zero()) { near_zero = true; break; }
                prod_abs = prod_abs * a;
            }
        }
        if (!near_zero && nonreal == 2) {
            // |pair|^2 = |c0/lead| / prod |real roots|; contributes log+(|pair|^2)
            BigRat ratio(abs(c.front()), abs(c.back()));
            ratio.canonicalize();
            CertReal pair_sq = CertReal(ratio, wp) / prod_abs;
            sum = sum + log_plus(pair_sq);
        }
        if (!near_zero) {
            CertReal h = sum / CertReal(BigInt(degree_total), wp);
            if (h.width_below_2exp(-static_cast<long>(precision) / 2)) return h;
        }
        if (target >= static_cast<long>(kPrecisionCap))
            throw PrecisionExhausted("height_from_minpoly: refinement cap reached");
        target *= 2;
    }
}

CertReal height_from_minpoly(const std::vector<long>& coeffs_ascending, unsigned precision) {
    std::vector<BigInt> c;
    for (long v : coeffs_ascending) c.push_back(BigInt(v));
    return height_from_minpoly(c, precision);
}

// ---------------------------------------------------------------------------
// Algebraic constants
// ---------------------------------------------------------------------------

const std::vector<long>& AlgebraicConstants::minpoly_a() {
    static const std::vector<long> p{-1, 6, -23, 23};
    return p;
}

const std::vector<long>& AlgebraicConstants::minpoly_sqrt5a() {
    static const std::vector<long> p{-125, 0, -250, 0, -1265, 0, 529};
    return p;
}

namespace {

// real root of x^3 - x - 1 in [1, 2], to width 2^-target_exp
CertReal isolate_alpha(unsigned prec, long target_exp) {
    const std::vector<BigInt> p{BigInt(-1), BigInt(-1), BigInt(0), BigInt(1)};
    auto [lo, hi] = refine_root(p, Dyadic{BigInt(1), 0}, Dyadic{BigInt(2), 0}, target_exp);
    return dyadic_interval_to_real(lo, hi, prec);
}


CertReal eval_int_poly(const std::vector<long>& coeffs, const CertReal& x) {
    CertReal acc(0L, x.precision());
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + CertReal(coeffs[i], x.precision());
    return acc;
}

void require(bool cond, const char* what) {
    if (!cond) throw std::logic_error(std::string("constants invariant failed: ") + what);
}

}  // namespace

AlgebraicConstants compute_constants(unsigned precision) {
    if (precision < 64) throw std::invalid_argument("compute_constants: precision must be >= 64");
    const unsigned wp = precision + 32;

    CertReal alpha = isolate_alpha(wp, static_cast<long>(precision) + 16);
    CertReal sqrt5 = CertReal(5L, wp).sqrt();
    CertReal delta = (sqrt5 + 1) / 2;
    CertReal eta = (1 - sqrt5) / 2;
    CertReal a_coeff = (alpha.pow(2) + alpha + 1) / (alpha * 2 + 3);
    // |b|^2 = (1 - alpha + 1/alpha) / (alpha^-2 + 11/alpha + 4 - alpha^2 - 3 alpha)
    CertReal inv_alpha = alpha.reciprocal();
    CertReal num = (1 - alpha) + inv_alpha;
    CertReal den = inv_alpha.pow(2) + inv_alpha * 11 + 4 - alpha.pow(2) - alpha * 3;
    CertReal b_c_modulus = (num / den).sqrt();
    CertReal beta_gamma_modulus = inv_alpha.sqrt();
    CertReal sqrt5_a = sqrt5 * a_coeff;
    CertReal log_alpha = alpha.log();
    CertReal log_delta = delta.log();
    CertReal h_sqrt5a = height_from_minpoly(AlgebraicConstants::minpoly_sqrt5a(), precision);

    require(eval_int_poly({-1, -1, 0, 1}, alpha).contains_zero(), "alpha root of x^3-x-1");
    require(eval_int_poly({-1, -1, 1}, delta).contains_zero(), "delta root of x^2-x-1");
    require(eval_int_poly({-1, -1, 1}, eta).contains_zero(), "eta root of x^2-x-1");
    require(eval_int_poly(AlgebraicConstants::minpoly_a(), a_coeff).contains_zero(),
            "a root of 23x^3-23x^2+6x-1");
    require(eval_int_poly(AlgebraicConstants::minpoly_sqrt5a(), sqrt5_a).contains_zero(),
            "sqrt5*a root of its minimal polynomial");
    require((beta_gamma_modulus.pow(2) * alpha).contains(BigInt(1)),
            "|beta||gamma| * alpha == 1");
    require((a_coeff * b_c_modulus.pow(2) * 23).contains(BigInt(1)),
            "23 a |b|^2 == 1");
    auto in_window = [](const CertReal& x, const char* lo, const char* hi) {
        BigRat l(lo), h(hi);
        l.canonicalize();
        h.canonicalize();
        return x.cmp_lo(l) > 0 && x.cmp_hi(h) < 0;
    };
    require(in_window(alpha, "132/100", "133/100"), "1.32 < alpha < 1.33");
    require(in_window(a_coeff, "72/100", "73/100"), "0.72 < a < 0.73");
    require(in_window(b_c_modulus, "24/100", "25/100"), "0.24 < |b| < 0.25");
    require(in_window(beta_gamma_modulus, "86/100", "87/100"), "0.86 < |beta| < 0.87");

    AlgebraicConstants k{precision,
                         std::move(alpha),
                         std::move(beta_gamma_modulus),
                         std::move(a_coeff),
                         std::move(b_c_modulus),
                         std::move(delta),
                         std::move(eta),
                         std::move(sqrt5),
                         std::move(sqrt5_a),
                         std::move(log_alpha),
                         std::move(log_delta),
                         std::move(h_sqrt5a)};
    return k;
}

const AlgebraicConstants& ConstantsProvider::at(unsigned precision) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(precision);
    if (it == cache_.end()) {
        auto ptr = std::make_unique<AlgebraicConstants>(compute_constants(precision));
        it = cache_.emplace(precision, std::move(ptr)).first;
    }
    return *it->second;
}

}  // namespace pillai
