#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pillai {

using BigInt = mpz_class;
using BigRat = mpq_class;

inline constexpr unsigned kDefaultPrecision = 512;
inline constexpr unsigned kComparePrecisionStart = 192;
inline constexpr unsigned kPrecisionCap = 16384;

// Raised when a certified result cannot be produced within the precision cap.
struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Ordering { Less, Greater, Undecided };

// Closed interval [lo, hi] with MPFR endpoints, rounded outward by every
// operation. All arithmetic is enclosure arithmetic: the result interval
// contains every exact value obtainable from points of the operands.
class CertReal {
  public:
    CertReal();
    explicit CertReal(long value, unsigned precision = 64);
    CertReal(const BigInt& value, unsigned precision);
    CertReal(const BigRat& value, unsigned precision);
    CertReal(const CertReal& other);
    CertReal(CertReal&& other) noexcept;
    CertReal& operator=(const CertReal& other);
    CertReal& operator=(CertReal&& other) noexcept;
    ~CertReal();

    unsigned precision() const { return precision_; }

    CertReal operator-() const;
    CertReal abs() const;
    CertReal sqrt() const;
    CertReal log() const;   // requires certified lo > 0
    CertReal exp() const;
    CertReal reciprocal() const;  // requires interval to exclude 0
    CertReal pow(long exponent) const;
    CertReal max_with(long v) const;  // [max(lo,v), max(hi,v)]

    friend CertReal operator+(const CertReal& a, const CertReal& b);
    friend CertReal operator-(const CertReal& a, const CertReal& b);
    friend CertReal operator*(const CertReal& a, const CertReal& b);
    friend CertReal operator/(const CertReal& a, const CertReal& b);
    friend CertReal operator+(const CertReal& a, long b);
    friend CertReal operator-(const CertReal& a, long b);
    friend CertReal operator*(const CertReal& a, long b);
    friend CertReal operator/(const CertReal& a, long b);
    friend CertReal operator-(long a, const CertReal& b);
    friend CertReal operator*(const BigInt& a, const CertReal& b);
    friend CertReal operator*(const CertReal& a, const BigRat& b);

    bool contains_zero() const;
    bool contains(const BigInt& v) const;
    bool contains(const BigRat& v) const;
    bool is_positive() const;  // lo > 0
    bool is_negative() const;  // hi < 0

    // floor(lo) == floor(hi) ? that value : nullopt
    std::optional<BigInt> certified_floor() const;
    // ceil of hi (used for conservative integer bounds)
    BigInt ceil_hi() const;
    BigInt round_mid() const;

    // sign of (lo - v) / (hi - v); exact comparisons
    int cmp_lo(const BigInt& v) const;
    int cmp_hi(const BigInt& v) const;
    int cmp_lo(const BigRat& v) const;
    int cmp_hi(const BigRat& v) const;

    bool width_below_2exp(long e) const;  // hi - lo < 2^e certified
    double lo_double() const;
    double hi_double() const;
    double mid_double() const;

    std::string str(int digits = 20) const;      // "[lo, hi]"
    std::string lo_str(int digits = 20) const;   // decimal, rounded down
    std::string hi_str(int digits = 20) const;   // decimal, rounded up

    // Endpoints must satisfy lo <= hi; not re-checked.
    static CertReal from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, unsigned precision);
    mpfr_srcptr lo_raw() const { return lo_; }
    mpfr_srcptr hi_raw() const { return hi_; }

  private:
    struct RawTag {};
    CertReal(RawTag, unsigned precision);
    mpfr_t lo_;
    mpfr_t hi_;
    unsigned precision_;
};

Ordering certified_compare(const CertReal& x, const CertReal& y);
Ordering certified_compare(const CertReal& x, const BigRat& y);

// The algebraic data of both sequences at a fixed working precision.
// alpha is the real root of x^3-x-1, delta = (1+sqrt5)/2; the complex
// Padovan roots enter only through their common modulus alpha^{-1/2}.
struct AlgebraicConstants {
    unsigned precision;
    CertReal alpha;
    CertReal beta_gamma_modulus;  // |beta| = |gamma| = alpha^{-1/2}
    CertReal a_coeff;             // Binet leading coefficient of Padovan
    CertReal b_c_modulus;         // |b| = |c|
    CertReal delta;
    CertReal eta;                 // (1-sqrt5)/2
    CertReal sqrt5;
    CertReal sqrt5_a;             // sqrt5 * a
    CertReal log_alpha;
    CertReal log_delta;
    CertReal h_sqrt5a;            // logarithmic height of sqrt5*a

    static const std::vector<long>& minpoly_a();       // 23x^3-23x^2+6x-1, ascending
    static const std::vector<long>& minpoly_sqrt5a();  // 529x^6-1265x^4-250x^2-125
};

AlgebraicConstants compute_constants(unsigned precision);

// (1/d)(log|lead| + sum log max(1,|root_j|)) over all complex roots.
// Supported inputs: squarefree integer polynomials whose non-real roots form
// at most one conjugate pair after removing zero roots and x -> x^2 reductions.
CertReal height_from_minpoly(const std::vector<BigInt>& coeffs_ascending, unsigned precision);
CertReal height_from_minpoly(const std::vector<long>& coeffs_ascending, unsigned precision);

// Precision-keyed cache of AlgebraicConstants. Values are immutable once
// computed; safe for concurrent readers.
class ConstantsProvider {
  public:
    const AlgebraicConstants& at(unsigned precision);

  private:
    std::mutex mutex_;
    std::map<unsigned, std::unique_ptr<AlgebraicConstants>> cache_;
};

}  // namespace pillai
