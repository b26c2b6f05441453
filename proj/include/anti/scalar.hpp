#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace anti {

struct FieldMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DivisionByZero : std::domain_error {
    using std::domain_error::domain_error;
};
struct BadPrime : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Exact element of Q (tag d == 0) or Q(sqrt(d)) for a square-free integer d != 0, 1.
// Value is a + b*sqrt(d); pure-Q values keep b == 0. mpq_class keeps fractions
// canonical (lowest terms, positive denominator).
class Scalar {
  public:
    Scalar() : d_(0) {}
    Scalar(long n) : a_(n), d_(0) {}
    Scalar(long num, long den);
    Scalar(mpq_class a, long d = 0);
    Scalar(mpq_class a, mpq_class b, long d);

    static Scalar zero(long d = 0) { return Scalar(mpq_class(0), d); }
    static Scalar one(long d = 0) { return Scalar(mpq_class(1), d); }
    static Scalar sqrt_gen(long d); // sqrt(d) itself

    const mpq_class& rat() const { return a_; }
    const mpq_class& irr() const { return b_; }
    long field_tag() const { return d_; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar conjugate() const; // a + b*sqrt(d) -> a - b*sqrt(d)
    Scalar inverse() const;

    // Retag a value into Q(sqrt(d)); only legal from Q or the same field.
    Scalar with_tag(long d) const;

    // Canonical text form: "n/d" or "n/d+m/k*sqrt(D)" / "n/d-m/k*sqrt(D)".
    std::string str() const;
    static Scalar parse(const std::string& s, long expect_d = 0);

  private:
    mpq_class a_, b_;
    long d_;
    void check_tag() const;
};

inline Scalar operator*(long n, const Scalar& s) { return Scalar(n) * s; }

// --- prime fields -----------------------------------------------------------
//
// GF(p) for odd prime p, or GF(p^2) = GF(p)[s]/(s^2 - r) when reducing a
// quadratic field whose generator has no square root mod p.

struct FqElem {
    std::uint64_t a = 0, b = 0; // a + b*s
    bool operator==(const FqElem&) const = default;
};

class FqCtx {
  public:
    explicit FqCtx(std::uint64_t p) : p_(p), ext_(false), r_(0) {}
    FqCtx(std::uint64_t p, std::uint64_t nonresidue) : p_(p), ext_(true), r_(nonresidue) {}

    std::uint64_t p() const { return p_; }
    bool extended() const { return ext_; }
    std::uint64_t nonresidue() const { return r_; }

    FqElem zero() const { return {}; }
    FqElem one() const { return {1, 0}; }
    FqElem from_int(long n) const;
    FqElem add(FqElem x, FqElem y) const;
    FqElem sub(FqElem x, FqElem y) const;
    FqElem mul(FqElem x, FqElem y) const;
    FqElem neg(FqElem x) const;
    FqElem inv(FqElem x) const;
    bool is_zero(FqElem x) const { return x.a == 0 && x.b == 0; }

    std::uint64_t field_size() const { return ext_ ? p_ * p_ : p_; }

  private:
    std::uint64_t p_;
    bool ext_;
    std::uint64_t r_;
};

bool is_prime_u64(std::uint64_t n);
// Legendre symbol style test; p odd prime, a not divisible by p.
bool is_quadratic_residue(std::uint64_t a, std::uint64_t p);
// Square root mod odd prime p (Tonelli-Shanks); a must be a residue.
std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p);

// Context suitable for reducing scalars of field tag d mod p: plain GF(p) when
// d == 0 or d is a residue, GF(p^2) otherwise. Throws BadPrime for p | d or p == 2.
FqCtx make_reduction_ctx(long d, std::uint64_t p);

// Canonical image of x in the context's field. Throws BadPrime when a
// denominator vanishes mod p.
FqElem reduce_mod(const Scalar& x, const FqCtx& ctx);

} // namespace anti
