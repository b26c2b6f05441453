#include "anti/scalar.hpp"

#include <cstdlib>

namespace anti {

Scalar::Scalar(long num, long den) : d_(0) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    a_ = mpq_class(num, den);
    a_.canonicalize();
}

Scalar::Scalar(mpq_class a, long d) : a_(std::move(a)), d_(d) {
    a_.canonicalize();
    check_tag();
}

Scalar::Scalar(mpq_class a, mpq_class b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    a_.canonicalize();
    b_.canonicalize();
    check_tag();
}

void Scalar::check_tag() const {
    if (d_ == 0 && b_ != 0) throw FieldMismatch("irrational part in a rational-tagged scalar");
    if (d_ == 1) throw FieldMismatch("d = 1 is not a valid quadratic tag");
}

Scalar Scalar::sqrt_gen(long d) {
    if (d == 0 || d == 1) throw FieldMismatch("sqrt generator needs d != 0, 1");
    return Scalar(mpq_class(0), mpq_class(1), d);
}

namespace {
// Resulting tag of a binary op; Q values embed into any quadratic field.
long join_tags(const Scalar& x, const Scalar& y) {
    if (x.field_tag() == y.field_tag()) return x.field_tag();
    if (x.field_tag() == 0) return y.field_tag();
    if (y.field_tag() == 0) return x.field_tag();
    throw FieldMismatch("scalars from different quadratic fields");
}
} // namespace

Scalar Scalar::with_tag(long d) const {
    if (d_ == d) return *this;
    if (d_ != 0) throw FieldMismatch("cannot retag a proper quadratic value");
    return Scalar(a_, b_, d);
}

Scalar Scalar::operator-() const { return Scalar(-a_, -b_, d_); }

Scalar Scalar::operator+(const Scalar& o) const {
    long d = join_tags(*this, o);
    return Scalar(a_ + o.a_, b_ + o.b_, d);
}

Scalar Scalar::operator-(const Scalar& o) const {
    long d = join_tags(*this, o);
    return Scalar(a_ - o.a_, b_ - o.b_, d);
}

Scalar Scalar::operator*(const Scalar& o) const {
    long d = join_tags(*this, o);
    // (a + b s)(a' + b' s) = aa' + bb' d + (ab' + a'b) s,  s^2 = d
    return Scalar(a_ * o.a_ + b_ * o.b_ * d, a_ * o.b_ + o.a_ * b_, d);
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    if (b_ == 0) return Scalar(1 / a_, mpq_class(0), d_);
    // norm a^2 - d b^2 is nonzero for square-free d (sqrt(d) irrational)
    mpq_class n = a_ * a_ - mpq_class(d_) * b_ * b_;
    return Scalar(a_ / n, -b_ / n, d_);
}

Scalar Scalar::operator/(const Scalar& o) const {
    if (o.is_zero()) throw DivisionByZero("division by zero");
    return *this * o.inverse();
}

bool Scalar::operator==(const Scalar& o) const {
    if (a_ != o.a_ || b_ != o.b_) return false;
    // equal values with b == 0 compare equal across compatible tags
    if (b_ == 0) return d_ == o.d_ || d_ == 0 || o.d_ == 0;
    return d_ == o.d_;
}

Scalar Scalar::conjugate() const { return Scalar(a_, -b_, d_); }

std::string Scalar::str() const {
    auto frac = [](const mpq_class& q) {
        return q.get_num().get_str() + "/" + q.get_den().get_str();
    };
    if (b_ == 0) return frac(a_);
    std::string out = frac(a_);
    if (b_ < 0)
        out += "-" + frac(mpq_class(-b_));
    else
        out += "+" + frac(b_);
    out += "*sqrt(" + std::to_string(d_) + ")";
    return out;
}

Scalar Scalar::parse(const std::string& s, long expect_d) {
    auto parse_frac = [](const std::string& t) -> mpq_class {
        // accepts "n" or "n/d"
        if (t.empty()) throw std::invalid_argument("empty scalar literal");
        mpq_class q;
        if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad scalar literal: " + t);
        if (q.get_den() == 0) throw DivisionByZero("zero denominator in literal");
        q.canonicalize();
        return q;
    };
    auto pos = s.find("*sqrt(");
    if (pos == std::string::npos) {
        return Scalar(parse_frac(s), expect_d);
    }
    if (s.back() != ')') throw std::invalid_argument("bad sqrt literal: " + s);
    long d = std::stol(s.substr(pos + 6, s.size() - pos - 7));
    if (expect_d != 0 && d != expect_d)
        throw FieldMismatch("sqrt tag disagrees with ambient field");
    // split the leading "a+b" / "a-b" at the sign separating the two fractions
    std::string head = s.substr(0, pos);
    std::size_t cut = std::string::npos;
    for (std::size_t i = 1; i < head.size(); ++i) {
        if ((head[i] == '+' || head[i] == '-') && head[i - 1] != '/' && head[i - 1] != '+' &&
            head[i - 1] != '-')
            cut = i; // last such sign belongs to the sqrt coefficient
    }
    if (cut == std::string::npos) {
        // pure irrational part "b*sqrt(d)"
        return Scalar(mpq_class(0), parse_frac(head), d);
    }
    mpq_class a = parse_frac(head.substr(0, cut));
    mpq_class b = parse_frac(head.substr(cut + 1));
    if (head[cut] == '-') b = -b;
    return Scalar(a, b, d);
}

// --- prime fields -----------------------------------------------------------

FqElem FqCtx::from_int(long n) const {
    long long m = n % static_cast<long long>(p_);
    if (m < 0) m += p_;
    return {static_cast<std::uint64_t>(m), 0};
}

FqElem FqCtx::add(FqElem x, FqElem y) const { return {(x.a + y.a) % p_, (x.b + y.b) % p_}; }
FqElem FqCtx::sub(FqElem x, FqElem y) const {
    return {(x.a + p_ - y.a) % p_, (x.b + p_ - y.b) % p_};
}
FqElem FqCtx::neg(FqElem x) const { return {(p_ - x.a) % p_, (p_ - x.b) % p_}; }

FqElem FqCtx::mul(FqElem x, FqElem y) const {
    if (!ext_) return {(x.a * y.a) % p_, 0};
    std::uint64_t a = (x.a * y.a + ((x.b * y.b) % p_) * r_) % p_;
    std::uint64_t b = (x.a * y.b + x.b * y.a) % p_;
    return {a, b};
}

namespace {
std::uint64_t pow_mod(std::uint64_t x, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    x %= p;
    while (e) {
        if (e & 1) r = r * x % p;
        x = x * x % p;
        e >>= 1;
    }
    return r;
}
} // namespace

FqElem FqCtx::inv(FqElem x) const {
    if (is_zero(x)) throw DivisionByZero("inverse of zero in prime field");
    if (!ext_) return {pow_mod(x.a, p_ - 2, p_), 0};
    // (a + bs)^-1 = (a - bs) / (a^2 - r b^2)
    std::uint64_t n = (x.a * x.a + p_ * p_ - ((x.b * x.b) % p_) * r_ % p_) % p_;
    std::uint64_t ninv = pow_mod(n, p_ - 2, p_);
    return {x.a * ninv % p_, (p_ - x.b) * ninv % p_};
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_quadratic_residue(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return true;
    return pow_mod(a, (p - 1) / 2, p) == 1;
}

std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    // fields here are tiny; direct search is plenty
    for (std::uint64_t x = 1; x < p; ++x)
        if (x * x % p == a) return x;
    throw std::invalid_argument("not a quadratic residue");
}

FqCtx make_reduction_ctx(long d, std::uint64_t p) {
    if (p == 2 || !is_prime_u64(p)) throw BadPrime("need an odd prime");
    if (d == 0) return FqCtx(p);
    long long r = d % static_cast<long long>(p);
    if (r < 0) r += p;
    if (r == 0) throw BadPrime("prime divides the field discriminant");
    if (is_quadratic_residue(static_cast<std::uint64_t>(r), p)) return FqCtx(p);
    return FqCtx(p, static_cast<std::uint64_t>(r));
}

namespace {
std::uint64_t reduce_rat(const mpq_class& q, std::uint64_t p) {
    mpz_class pz(static_cast<unsigned long>(p));
    mpz_class den = q.get_den() % pz;
    if (den == 0) throw BadPrime("denominator vanishes mod p");
    mpz_class num = q.get_num() % pz;
    if (num < 0) num += pz;
    std::uint64_t n = num.get_ui();
    std::uint64_t dn = mpz_class(den < 0 ? den + pz : den).get_ui();
    return n * pow_mod(dn, p - 2, p) % p;
}
} // namespace

FqElem reduce_mod(const Scalar& x, const FqCtx& ctx) {
    std::uint64_t p = ctx.p();
    std::uint64_t a = reduce_rat(x.rat(), p);
    if (x.irr() == 0) return {a, 0};
    std::uint64_t b = reduce_rat(x.irr(), p);
    long long r = x.field_tag() % static_cast<long long>(p);
    if (r < 0) r += p;
    if (r == 0) throw BadPrime("prime divides the field discriminant");
    if (ctx.extended()) {
        if (ctx.nonresidue() != static_cast<std::uint64_t>(r))
            throw BadPrime("context built for a different discriminant");
        return {a, b};
    }
    std::uint64_t s = sqrt_mod(static_cast<std::uint64_t>(r), p);
    return {(a + b * s) % p, 0};
}

} // namespace anti
