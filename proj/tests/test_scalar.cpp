#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "anti/scalar.hpp"

using namespace anti;

namespace {
std::uint64_t rng_state = 12345;
std::uint64_t next_u64() {
    rng_state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = rng_state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
Scalar random_scalar(long d) {
    long num = static_cast<long>(next_u64() % 21) - 10;
    long den = 1 + static_cast<long>(next_u64() % 9);
    if (d == 0) return Scalar(num, den);
    long num2 = static_cast<long>(next_u64() % 21) - 10;
    long den2 = 1 + static_cast<long>(next_u64() % 9);
    return Scalar(mpq_class(num, den), mpq_class(num2, den2), d);
}
} // namespace

TEST_CASE("rational arithmetic basics") {
    CHECK(Scalar(1, 2) + Scalar(1, 3) == Scalar(5, 6));
    CHECK(Scalar(1, 2) * Scalar(2, 3) == Scalar(1, 3));
    CHECK((Scalar(3) - Scalar(3)).is_zero());
    CHECK_THROWS_AS(Scalar(1) / Scalar(0), DivisionByZero);
}

TEST_CASE("quadratic extension arithmetic") {
    Scalar i = Scalar::sqrt_gen(-1);
    CHECK(i * i == Scalar(-1).with_tag(-1));
    CHECK(i.conjugate() == -i);
    Scalar x(mpq_class(1, 2), mpq_class(1, 3), 5);
    CHECK(x * x.inverse() == Scalar::one(5));
    CHECK((x + x.conjugate()).irr() == 0);
    CHECK_THROWS_AS(Scalar::sqrt_gen(5) + Scalar::sqrt_gen(7), FieldMismatch);
    // Q embeds into any quadratic field
    CHECK(Scalar(2) * Scalar::sqrt_gen(5) == Scalar(mpq_class(0), mpq_class(2), 5));
}

TEST_CASE("field axioms on random triples") {
    for (long d : {0L, -1L, 5L}) {
        for (int trial = 0; trial < 200; ++trial) {
            Scalar a = random_scalar(d), b = random_scalar(d), c = random_scalar(d);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            if (!a.is_zero()) CHECK(a * a.inverse() == Scalar::one(d));
            CHECK(a + (-a) == Scalar::zero(d));
        }
    }
}

TEST_CASE("scalar text round trip") {
    for (long d : {0L, -1L, 5L}) {
        for (int trial = 0; trial < 50; ++trial) {
            Scalar a = random_scalar(d);
            CHECK(Scalar::parse(a.str(), d) == a);
        }
    }
    CHECK(Scalar::parse("5/6") == Scalar(5, 6));
    CHECK(Scalar::parse("-3/2+1/4*sqrt(-1)", -1) ==
          Scalar(mpq_class(-3, 2), mpq_class(1, 4), -1));
    CHECK(Scalar::parse("1/2-1/4*sqrt(5)", 5) == Scalar(mpq_class(1, 2), mpq_class(-1, 4), 5));
}

TEST_CASE("reduction mod p") {
    FqCtx f5 = make_reduction_ctx(0, 5);
    CHECK(reduce_mod(Scalar(1, 2), f5) == FqElem{3, 0}); // 2 * 3 = 1 mod 5
    CHECK_THROWS_AS(reduce_mod(Scalar(1, 5), f5), BadPrime);
    FqCtx f7 = make_reduction_ctx(-1, 7); // -1 is not a residue mod 7
    CHECK(f7.extended());
    CHECK(reduce_mod(Scalar(2).with_tag(-1), f7) == FqElem{2, 0});
    CHECK(reduce_mod(Scalar::sqrt_gen(-1), f7) == FqElem{0, 1});
    FqCtx f5i = make_reduction_ctx(-1, 5); // -1 = 4 = 2^2 mod 5
    CHECK_FALSE(f5i.extended());
    auto img = reduce_mod(Scalar::sqrt_gen(-1), f5i);
    CHECK(f5i.mul(img, img) == f5i.from_int(-1));
}

TEST_CASE("reduce_mod is a ring homomorphism") {
    for (long d : {0L, -1L}) {
        FqCtx ctx = make_reduction_ctx(d, 7);
        for (int trial = 0; trial < 100; ++trial) {
            Scalar a = random_scalar(d), b = random_scalar(d);
            bool ok = true;
            FqElem ra{}, rb{};
            try {
                ra = reduce_mod(a, ctx);
                rb = reduce_mod(b, ctx);
            } catch (const BadPrime&) {
                ok = false; // a denominator hit the prime; skip
            }
            if (!ok) continue;
            CHECK(ctx.mul(ra, rb) == reduce_mod(a * b, ctx));
            CHECK(ctx.add(ra, rb) == reduce_mod(a + b, ctx));
        }
    }
}
