#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "anti/linalg.hpp"

using namespace anti;

namespace {

using Vec = std::vector<Scalar>;

RatField Q{0};

Mat<RatField> mat(std::size_t r, std::size_t c, std::vector<long> vals) {
    Mat<RatField> m(r, c, Q);
    for (std::size_t i = 0; i < r * c; ++i) m.e[i] = Scalar(vals[i]);
    return m;
}

Mat<FqField> fmat(const FqField& f, std::size_t n, std::vector<long> vals) {
    Mat<FqField> m(n, n, f);
    for (std::size_t i = 0; i < n * n; ++i) m.e[i] = f.ctx.from_int(vals[i]);
    return m;
}

std::uint64_t rng_state = 777;
std::uint64_t next_u64() {
    rng_state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = rng_state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

TEST_CASE("rref on simple shapes") {
    auto id3 = Mat<RatField>::identity(3, Q);
    auto r = rref_rank_nullspace(Q, id3);
    CHECK(r.rank == 3);
    CHECK(r.nullspace.empty());

    Mat<RatField> z(2, 4, Q);
    auto rz = rref_rank_nullspace(Q, z);
    CHECK(rz.rank == 0);
    CHECK(rz.nullspace.size() == 4);

    auto prop = mat(2, 2, {1, 2, 2, 4});
    auto rp = rref_rank_nullspace(Q, prop);
    CHECK(rp.rank == 1);
    REQUIRE(rp.nullspace.size() == 1);
    CHECK(rp.nullspace[0] == Vec{Scalar(-2), Scalar(1)});
}

TEST_CASE("rank plus nullity is the column count") {
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = 1 + next_u64() % 5, c = 1 + next_u64() % 5;
        Mat<RatField> m(r, c, Q);
        for (auto& e : m.e) e = Scalar(static_cast<long>(next_u64() % 7) - 3);
        auto rr = rref_rank_nullspace(Q, m);
        CHECK(rr.rank + rr.nullspace.size() == c);
        for (const auto& v : rr.nullspace) {
            auto img = mat_apply(Q, m, v);
            for (const auto& x : img) CHECK(x.is_zero());
        }
    }
}

TEST_CASE("solve") {
    auto id2 = Mat<RatField>::identity(2, Q);
    auto s = solve(Q, id2, {Scalar(1), Scalar(2)});
    REQUIRE(s);
    CHECK(*s == Vec{Scalar(1), Scalar(2)});

    auto wide = mat(1, 2, {1, 1});
    auto sw = solve(Q, wide, {Scalar(3)});
    REQUIRE(sw);
    CHECK(*sw == Vec{Scalar(3), Scalar(0)}); // pivot-canonical

    auto zero = mat(1, 1, {0});
    CHECK_FALSE(solve(Q, zero, {Scalar(1)}));
}

TEST_CASE("meataxe examples over GF(5)") {
    FqField f{FqCtx(5)};
    // swap + diagonal generate an irreducible pair
    std::vector<Mat<FqField>> gens = {fmat(f, 2, {0, 1, 1, 0}), fmat(f, 2, {1, 0, 0, -1})};
    auto r1 = module_irreducible(f, gens, 2);
    CHECK(std::holds_alternative<Irreducible>(r1));

    std::vector<Mat<FqField>> tri = {fmat(f, 2, {1, 1, 0, 1})};
    auto r2 = module_irreducible(f, tri, 2);
    REQUIRE(std::holds_alternative<Reducible<FqField>>(r2));
    auto& sub = std::get<Reducible<FqField>>(r2).subspace;
    REQUIRE(sub.size() == 1);
    CHECK(sub[0] == std::vector<FqElem>{{1, 0}, {0, 0}});

    auto r3 = module_irreducible(f, {}, 2);
    CHECK(std::holds_alternative<Reducible<FqField>>(r3));
    auto r4 = module_irreducible(f, {}, 1);
    CHECK(std::holds_alternative<Irreducible>(r4));
}

TEST_CASE("meataxe agrees with exhaustive subspace search in small dimension") {
    for (std::uint64_t p : {5ULL, 7ULL}) {
        FqField f{FqCtx(p)};
        for (std::size_t dim = 2; dim <= 3; ++dim) {
            for (int trial = 0; trial < 25; ++trial) {
                std::vector<Mat<FqField>> gens;
                std::size_t k = 1 + next_u64() % 2;
                for (std::size_t g = 0; g < k; ++g) {
                    Mat<FqField> m(dim, dim, f);
                    for (auto& e : m.e) e = f.ctx.from_int(static_cast<long>(next_u64() % p));
                    gens.push_back(std::move(m));
                }
                auto fast = module_irreducible(f, gens, dim);
                auto slow = detail::exhaustive_irreducible(f, gens, dim, f.ctx.field_size());
                bool fast_irr = std::holds_alternative<Irreducible>(fast);
                bool slow_irr = std::holds_alternative<Irreducible>(slow);
                // the randomized test may fall back, but may never disagree
                if (!std::holds_alternative<Inconclusive>(fast)) CHECK(fast_irr == slow_irr);
                if (auto* red = std::get_if<Reducible<FqField>>(&fast)) {
                    // witness really is invariant and proper
                    CHECK(red->subspace.size() < dim);
                    CHECK(!red->subspace.empty());
                    for (const auto& v : red->subspace)
                        for (const auto& g : gens) {
                            auto gv = mat_apply(f, g, v);
                            auto joined = red->subspace;
                            joined.push_back(gv);
                            Mat<FqField> test(joined.size(), dim, f);
                            for (std::size_t i = 0; i < joined.size(); ++i)
                                for (std::size_t j = 0; j < dim; ++j)
                                    test.at(i, j) = joined[i][j];
                            CHECK(rref_rank_nullspace(f, test).rank == red->subspace.size());
                        }
                }
            }
        }
    }
}
