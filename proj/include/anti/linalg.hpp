#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "anti/scalar.hpp"

namespace anti {

// Field objects bundle element type and arithmetic so the same dense kernels
// serve Q(sqrt(d)) and GF(p)/GF(p^2).

struct RatField {
    using Elem = Scalar;
    long d = 0;
    Elem zero() const { return Scalar::zero(d); }
    Elem one() const { return Scalar::one(d); }
    Elem add(const Elem& x, const Elem& y) const { return x + y; }
    Elem sub(const Elem& x, const Elem& y) const { return x - y; }
    Elem mul(const Elem& x, const Elem& y) const { return x * y; }
    Elem neg(const Elem& x) const { return -x; }
    Elem inv(const Elem& x) const { return x.inverse(); }
    bool is_zero(const Elem& x) const { return x.is_zero(); }
};

struct FqField {
    using Elem = FqElem;
    FqCtx ctx;
    Elem zero() const { return ctx.zero(); }
    Elem one() const { return ctx.one(); }
    Elem add(const Elem& x, const Elem& y) const { return ctx.add(x, y); }
    Elem sub(const Elem& x, const Elem& y) const { return ctx.sub(x, y); }
    Elem mul(const Elem& x, const Elem& y) const { return ctx.mul(x, y); }
    Elem neg(const Elem& x) const { return ctx.neg(x); }
    Elem inv(const Elem& x) const { return ctx.inv(x); }
    bool is_zero(const Elem& x) const { return ctx.is_zero(x); }
};

template <class Fld>
struct Mat {
    using Elem = typename Fld::Elem;
    std::size_t rows = 0, cols = 0;
    std::vector<Elem> e;

    Mat() = default;
    Mat(std::size_t r, std::size_t c, const Fld& f) : rows(r), cols(c), e(r * c, f.zero()) {}
    Elem& at(std::size_t i, std::size_t j) { return e[i * cols + j]; }
    const Elem& at(std::size_t i, std::size_t j) const { return e[i * cols + j]; }

    static Mat identity(std::size_t n, const Fld& f) {
        Mat m(n, n, f);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
        return m;
    }
    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && e == o.e; }
};

template <class Fld>
Mat<Fld> mat_mul(const Fld& f, const Mat<Fld>& a, const Mat<Fld>& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matrix shape mismatch");
    Mat<Fld> c(a.rows, b.cols, f);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            if (f.is_zero(a.at(i, k))) continue;
            for (std::size_t j = 0; j < b.cols; ++j)
                c.at(i, j) = f.add(c.at(i, j), f.mul(a.at(i, k), b.at(k, j)));
        }
    return c;
}

template <class Fld>
std::vector<typename Fld::Elem> mat_apply(const Fld& f, const Mat<Fld>& a,
                                          const std::vector<typename Fld::Elem>& v) {
    if (a.cols != v.size()) throw std::invalid_argument("matrix/vector shape mismatch");
    std::vector<typename Fld::Elem> out(a.rows, f.zero());
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            if (!f.is_zero(a.at(i, j))) out[i] = f.add(out[i], f.mul(a.at(i, j), v[j]));
    return out;
}

template <class Fld>
Mat<Fld> mat_transpose(const Fld& f, const Mat<Fld>& a) {
    Mat<Fld> t(a.cols, a.rows, f);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) t.at(j, i) = a.at(i, j);
    return t;
}

template <class Fld>
struct RrefResult {
    Mat<Fld> rref;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;              // pivot column per pivot row
    std::vector<std::vector<typename Fld::Elem>> nullspace; // canonical basis
};

// Reduced row echelon form with the canonical pivot-parameterized nullspace:
// for each free column c, the vector with 1 at c and -rref[r][c] at pivot
// columns.
template <class Fld>
RrefResult<Fld> rref_rank_nullspace(const Fld& f, Mat<Fld> m) {
    RrefResult<Fld> out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t piv = r;
        while (piv < m.rows && f.is_zero(m.at(piv, c))) ++piv;
        if (piv == m.rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
        auto s = f.inv(m.at(r, c));
        for (std::size_t j = 0; j < m.cols; ++j) m.at(r, j) = f.mul(s, m.at(r, j));
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || f.is_zero(m.at(i, c))) continue;
            auto q = m.at(i, c);
            for (std::size_t j = 0; j < m.cols; ++j)
                m.at(i, j) = f.sub(m.at(i, j), f.mul(q, m.at(r, j)));
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : out.pivots) is_pivot[c] = true;
    for (std::size_t c = 0; c < m.cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<typename Fld::Elem> v(m.cols, f.zero());
        v[c] = f.one();
        for (std::size_t i = 0; i < out.pivots.size(); ++i)
            v[out.pivots[i]] = f.neg(m.at(i, c));
        out.nullspace.push_back(std::move(v));
    }
    out.rref = std::move(m);
    return out;
}

// One solution of A x = b (free variables zero), or nullopt.
template <class Fld>
std::optional<std::vector<typename Fld::Elem>> solve(const Fld& f, const Mat<Fld>& a,
                                                     const std::vector<typename Fld::Elem>& b) {
    if (a.rows != b.size()) throw std::invalid_argument("solve: shape mismatch");
    Mat<Fld> aug(a.rows, a.cols + 1, f);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < a.cols; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols) = b[i];
    }
    auto rr = rref_rank_nullspace(f, std::move(aug));
    std::vector<typename Fld::Elem> x(a.cols, f.zero());
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) {
        if (rr.pivots[i] == a.cols) return std::nullopt; // pivot in the RHS column
        x[rr.pivots[i]] = rr.rref.at(i, a.cols);
    }
    return x;
}

// --- module irreducibility (Meataxe) ----------------------------------------

struct Irreducible {};
template <class Fld>
struct Reducible {
    std::vector<std::vector<typename Fld::Elem>> subspace; // rref basis of a proper invariant subspace
};
struct Inconclusive {};

template <class Fld>
using IrredResult = std::variant<Irreducible, Reducible<Fld>, Inconclusive>;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Smallest invariant subspace containing v under the action of gens, as an
// rref-canonical basis.
template <class Fld>
std::vector<std::vector<typename Fld::Elem>> spin(const Fld& f,
                                                  const std::vector<Mat<Fld>>& gens,
                                                  const std::vector<typename Fld::Elem>& v) {
    std::size_t n = v.size();
    Mat<Fld> one_row(1, n, f);
    for (std::size_t j = 0; j < n; ++j) one_row.at(0, j) = v[j];
    auto rr = rref_rank_nullspace(f, std::move(one_row));
    std::vector<std::vector<typename Fld::Elem>> basis;
    for (std::size_t i = 0; i < rr.rank; ++i)
        basis.emplace_back(rr.rref.e.begin() + i * n, rr.rref.e.begin() + (i + 1) * n);
    std::size_t processed = 0;
    while (processed < basis.size()) {
        auto w = basis[processed++];
        for (const auto& g : gens) {
            auto gw = mat_apply(f, g, w);
            Mat<Fld> test(basis.size() + 1, n, f);
            for (std::size_t i = 0; i < basis.size(); ++i)
                for (std::size_t j = 0; j < n; ++j) test.at(i, j) = basis[i][j];
            for (std::size_t j = 0; j < n; ++j) test.at(basis.size(), j) = gw[j];
            auto t = rref_rank_nullspace(f, std::move(test));
            if (t.rank > basis.size()) {
                basis.clear();
                for (std::size_t i = 0; i < t.rank; ++i)
                    basis.emplace_back(t.rref.e.begin() + i * n, t.rref.e.begin() + (i + 1) * n);
                processed = 0; // basis changed; rescan
            }
            if (basis.size() == n) return basis;
        }
    }
    return basis;
}

template <class Fld>
IrredResult<Fld> exhaustive_irreducible(const Fld& f, const std::vector<Mat<Fld>>& gens,
                                        std::size_t n, std::uint64_t q) {
    // spin every nonzero vector; any proper spin is an invariant-subspace witness
    std::vector<typename Fld::Elem> v(n, f.zero());
    auto decode = [&](std::uint64_t code) -> typename Fld::Elem {
        if constexpr (std::is_same_v<Fld, FqField>) {
            if (!f.ctx.extended()) return FqElem{code, 0};
            return FqElem{code % f.ctx.p(), code / f.ctx.p()};
        } else {
            (void)code;
            throw std::logic_error("exhaustive search is finite-field only");
        }
    };
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= q;
    for (std::uint64_t code = 1; code < total; ++code) {
        std::uint64_t c = code;
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = decode(c % q);
            c /= q;
        }
        auto sp = spin(f, gens, v);
        if (sp.size() < n) return Reducible<Fld>{sp};
    }
    return Irreducible{};
}

} // namespace detail

// Norton's randomized irreducibility test over a finite field, with seeded
// deterministic retries. Falls back to exhaustive search for dim <= 4, else
// returns Inconclusive.
inline IrredResult<FqField> module_irreducible(const FqField& f,
                                               const std::vector<Mat<FqField>>& gens,
                                               std::size_t dim, std::size_t retries = 50,
                                               std::uint64_t seed = 0x5eed) {
    using Fld = FqField;
    if (dim == 0) throw std::invalid_argument("zero-dimensional module");
    if (gens.empty()) {
        if (dim == 1) return Irreducible{};
        std::vector<std::vector<FqElem>> line(1, std::vector<FqElem>(dim, f.zero()));
        line[0][0] = f.one();
        return Reducible<Fld>{line};
    }
    for (const auto& g : gens)
        if (g.rows != dim || g.cols != dim)
            throw std::invalid_argument("generator shape mismatch");
    if (dim == 1) return Irreducible{};

    std::uint64_t rng = seed;
    std::vector<Mat<Fld>> tgens;
    tgens.reserve(gens.size());
    for (const auto& g : gens) tgens.push_back(mat_transpose(f, g));

    for (std::size_t attempt = 0; attempt < retries; ++attempt) {
        // random algebra element: sum of random short products of generators
        Mat<Fld> r(dim, dim, f);
        std::size_t terms = 2 + detail::splitmix64(rng) % 3;
        for (std::size_t t = 0; t < terms; ++t) {
            Mat<Fld> m = gens[detail::splitmix64(rng) % gens.size()];
            std::size_t len = detail::splitmix64(rng) % 3;
            for (std::size_t l = 0; l < len; ++l)
                m = mat_mul(f, m, gens[detail::splitmix64(rng) % gens.size()]);
            FqElem c = f.ctx.from_int(static_cast<long>(1 + detail::splitmix64(rng) % (f.ctx.p() - 1)));
            for (std::size_t i = 0; i < dim * dim; ++i) r.e[i] = f.add(r.e[i], f.mul(c, m.e[i]));
        }
        auto rr = rref_rank_nullspace(f, r);
        if (rr.rank == dim || rr.rank == 0) continue; // invertible or zero: useless
        // Norton: spin a kernel vector
        auto v = rr.nullspace.front();
        auto sp = detail::spin(f, gens, v);
        if (sp.size() < dim) return Reducible<Fld>{sp};
        // spin a kernel vector of the transpose
        auto rrt = rref_rank_nullspace(f, mat_transpose(f, r));
        auto w = rrt.nullspace.front();
        auto spt = detail::spin(f, tgens, w);
        if (spt.size() < dim) {
            // orthogonal complement of a transpose-invariant subspace is invariant
            Mat<Fld> m(spt.size(), dim, f);
            for (std::size_t i = 0; i < spt.size(); ++i)
                for (std::size_t j = 0; j < dim; ++j) m.at(i, j) = spt[i][j];
            auto comp = rref_rank_nullspace(f, std::move(m));
            Mat<Fld> cm(comp.nullspace.size(), dim, f);
            for (std::size_t i = 0; i < comp.nullspace.size(); ++i)
                for (std::size_t j = 0; j < dim; ++j) cm.at(i, j) = comp.nullspace[i][j];
            auto cr = rref_rank_nullspace(f, std::move(cm));
            std::vector<std::vector<typename Fld::Elem>> basis;
            for (std::size_t i = 0; i < cr.rank; ++i)
                basis.emplace_back(cr.rref.e.begin() + i * dim, cr.rref.e.begin() + (i + 1) * dim);
            return Reducible<Fld>{basis};
        }
        if (dim - rr.rank == 1) return Irreducible{}; // Norton's criterion
    }
    if (dim <= 4) return detail::exhaustive_irreducible(f, gens, dim, f.ctx.field_size());
    return Inconclusive{};
}

} // namespace anti
