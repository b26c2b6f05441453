#include "anti/extensions.hpp"

#include "anti/axioms.hpp"

namespace anti {

CocycleLayout cocycle_layout(const GradedAlgebra& alg, ExtType type) {
    CocycleLayout layout;
    auto evens = alg.even_indices();
    auto odds = alg.odd_indices();
    if (type == ExtType::I) {
        for (auto i : evens)
            for (auto j : odds) layout.slots.push_back({i, j});
    } else {
        for (std::size_t a = 0; a < evens.size(); ++a)
            for (std::size_t b = a; b < evens.size(); ++b)
                layout.slots.push_back({evens[a], evens[b]});
        for (std::size_t a = 0; a < odds.size(); ++a)
            for (std::size_t b = a + 1; b < odds.size(); ++b)
                layout.slots.push_back({odds[a], odds[b]});
    }
    return layout;
}

long CocycleLayout::index(std::size_t i, std::size_t j) const {
    for (std::size_t s = 0; s < slots.size(); ++s)
        if (slots[s] == std::make_pair(i, j)) return static_cast<long>(s);
    return -1;
}

Scalar cocycle_value(const GradedAlgebra& alg, const Cocycle& c, std::size_t i, std::size_t j) {
    Parity pi = alg.parities[i], pj = alg.parities[j];
    const auto& layout_slots = c.coeffs; // flat values in layout order
    CocycleLayout layout = cocycle_layout(alg, c.type);
    if (layout.size() != layout_slots.size())
        throw std::invalid_argument("cocycle coefficient size mismatch");
    auto val = [&](std::size_t a, std::size_t b, const Scalar& sign) {
        long s = layout.index(a, b);
        return s < 0 ? Scalar::zero(alg.field_d) : layout_slots[s] * sign;
    };
    if (c.type == ExtType::I) {
        // nonzero only on (even, odd); symmetric
        if (pi == Parity::Even && pj == Parity::Odd) return val(i, j, Scalar(1));
        if (pi == Parity::Odd && pj == Parity::Even) return val(j, i, Scalar(1));
        return Scalar::zero(alg.field_d);
    }
    // type II: even block symmetric, odd block skew
    if (pi == Parity::Even && pj == Parity::Even)
        return i <= j ? val(i, j, Scalar(1)) : val(j, i, Scalar(1));
    if (pi == Parity::Odd && pj == Parity::Odd) {
        if (i == j) return Scalar::zero(alg.field_d);
        return i < j ? val(i, j, Scalar(1)) : val(j, i, Scalar(-1));
    }
    return Scalar::zero(alg.field_d);
}

namespace {

// Rows of the identity system; each row is a linear functional on the layout.
struct SystemBuilder {
    const GradedAlgebra& alg;
    CocycleLayout layout;
    ExtType type;
    std::vector<Vec> rows;

    SystemBuilder(const GradedAlgebra& a, ExtType t) : alg(a), layout(cocycle_layout(a, t)), type(t) {}

    // accumulate coeff * C(u, v) into row, for ambient vectors u, v
    void add_bilinear(Vec& row, const Vec& u, const Vec& v, const Scalar& coeff) {
        for (std::size_t i = 0; i < alg.dim(); ++i) {
            if (u[i].is_zero()) continue;
            for (std::size_t j = 0; j < alg.dim(); ++j) {
                if (v[j].is_zero()) continue;
                Scalar c = coeff * u[i] * v[j];
                Parity pi = alg.parities[i], pj = alg.parities[j];
                auto put = [&](std::size_t a, std::size_t b, Scalar sign) {
                    long s = layout.index(a, b);
                    if (s >= 0) row[s] += c * sign;
                };
                if (type == ExtType::I) {
                    if (pi == Parity::Even && pj == Parity::Odd) put(i, j, Scalar(1));
                    if (pi == Parity::Odd && pj == Parity::Even) put(j, i, Scalar(1));
                } else {
                    if (pi == Parity::Even && pj == Parity::Even)
                        put(std::min(i, j), std::max(i, j), Scalar(1));
                    if (pi == Parity::Odd && pj == Parity::Odd && i != j)
                        put(std::min(i, j), std::max(i, j), i < j ? Scalar(1) : Scalar(-1));
                }
            }
        }
    }

    void row_done(Vec row) {
        for (const auto& c : row)
            if (!c.is_zero()) {
                rows.push_back(std::move(row));
                return;
            }
    }
};

} // namespace

CocycleSpace cocycle_space(const GradedAlgebra& alg, ExtType type) {
    if (alg.windowed()) throw WindowedInput("cocycle_space needs a total algebra");
    CocycleSpace out;
    out.type = type;
    out.layout = cocycle_layout(alg, type);
    RatField f{alg.field_d};
    auto evens = alg.even_indices();
    auto odds = alg.odd_indices();
    auto bv = [&](std::size_t i) { return alg.basis_vector(i); };

    SystemBuilder sys(alg, type);
    if (type == ExtType::I) {
        // C(alpha, beta a) = C(beta, alpha a) and C(alpha, beta a) = 1/2 C(alpha beta, a)
        for (auto al : evens)
            for (auto be : evens)
                for (auto a : odds) {
                    Vec ba = *alg.product(bv(be), bv(a));
                    Vec aa = *alg.product(bv(al), bv(a));
                    Vec ab = *alg.product(bv(al), bv(be));
                    Vec r1(sys.layout.size(), Scalar::zero(alg.field_d));
                    sys.add_bilinear(r1, bv(al), ba, Scalar(1));
                    sys.add_bilinear(r1, bv(be), aa, Scalar(-1));
                    sys.row_done(std::move(r1));
                    Vec r2(sys.layout.size(), Scalar::zero(alg.field_d));
                    sys.add_bilinear(r2, bv(al), ba, Scalar(1));
                    sys.add_bilinear(r2, ab, bv(a), Scalar(-1, 2));
                    sys.row_done(std::move(r2));
                }
        // cyclic odd identity: C(ab, c) + C(bc, a) + C(ca, b) = 0
        for (auto a : odds)
            for (auto b : odds)
                for (auto c : odds) {
                    Vec row(sys.layout.size(), Scalar::zero(alg.field_d));
                    sys.add_bilinear(row, *alg.product(bv(a), bv(b)), bv(c), Scalar(1));
                    sys.add_bilinear(row, *alg.product(bv(b), bv(c)), bv(a), Scalar(1));
                    sys.add_bilinear(row, *alg.product(bv(c), bv(a)), bv(b), Scalar(1));
                    sys.row_done(std::move(row));
                }
    } else {
        // C(alpha, a b) = C(alpha a, b) + C(a, alpha b)
        for (auto al : evens)
            for (auto a : odds)
                for (auto b : odds) {
                    Vec row(sys.layout.size(), Scalar::zero(alg.field_d));
                    sys.add_bilinear(row, bv(al), *alg.product(bv(a), bv(b)), Scalar(1));
                    sys.add_bilinear(row, *alg.product(bv(al), bv(a)), bv(b), Scalar(-1));
                    sys.add_bilinear(row, bv(a), *alg.product(bv(al), bv(b)), Scalar(-1));
                    sys.row_done(std::move(row));
                }
        // C(alpha beta, gamma) = C(alpha, beta gamma)
        for (auto al : evens)
            for (auto be : evens)
                for (auto ga : evens) {
                    Vec row(sys.layout.size(), Scalar::zero(alg.field_d));
                    sys.add_bilinear(row, *alg.product(bv(al), bv(be)), bv(ga), Scalar(1));
                    sys.add_bilinear(row, bv(al), *alg.product(bv(be), bv(ga)), Scalar(-1));
                    sys.row_done(std::move(row));
                }
    }

    // Z = nullspace of the stacked identity rows
    std::size_t m = sys.rows.size();
    Mat<RatField> mat(std::max<std::size_t>(m, 1), sys.layout.size(), f);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < sys.layout.size(); ++c) mat.at(r, c) = sys.rows[r][c];
    auto rr = rref_rank_nullspace(f, std::move(mat));
    out.cocycles = Subspace::span(sys.layout.size(), alg.field_d, rr.nullspace);

    // B = image of the coboundary map
    std::vector<Vec> bvecs;
    if (type == ExtType::I) {
        // f ranges over odd-part functionals; B_f(alpha, a) = f(alpha a)
        for (auto dual : odds) {
            Vec row(sys.layout.size(), Scalar::zero(alg.field_d));
            for (std::size_t s = 0; s < sys.layout.size(); ++s) {
                auto [i, j] = sys.layout.slots[s];
                Vec prod = *alg.product(bv(i), bv(j));
                row[s] = prod[dual];
            }
            bvecs.push_back(std::move(row));
        }
    } else {
        // f ranges over even-part functionals; B_f(x, y) = f(x y)
        for (auto dual : evens) {
            Vec row(sys.layout.size(), Scalar::zero(alg.field_d));
            for (std::size_t s = 0; s < sys.layout.size(); ++s) {
                auto [i, j] = sys.layout.slots[s];
                Vec prod = *alg.product(bv(i), bv(j));
                row[s] = prod[dual];
            }
            bvecs.push_back(std::move(row));
        }
    }
    out.coboundaries = Subspace::span(sys.layout.size(), alg.field_d, bvecs);
    return out;
}

bool is_cocycle(const GradedAlgebra& alg, const Cocycle& c) {
    auto space = cocycle_space(alg, c.type);
    if (c.coeffs.size() != space.layout.size()) return false;
    return space.cocycles.contains(c.coeffs);
}

GradedAlgebra extend_central(const GradedAlgebra& alg, const Cocycle& c,
                             const std::string& central_label) {
    if (alg.windowed()) throw WindowedInput("extend_central needs a total algebra");
    if (!is_cocycle(alg, c)) throw NotACocycle("coefficients fail the cocycle identities");
    GradedAlgebra out = alg;
    out.name = alg.name + "^";
    std::size_t z = alg.dim();
    out.labels.push_back(central_label);
    out.parities.push_back(c.type == ExtType::I ? Parity::Odd : Parity::Even);
    for (std::size_t i = 0; i < alg.dim(); ++i)
        for (std::size_t j = i; j < alg.dim(); ++j) {
            Scalar v = cocycle_value(alg, c, i, j);
            if (!v.is_zero()) out.table[{i, j}].push_back({z, v});
        }
    out.validate();
    return out;
}

UnitalSplitResult unital_split(const GradedAlgebra& alg) {
    auto rep = analyze(alg);
    if (!rep.unital) throw NotUnital("the even part has no unit");
    const auto& us = *rep.unital;
    if (!(us.zero_eigenspace == rep.center))
        throw std::logic_error("zero eigenspace of the unit does not match the center");

    UnitalSplitResult out;
    out.center = rep.center;
    // abar spans the even part plus the 1/2-eigenspace of the unit
    std::vector<Vec> vecs;
    for (auto e : alg.even_indices()) vecs.push_back(alg.basis_vector(e));
    for (const auto& row : us.half_eigenspace.basis()) vecs.push_back(row);
    Subspace abar_space = Subspace::span(alg.dim(), alg.field_d, vecs);

    // build the subalgebra on the abar basis
    GradedAlgebra sub;
    sub.name = alg.name + "_bar";
    sub.field_d = alg.field_d;
    std::vector<Vec> basis = abar_space.basis();
    for (const auto& row : basis) {
        bool odd = false;
        for (std::size_t j = 0; j < row.size(); ++j)
            if (!row[j].is_zero() && alg.parities[j] == Parity::Odd) odd = true;
        sub.parities.push_back(odd ? Parity::Odd : Parity::Even);
        sub.labels.push_back("v_" + std::to_string(sub.labels.size()));
    }
    // coordinates of an ambient vector in the abar basis (must lie inside)
    RatField f{alg.field_d};
    auto coords = [&](const Vec& v) {
        Mat<RatField> m(alg.dim(), basis.size(), f);
        for (std::size_t j = 0; j < basis.size(); ++j)
            for (std::size_t i = 0; i < alg.dim(); ++i) m.at(i, j) = basis[j][i];
        auto sol = solve(f, m, v);
        if (!sol) throw std::logic_error("abar is not multiplicatively closed");
        return *sol;
    };
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = a; b < basis.size(); ++b) {
            Vec prod = *alg.product(basis[a], basis[b]);
            Vec cc = coords(prod);
            std::vector<Term> terms;
            for (std::size_t k = 0; k < cc.size(); ++k)
                if (!cc[k].is_zero()) terms.push_back({k, cc[k]});
            if (!terms.empty()) sub.table[{a, b}] = terms;
        }
    sub.validate();
    out.abar = std::move(sub);
    out.dim_h_type1 = cocycle_space(out.abar, ExtType::I).dim_h();
    out.dim_h_type2 = cocycle_space(out.abar, ExtType::II).dim_h();
    return out;
}

} // namespace anti
