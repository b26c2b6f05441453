#include "anti/bridge.hpp"

#include <algorithm>

namespace anti {

std::size_t SymSquarePresentation::gen_index(std::size_t oi, std::size_t oj) const {
    if (oi > oj) std::swap(oi, oj);
    // lexicographic over (oi, oj), oi <= oj, on n = odd.size() symbols
    std::size_t n = odd.size();
    return oi * n - oi * (oi + 1) / 2 + oj;
}

Vec SymSquarePresentation::sym(const Vec& u, const Vec& v, long field_d) const {
    Vec out(gens.size(), Scalar::zero(field_d));
    for (std::size_t a = 0; a < odd.size(); ++a) {
        if (u[odd[a]].is_zero()) continue;
        for (std::size_t b = 0; b < odd.size(); ++b) {
            if (v[odd[b]].is_zero()) continue;
            out[gen_index(a, b)] += u[odd[a]] * v[odd[b]];
        }
    }
    return out;
}

Vec SymSquarePresentation::project(Vec g) const {
    for (const auto& row : relators.basis()) {
        std::size_t piv = 0;
        while (piv < g.size() && row[piv].is_zero()) ++piv;
        if (piv == g.size()) continue;
        Scalar c = g[piv];
        if (!c.is_zero())
            for (std::size_t j = 0; j < g.size(); ++j) g[j] -= c * row[j];
    }
    Vec out;
    out.reserve(rep_gens.size());
    for (auto r : rep_gens) out.push_back(g[r]);
    return out;
}

BridgeResult build_ga(const GradedAlgebra& alg) {
    if (alg.windowed()) throw WindowedInput("build_ga needs a total algebra");
    if (!check_antialgebra(alg).overall_pass)
        throw std::invalid_argument("build_ga input fails the antialgebra identities");

    SymSquarePresentation pres;
    pres.odd = alg.odd_indices();
    std::size_t n1 = pres.odd.size();
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = i; j < n1; ++j) pres.gens.push_back({i, j});

    long d = alg.field_d;
    auto bv = [&](std::size_t i) { return alg.basis_vector(i); };

    std::vector<Vec> relator_vectors;
    for (auto alpha : alg.even_indices())
        for (std::size_t a = 0; a < n1; ++a)
            for (std::size_t b = 0; b < n1; ++b) {
                Vec aa = *alg.product(bv(alpha), bv(pres.odd[a]));
                Vec ab = *alg.product(bv(alpha), bv(pres.odd[b]));
                Vec r1 = pres.sym(aa, bv(pres.odd[b]), d);
                Vec r2 = pres.sym(bv(pres.odd[a]), ab, d);
                for (std::size_t k = 0; k < r1.size(); ++k) r1[k] -= r2[k];
                relator_vectors.push_back(std::move(r1));
            }
    pres.relators = Subspace::span(pres.gens.size(), d, relator_vectors);
    {
        std::vector<bool> pivot(pres.gens.size(), false);
        for (const auto& row : pres.relators.basis()) {
            std::size_t piv = 0;
            while (piv < row.size() && row[piv].is_zero()) ++piv;
            if (piv < row.size()) pivot[piv] = true;
        }
        for (std::size_t g = 0; g < pres.gens.size(); ++g)
            if (!pivot[g]) pres.rep_gens.push_back(g);
    }

    std::size_t n0 = pres.rep_gens.size();
    GradedAlgebra g;
    g.name = "ga(" + alg.name + ")";
    g.field_d = d;
    g.bracket = true;
    for (auto r : pres.rep_gens) {
        auto [i, j] = pres.gens[r];
        g.labels.push_back(alg.labels[pres.odd[i]] + "." + alg.labels[pres.odd[j]]);
        g.parities.push_back(Parity::Even);
    }
    for (auto o : pres.odd) {
        g.labels.push_back(alg.labels[o]);
        g.parities.push_back(Parity::Odd);
    }

    // [a.b, c] in the odd part, for a generator pair (a, b) and odd basis c
    auto even_on_odd = [&](std::size_t gen, std::size_t c_pos) {
        auto [i, j] = pres.gens[gen];
        Vec ai = bv(pres.odd[i]), aj = bv(pres.odd[j]), c = bv(pres.odd[c_pos]);
        Vec t1 = *alg.product(ai, *alg.product(aj, c));
        Vec t2 = *alg.product(aj, *alg.product(ai, c));
        for (std::size_t k = 0; k < t1.size(); ++k) t1[k] += t2[k];
        return t1; // odd ambient vector
    };

    auto odd_coords = [&](const Vec& ambient) {
        Vec out(n1, Scalar::zero(d));
        for (std::size_t a = 0; a < n1; ++a) out[a] = ambient[pres.odd[a]];
        return out;
    };

    auto add_terms = [&](std::size_t i, std::size_t j, const Vec& coords, std::size_t offset) {
        std::vector<Term> terms;
        for (std::size_t k = 0; k < coords.size(); ++k)
            if (!coords[k].is_zero()) terms.push_back({k + offset, coords[k]});
        if (!terms.empty()) g.table[{i, j}] = std::move(terms);
    };

    // even-even: Leibniz extension [u, c.d] = [u, c].d + c.[u, d] on representatives
    for (std::size_t r = 0; r < n0; ++r)
        for (std::size_t s = r; s < n0; ++s) {
            auto [ci, cj] = pres.gens[pres.rep_gens[s]];
            Vec uc = even_on_odd(pres.rep_gens[r], ci); // ambient odd vector
            Vec ud = even_on_odd(pres.rep_gens[r], cj);
            Vec gen_vec = pres.sym(uc, bv(pres.odd[cj]), d);
            Vec gv2 = pres.sym(bv(pres.odd[ci]), ud, d);
            for (std::size_t k = 0; k < gen_vec.size(); ++k) gen_vec[k] += gv2[k];
            add_terms(r, s, pres.project(std::move(gen_vec)), 0);
        }
    // even-odd
    for (std::size_t r = 0; r < n0; ++r)
        for (std::size_t c = 0; c < n1; ++c)
            add_terms(r, n0 + c, odd_coords(even_on_odd(pres.rep_gens[r], c)), n0);
    // odd-odd: [a, b] = a.b
    for (std::size_t a = 0; a < n1; ++a)
        for (std::size_t b = a; b < n1; ++b)
            add_terms(n0 + a, n0 + b, pres.project(pres.sym(bv(pres.odd[a]), bv(pres.odd[b]), d)), 0);

    g.validate();
    return {std::move(g), std::move(pres)};
}

THomResult t_homomorphism(const GradedAlgebra& alg, const BridgeResult& bridge) {
    const auto& pres = bridge.presentation;
    const auto& g = bridge.superalgebra;
    long d = alg.field_d;
    RatField f{d};
    THomResult out;

    auto right_mult = [&](std::size_t ambient_idx) {
        Mat<RatField> m(alg.dim(), alg.dim(), f);
        for (std::size_t j = 0; j < alg.dim(); ++j) {
            Vec col = *alg.product(alg.basis_vector(j), alg.basis_vector(ambient_idx));
            for (std::size_t i = 0; i < alg.dim(); ++i) m.at(i, j) = col[i];
        }
        return m;
    };

    std::size_t n0 = pres.rep_gens.size();
    for (std::size_t r = 0; r < n0; ++r) {
        auto [i, j] = pres.gens[pres.rep_gens[r]];
        Mat<RatField> ti = right_mult(pres.odd[i]), tj = right_mult(pres.odd[j]);
        Mat<RatField> m = mat_mul(f, tj, ti); // x -> (x a) b
        Mat<RatField> m2 = mat_mul(f, ti, tj);
        for (std::size_t k = 0; k < m.e.size(); ++k) m.e[k] = m.e[k] + m2.e[k];
        out.ops.push_back(
            SuperLinearMap::from_matrix(m, alg.parities, alg.parities, Parity::Even, d));
    }
    for (auto o : pres.odd)
        out.ops.push_back(SuperLinearMap::from_matrix(right_mult(o), alg.parities, alg.parities,
                                                      Parity::Odd, d));

    out.all_derivations = true;
    for (const auto& op : out.ops)
        if (!check_linear_map(op, alg, alg, MapKind::Derivation).pass) out.all_derivations = false;

    // T_{[u,v]} = T_u T_v - (-1)^{p(u)p(v)} T_v T_u on all superalgebra basis pairs
    out.bracket_homomorphism = true;
    for (std::size_t u = 0; u < g.dim(); ++u)
        for (std::size_t v = 0; v < g.dim(); ++v) {
            Vec br = *g.product(g.basis_vector(u), g.basis_vector(v));
            Mat<RatField> lhs(alg.dim(), alg.dim(), f);
            for (std::size_t k = 0; k < g.dim(); ++k) {
                if (br[k].is_zero()) continue;
                auto mk = out.ops[k].matrix();
                for (std::size_t e = 0; e < lhs.e.size(); ++e)
                    lhs.e[e] = lhs.e[e] + mk.e[e] * br[k];
            }
            auto mu = out.ops[u].matrix(), mv = out.ops[v].matrix();
            auto uv = mat_mul(f, mu, mv), vu = mat_mul(f, mv, mu);
            int sign = (static_cast<int>(g.parities[u]) * static_cast<int>(g.parities[v])) % 2
                           ? -1
                           : 1;
            Mat<RatField> rhs = uv;
            for (std::size_t e = 0; e < rhs.e.size(); ++e)
                rhs.e[e] = sign == 1 ? rhs.e[e] - vu.e[e] : rhs.e[e] + vu.e[e];
            if (!(lhs == rhs)) {
                out.bracket_homomorphism = false;
                if (!out.hom_witness) out.hom_witness = {u, v};
            }
        }
    return out;
}

std::optional<Vec> expand_in_operator_basis(const std::vector<SuperLinearMap>& basis,
                                            const Mat<RatField>& m, long field_d) {
    RatField f{field_d};
    if (basis.empty()) return std::nullopt;
    std::size_t ents = m.rows * m.cols;
    Mat<RatField> sys(ents, basis.size(), f);
    for (std::size_t b = 0; b < basis.size(); ++b) {
        auto mb = basis[b].matrix();
        for (std::size_t e = 0; e < ents; ++e) sys.at(e, b) = mb.e[e];
    }
    std::vector<Scalar> rhs(m.e.begin(), m.e.end());
    auto sol = solve(f, sys, rhs);
    if (!sol) return std::nullopt;
    // solve() gives one solution; verify exactly
    Mat<RatField> acc(m.rows, m.cols, f);
    for (std::size_t b = 0; b < basis.size(); ++b) {
        auto mb = basis[b].matrix();
        for (std::size_t e = 0; e < ents; ++e) acc.e[e] = acc.e[e] + mb.e[e] * (*sol)[b];
    }
    if (!(acc == m)) return std::nullopt;
    return sol;
}

DerResult compute_der(const GradedAlgebra& alg) {
    if (alg.windowed()) throw WindowedInput("compute_der needs a total algebra");
    RatField f{alg.field_d};
    std::size_t n = alg.dim();

    // unknown entries of D per parity of the map
    auto solve_parity = [&](Parity pd) {
        std::vector<std::pair<std::size_t, std::size_t>> slots; // (row, col) of allowed entries
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (alg.parities[i] == alg.parities[j] + pd) slots.push_back({i, j});
        // equations: for each basis pair (p, q) and target coordinate r:
        //   D(e_p e_q) - D(e_p) e_q - (-1)^{p(D)p(e_p)} e_p D(e_q) = 0
        Mat<RatField> sys(n * n * n, slots.size(), f);
        for (std::size_t s = 0; s < slots.size(); ++s) {
            auto [i, j] = slots[s]; // D(e_j) has coordinate 1 at e_i
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q) {
                    std::size_t row0 = (p * n + q) * n;
                    // D applied to e_p e_q
                    Vec pq = *alg.product(alg.basis_vector(p), alg.basis_vector(q));
                    if (!pq[j].is_zero()) sys.at(row0 + i, s) = sys.at(row0 + i, s) + pq[j];
                    // - D(e_p) e_q
                    if (p == j) {
                        Vec t = *alg.product(alg.basis_vector(i), alg.basis_vector(q));
                        for (std::size_t r = 0; r < n; ++r)
                            sys.at(row0 + r, s) = sys.at(row0 + r, s) - t[r];
                    }
                    // - sign * e_p D(e_q)
                    if (q == j) {
                        int sign = (static_cast<int>(pd) * static_cast<int>(alg.parities[p])) % 2
                                       ? -1
                                       : 1;
                        Vec t = *alg.product(alg.basis_vector(p), alg.basis_vector(i));
                        for (std::size_t r = 0; r < n; ++r)
                            sys.at(row0 + r, s) =
                                sign == 1 ? sys.at(row0 + r, s) - t[r] : sys.at(row0 + r, s) + t[r];
                    }
                }
        }
        auto rr = rref_rank_nullspace(f, std::move(sys));
        std::vector<SuperLinearMap> ops;
        for (const auto& v : rr.nullspace) {
            Mat<RatField> m(n, n, f);
            for (std::size_t s = 0; s < slots.size(); ++s) m.at(slots[s].first, slots[s].second) = v[s];
            ops.push_back(SuperLinearMap::from_matrix(m, alg.parities, alg.parities, pd, alg.field_d));
        }
        return ops;
    };

    DerResult out;
    auto even_ops = solve_parity(Parity::Even);
    auto odd_ops = solve_parity(Parity::Odd);
    out.ops = even_ops;
    out.ops.insert(out.ops.end(), odd_ops.begin(), odd_ops.end());

    GradedAlgebra g;
    g.name = "der(" + alg.name + ")";
    g.field_d = alg.field_d;
    g.bracket = true;
    for (std::size_t i = 0; i < even_ops.size(); ++i) {
        g.labels.push_back("D_" + std::to_string(i));
        g.parities.push_back(Parity::Even);
    }
    for (std::size_t i = 0; i < odd_ops.size(); ++i) {
        g.labels.push_back("D_" + std::to_string(even_ops.size() + i));
        g.parities.push_back(Parity::Odd);
    }
    for (std::size_t u = 0; u < out.ops.size(); ++u)
        for (std::size_t v = u; v < out.ops.size(); ++v) {
            auto mu = out.ops[u].matrix(), mv = out.ops[v].matrix();
            auto uv = mat_mul(f, mu, mv), vu = mat_mul(f, mv, mu);
            int sign = (static_cast<int>(g.parities[u]) * static_cast<int>(g.parities[v])) % 2
                           ? -1
                           : 1;
            Mat<RatField> br = uv;
            for (std::size_t e = 0; e < br.e.size(); ++e)
                br.e[e] = sign == 1 ? br.e[e] - vu.e[e] : br.e[e] + vu.e[e];
            auto coords = expand_in_operator_basis(out.ops, br, alg.field_d);
            if (!coords) throw std::logic_error("derivations do not close under the bracket");
            std::vector<Term> terms;
            for (std::size_t k = 0; k < coords->size(); ++k)
                if (!(*coords)[k].is_zero()) terms.push_back({k, (*coords)[k]});
            if (!terms.empty()) g.table[{u, v}] = terms;
        }
    g.validate();
    out.bracket_algebra = std::move(g);
    return out;
}

} // namespace anti
