#include "anti/reps.hpp"

#include <sstream>

#include "anti/catalog.hpp"
#include "anti/grassmann.hpp"
#include "anti/io.hpp"

namespace anti {

std::pair<std::size_t, std::size_t> Carrier::graded_dims() const {
    std::size_t e = 0, o = 0;
    for (auto p : parities) (p == Parity::Even ? e : o)++;
    return {e, o};
}

bool PartialOp::total() const {
    for (const auto& c : cols)
        if (!c) return false;
    return true;
}

std::optional<Vec> PartialOp::apply(const Vec& v, long field_d) const {
    Vec out(cols.size(), Scalar::zero(field_d));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (v[j].is_zero()) continue;
        if (!cols[j]) return std::nullopt;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += (*cols[j])[i] * v[j];
    }
    return out;
}

PartialOp PartialOp::compose(const PartialOp& f, const PartialOp& g, long field_d) {
    PartialOp out;
    out.parity = f.parity + g.parity;
    out.cols.resize(g.cols.size());
    for (std::size_t j = 0; j < g.cols.size(); ++j) {
        if (!g.cols[j]) continue;
        out.cols[j] = f.apply(*g.cols[j], field_d);
    }
    return out;
}

PartialOp PartialOp::zero(Parity p, std::size_t dim) {
    PartialOp out;
    out.parity = p;
    out.cols.assign(dim, Vec(dim, Scalar::zero(0)));
    return out;
}

bool Representation::windowed() const {
    if (algebra.windowed()) return true;
    for (const auto& op : ops)
        if (!op.total()) return true;
    return false;
}

namespace {

std::optional<Vec> add_opt(const std::optional<Vec>& a, const std::optional<Vec>& b, int sign) {
    if (!a || !b) return std::nullopt;
    Vec out = *a;
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] += sign == 1 ? (*b)[i] : -(*b)[i];
    return out;
}

} // namespace

RepCheck check_representation(const Representation& rep) {
    const auto& alg = rep.algebra;
    if (rep.ops.size() != alg.dim()) throw std::invalid_argument("one operator per basis element");
    long d = rep.carrier.field_d;
    RepCheck out;
    std::size_t dim = rep.carrier.dim();
    auto unit = [&](std::size_t j) {
        Vec v(dim, Scalar::zero(d));
        v[j] = Scalar::one(d);
        return v;
    };
    for (std::size_t i = 0; i < alg.dim(); ++i)
        for (std::size_t j = 0; j < alg.dim(); ++j) {
            if (!alg.defined(i, j)) {
                out.skipped += dim;
                continue;
            }
            auto terms = alg.basis_product(i, j);
            int sign = (static_cast<int>(alg.parities[i]) * static_cast<int>(alg.parities[j])) % 2
                           ? -1
                           : 1;
            for (std::size_t v = 0; v < dim; ++v) {
                // lhs: chi_{e_i e_j} v
                std::optional<Vec> lhs = Vec(dim, Scalar::zero(d));
                for (const auto& t : terms) {
                    auto img = rep.ops[t.k].cols[v];
                    if (!img) {
                        lhs = std::nullopt;
                        break;
                    }
                    for (std::size_t r = 0; r < dim; ++r) (*lhs)[r] += (*img)[r] * t.c;
                }
                // rhs: chi_i chi_j v + sign chi_j chi_i v
                auto ij = rep.ops[j].cols[v] ? rep.ops[i].apply(*rep.ops[j].cols[v], d)
                                             : std::nullopt;
                auto ji = rep.ops[i].cols[v] ? rep.ops[j].apply(*rep.ops[i].cols[v], d)
                                             : std::nullopt;
                auto rhs = add_opt(ij, ji, sign);
                if (!lhs || !rhs) {
                    ++out.skipped;
                    continue;
                }
                ++out.checked;
                if (*lhs != *rhs && out.pass) {
                    out.pass = false;
                    out.witness = {i, j};
                    std::ostringstream os;
                    os << "anticommutator identity fails on (" << alg.labels[i] << ", "
                       << alg.labels[j] << ") at carrier " << rep.carrier.labels[v];
                    out.detail = os.str();
                }
                if (*lhs != *rhs) out.pass = false;
            }
        }
    // commuting even images
    auto evens = alg.even_indices();
    for (std::size_t a = 0; a < evens.size(); ++a)
        for (std::size_t b = a + 1; b < evens.size(); ++b)
            for (std::size_t v = 0; v < dim; ++v) {
                auto ab = rep.ops[evens[b]].cols[v]
                              ? rep.ops[evens[a]].apply(*rep.ops[evens[b]].cols[v], d)
                              : std::nullopt;
                auto ba = rep.ops[evens[a]].cols[v]
                              ? rep.ops[evens[b]].apply(*rep.ops[evens[a]].cols[v], d)
                              : std::nullopt;
                if (!ab || !ba) {
                    ++out.skipped;
                    continue;
                }
                ++out.checked;
                if (*ab != *ba) {
                    if (out.pass) {
                        out.witness = {evens[a], evens[b]};
                        out.detail = "even images do not commute";
                    }
                    out.pass = false;
                }
            }
    return out;
}

ExtendResult extend_to_ga(const Representation& rep, const BridgeResult& bridge) {
    const auto& pres = bridge.presentation;
    long d = rep.carrier.field_d;
    ExtendResult out;

    auto pair_op = [&](std::size_t oi, std::size_t oj) {
        const auto& a = rep.ops[pres.odd[oi]];
        const auto& b = rep.ops[pres.odd[oj]];
        PartialOp ab = PartialOp::compose(a, b, d);
        PartialOp ba = PartialOp::compose(b, a, d);
        PartialOp sum;
        sum.parity = Parity::Even;
        sum.cols.resize(ab.cols.size());
        for (std::size_t v = 0; v < ab.cols.size(); ++v)
            sum.cols[v] = add_opt(ab.cols[v], ba.cols[v], 1);
        return sum;
    };

    Representation ext;
    ext.algebra = bridge.superalgebra;
    ext.carrier = rep.carrier;
    for (auto r : pres.rep_gens) {
        auto [i, j] = pres.gens[r];
        ext.ops.push_back(pair_op(i, j));
    }
    for (auto o : pres.odd) ext.ops.push_back(rep.ops[o]);

    // relators act as zero (on fully defined columns)
    out.well_defined = true;
    for (const auto& row : pres.relators.basis()) {
        PartialOp acc = PartialOp::zero(Parity::Even, rep.carrier.dim());
        for (std::size_t g = 0; g < pres.gens.size(); ++g) {
            if (row[g].is_zero()) continue;
            auto [i, j] = pres.gens[g];
            PartialOp op = pair_op(i, j);
            for (std::size_t v = 0; v < acc.cols.size(); ++v) {
                if (!acc.cols[v] || !op.cols[v]) {
                    acc.cols[v] = std::nullopt;
                    continue;
                }
                for (std::size_t r = 0; r < acc.cols.size(); ++r)
                    (*acc.cols[v])[r] += (*op.cols[v])[r] * row[g];
            }
        }
        for (const auto& col : acc.cols) {
            if (!col) {
                ++out.skipped;
                continue;
            }
            ++out.checked;
            for (const auto& c : *col)
                if (!c.is_zero()) out.well_defined = false;
        }
    }

    // bracket homomorphism: chi_{[u,v]} = chi_u chi_v - (-1)^{p(u)p(v)} chi_v chi_u
    const auto& g = bridge.superalgebra;
    out.bracket_homomorphism = true;
    for (std::size_t u = 0; u < g.dim(); ++u)
        for (std::size_t v = 0; v < g.dim(); ++v) {
            Vec br = *g.product(g.basis_vector(u), g.basis_vector(v));
            int sign = (static_cast<int>(g.parities[u]) * static_cast<int>(g.parities[v])) % 2
                           ? -1
                           : 1;
            PartialOp uv = PartialOp::compose(ext.ops[u], ext.ops[v], d);
            PartialOp vu = PartialOp::compose(ext.ops[v], ext.ops[u], d);
            for (std::size_t w = 0; w < rep.carrier.dim(); ++w) {
                std::optional<Vec> lhs = Vec(rep.carrier.dim(), Scalar::zero(d));
                for (std::size_t k = 0; k < g.dim(); ++k) {
                    if (br[k].is_zero()) continue;
                    if (!ext.ops[k].cols[w]) {
                        lhs = std::nullopt;
                        break;
                    }
                    for (std::size_t r = 0; r < lhs->size(); ++r)
                        (*lhs)[r] += (*ext.ops[k].cols[w])[r] * br[k];
                }
                auto rhs = add_opt(uv.cols[w], vu.cols[w], -sign);
                if (!lhs || !rhs) {
                    ++out.skipped;
                    continue;
                }
                ++out.checked;
                if (*lhs != *rhs) out.bracket_homomorphism = false;
            }
        }
    out.rep = std::move(ext);
    return out;
}

CasimirResult casimir(const Representation& rep) {
    const auto& g = rep.algebra;
    if (!g.bracket) throw std::invalid_argument("casimir needs a bracket algebra");
    if (g.windowed()) throw WindowedInput("casimir needs a total bracket algebra");
    long d = g.field_d;
    RatField f{d};
    std::size_t n = g.dim();

    // invariant supersymmetric even form: unknowns B(i,j) on even pairs i <= j
    // and odd pairs i < j (skew); condition
    //   B([x,y],z) + (-1)^{p(x)p(y)} B(y,[x,z]) = 0
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            if (g.parities[i] != g.parities[j]) continue;
            if (i == j && g.parities[i] == Parity::Odd) continue;
            slots.push_back({i, j});
        }
    auto slot_coeff = [&](std::size_t i, std::size_t j) -> std::pair<long, Scalar> {
        // returns (slot, multiplier) of B(e_i, e_j)
        if (g.parities[i] != g.parities[j]) return {-1, Scalar(0)};
        bool odd = g.parities[i] == Parity::Odd;
        if (odd && i == j) return {-1, Scalar(0)};
        std::size_t a = std::min(i, j), b = std::max(i, j);
        for (std::size_t s = 0; s < slots.size(); ++s)
            if (slots[s] == std::make_pair(a, b))
                return {static_cast<long>(s), (odd && i > j) ? Scalar(-1) : Scalar(1)};
        return {-1, Scalar(0)};
    };

    std::vector<Vec> rows;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                Vec row(slots.size(), Scalar::zero(d));
                Vec xy = *g.product(g.basis_vector(x), g.basis_vector(y));
                Vec xz = *g.product(g.basis_vector(x), g.basis_vector(z));
                int sign = (static_cast<int>(g.parities[x]) * static_cast<int>(g.parities[y])) % 2
                               ? -1
                               : 1;
                bool nonzero = false;
                for (std::size_t k = 0; k < n; ++k) {
                    if (!xy[k].is_zero()) {
                        auto [s, mul] = slot_coeff(k, z);
                        if (s >= 0) {
                            row[s] += xy[k] * mul;
                            nonzero = true;
                        }
                    }
                    if (!xz[k].is_zero()) {
                        auto [s, mul] = slot_coeff(y, k);
                        if (s >= 0) {
                            row[s] += xz[k] * mul * Scalar(sign);
                            nonzero = true;
                        }
                    }
                }
                if (nonzero) rows.push_back(std::move(row));
            }
    Mat<RatField> sys(std::max<std::size_t>(rows.size(), 1), slots.size(), f);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < slots.size(); ++c) sys.at(r, c) = rows[r][c];
    auto rr = rref_rank_nullspace(f, std::move(sys));
    if (rr.nullspace.empty()) throw NoInvariantForm("no invariant bilinear form");

    // first nondegenerate solution in the canonical nullspace order
    auto form_of = [&](const Vec& sol) {
        Mat<RatField> b(n, n, f);
        for (std::size_t s = 0; s < slots.size(); ++s) {
            auto [i, j] = slots[s];
            b.at(i, j) = sol[s];
            if (i != j) b.at(j, i) = g.parities[i] == Parity::Odd ? -sol[s] : sol[s];
        }
        return b;
    };
    std::optional<Mat<RatField>> form;
    for (const auto& sol : rr.nullspace) {
        auto b = form_of(sol);
        if (rref_rank_nullspace(f, b).rank == n) {
            form = b;
            break;
        }
    }
    if (!form) throw DegenerateForm("no nondegenerate invariant form in the solution space");

    // inverse form
    Mat<RatField> aug(n, 2 * n, f);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = form->at(i, j);
        aug.at(i, n + i) = f.one();
    }
    auto inv_r = rref_rank_nullspace(f, std::move(aug));
    Mat<RatField> binv(n, n, f);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) binv.at(i, j) = inv_r.rref.at(i, n + j);

    // C = sum_{ij} (B^{-1})_{ij} chi_i chi_j
    CasimirResult out;
    out.form = *form;
    PartialOp acc;
    acc.parity = Parity::Even;
    acc.cols.assign(rep.carrier.dim(), Vec(rep.carrier.dim(), Scalar::zero(d)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (f.is_zero(binv.at(i, j))) continue;
            PartialOp comp = PartialOp::compose(rep.ops[i], rep.ops[j], rep.carrier.field_d);
            for (std::size_t v = 0; v < acc.cols.size(); ++v) {
                if (!acc.cols[v]) continue;
                if (!comp.cols[v]) {
                    acc.cols[v] = std::nullopt;
                    continue;
                }
                for (std::size_t r = 0; r < acc.cols.size(); ++r)
                    (*acc.cols[v])[r] += (*comp.cols[v])[r] * binv.at(i, j);
            }
        }
    out.op = acc;
    for (const auto& col : acc.cols) {
        if (!col) continue;
        ++out.interior;
        for (const auto& c : *col)
            if (!c.is_zero()) out.zero_on_interior = false;
    }
    // C commutes with the action on fully defined instances
    for (std::size_t k = 0; k < n; ++k) {
        PartialOp ck = PartialOp::compose(acc, rep.ops[k], rep.carrier.field_d);
        PartialOp kc = PartialOp::compose(rep.ops[k], acc, rep.carrier.field_d);
        for (std::size_t v = 0; v < ck.cols.size(); ++v) {
            if (!ck.cols[v] || !kc.cols[v]) continue;
            if (*ck.cols[v] != *kc.cols[v]) out.commutes_with_action = false;
        }
    }
    return out;
}

K3RelReport k3_rep_relations(const Representation& rep) {
    const auto& alg = rep.algebra;
    auto [p, q] = alg.graded_dims();
    if (p != 1 || q != 2)
        throw std::invalid_argument("expected an algebra with dims 1|2 and basis (eps; a, b)");
    long d = rep.carrier.field_d;
    std::size_t e = alg.even_indices()[0];
    std::size_t a = alg.odd_indices()[0], b = alg.odd_indices()[1];
    const PartialOp &E = rep.ops[e], &A = rep.ops[a], &B = rep.ops[b];
    K3RelReport out;

    auto check_pair = [&](const PartialOp& lhs1, const PartialOp& lhs2, int sign,
                          const PartialOp* target, bool* flag) {
        for (std::size_t v = 0; v < rep.carrier.dim(); ++v) {
            auto l = add_opt(lhs1.cols[v], lhs2.cols[v], sign);
            std::optional<Vec> r;
            if (target) {
                r = target->cols[v];
            } else {
                r = Vec(rep.carrier.dim(), Scalar::zero(d));
            }
            if (!l || !r) {
                ++out.skipped;
                continue;
            }
            ++out.checked;
            if (*l != *r) *flag = false;
        }
    };

    PartialOp AB = PartialOp::compose(A, B, d), BA = PartialOp::compose(B, A, d);
    PartialOp AE = PartialOp::compose(A, E, d), EA = PartialOp::compose(E, A, d);
    PartialOp BE = PartialOp::compose(B, E, d), EB = PartialOp::compose(E, B, d);
    PartialOp EE = PartialOp::compose(E, E, d);
    check_pair(AB, BA, -1, &E, &out.relations_hold);   // AB - BA = E
    check_pair(AE, EA, 1, &A, &out.relations_hold);    // AE + EA = A
    check_pair(BE, EB, 1, &B, &out.relations_hold);    // BE + EB = B
    {
        // E^2 = E
        for (std::size_t v = 0; v < rep.carrier.dim(); ++v) {
            if (!EE.cols[v] || !E.cols[v]) {
                ++out.skipped;
                continue;
            }
            ++out.checked;
            if (*EE.cols[v] != *E.cols[v]) out.relations_hold = false;
        }
    }
    // E acts as 0 on the even carrier part and as the identity on the odd part
    for (std::size_t v = 0; v < rep.carrier.dim(); ++v) {
        if (!E.cols[v]) {
            ++out.skipped;
            continue;
        }
        Vec expect(rep.carrier.dim(), Scalar::zero(d));
        if (rep.carrier.parities[v] == Parity::Odd) expect[v] = Scalar::one(d);
        ++out.checked;
        if (*E.cols[v] != expect) out.e_is_parity_projector = false;
    }
    return out;
}

// --- density windows ------------------------------------------------------------

namespace {

struct DensityIndex {
    std::map<long, std::size_t> f_of, phi_of; // f by m, phi by 2i
    Carrier carrier;
};

DensityIndex density_carrier(long N, long field_d) {
    DensityIndex ix;
    ix.carrier.field_d = field_d;
    for (long m = -2 * N; m <= 2 * N; ++m) {
        ix.f_of[m] = ix.carrier.labels.size();
        ix.carrier.labels.push_back("f_" + std::to_string(m));
        ix.carrier.parities.push_back(Parity::Even);
    }
    for (long t = -(2 * N - 1); t <= 2 * N - 1; t += 2) {
        ix.phi_of[t] = ix.carrier.labels.size();
        ix.carrier.labels.push_back("phi_" + std::to_string(t));
        ix.carrier.parities.push_back(Parity::Odd);
    }
    return ix;
}

Vec unit_vec(std::size_t dim, std::size_t at, const Scalar& c, long d) {
    Vec v(dim, Scalar::zero(d));
    v[at] = c;
    return v;
}

} // namespace

DensityPair density_rep(const mpq_class& lambda, long N) {
    if (N < 1) throw std::invalid_argument("density window needs N >= 1");
    long d = 0;
    Scalar lam(mpq_class(lambda), 0);
    auto ix = density_carrier(N, d);
    std::size_t dim = ix.carrier.dim();

    GradedAlgebra kk1 = builtin("kk1", {.N = N});
    GradedAlgebra ak1 = builtin("ak1", {.N = N});

    auto op_for = [&](Parity p) {
        PartialOp op;
        op.parity = p;
        op.cols.assign(dim, std::nullopt);
        return op;
    };

    Representation k1rep;
    k1rep.algebra = kk1;
    k1rep.carrier = ix.carrier;
    for (std::size_t b = 0; b < kk1.dim(); ++b) {
        const auto& label = kk1.labels[b];
        auto us = label.rfind('_');
        long idx = std::stol(label.substr(us + 1));
        if (label.substr(0, us) == "x") {
            PartialOp op = op_for(Parity::Even);
            long n = idx;
            for (auto [m, pos] : ix.f_of)
                if (ix.f_of.count(m + n))
                    op.cols[pos] = unit_vec(dim, ix.f_of[m + n], Scalar(m) + lam * Scalar(n), d);
            for (auto [t, pos] : ix.phi_of)
                if (ix.phi_of.count(t + 2 * n))
                    // i + (lambda + 1/2) n with t = 2i
                    op.cols[pos] = unit_vec(dim, ix.phi_of[t + 2 * n],
                                            Scalar(t, 2) + (lam + Scalar(1, 2)) * Scalar(n), d);
            k1rep.ops.push_back(std::move(op));
        } else {
            PartialOp op = op_for(Parity::Odd);
            long t = idx; // 2i
            for (auto [m, pos] : ix.f_of)
                if (ix.phi_of.count(2 * m + t))
                    // n/2 + lambda i
                    op.cols[pos] = unit_vec(dim, ix.phi_of[2 * m + t],
                                            Scalar(m, 2) + lam * Scalar(t, 2), d);
            for (auto [s, pos] : ix.phi_of)
                if (ix.f_of.count((s + t) / 2))
                    op.cols[pos] = unit_vec(dim, ix.f_of[(s + t) / 2], Scalar::one(d), d);
            k1rep.ops.push_back(std::move(op));
        }
    }

    Representation akrep;
    akrep.algebra = ak1;
    akrep.carrier = ix.carrier;
    for (std::size_t b = 0; b < ak1.dim(); ++b) {
        const auto& label = ak1.labels[b];
        auto us = label.rfind('_');
        long idx = std::stol(label.substr(us + 1));
        if (label.substr(0, us) == "eps") {
            // eps_n: f_m -> lambda f_{n+m}, phi -> (1/2 - lambda) phi_{n+.}
            PartialOp op = op_for(Parity::Even);
            long n = idx;
            for (auto [m, pos] : ix.f_of)
                if (ix.f_of.count(m + n)) op.cols[pos] = unit_vec(dim, ix.f_of[m + n], lam, d);
            for (auto [t, pos] : ix.phi_of)
                if (ix.phi_of.count(t + 2 * n))
                    op.cols[pos] =
                        unit_vec(dim, ix.phi_of[t + 2 * n], Scalar(1, 2) - lam, d);
            akrep.ops.push_back(std::move(op));
        } else {
            // a_i acts as the xi_i density operator
            long off = kk1.label_index("xi_" + std::to_string(idx));
            akrep.ops.push_back(k1rep.ops[off]);
        }
    }
    return {std::move(k1rep), std::move(akrep)};
}

Representation make_tangent_representation(long N) {
    if (N < 1) throw std::invalid_argument("tangent window needs N >= 1");
    long d = 0;
    auto r11 = ring_k11();
    GradedAlgebra ak1 = builtin("ak1", {.N = N});

    // carrier: x^m (even), xi x^m (odd), |m| <= 2N
    Carrier carrier;
    carrier.field_d = d;
    std::map<long, std::size_t> f_of, phi_of;
    for (long m = -2 * N; m <= 2 * N; ++m) {
        f_of[m] = carrier.labels.size();
        carrier.labels.push_back("x^" + std::to_string(m));
        carrier.parities.push_back(Parity::Even);
    }
    for (long m = -2 * N; m <= 2 * N; ++m) {
        phi_of[m] = carrier.labels.size();
        carrier.labels.push_back("xi*x^" + std::to_string(m));
        carrier.parities.push_back(Parity::Odd);
    }
    std::size_t dim = carrier.dim();

    auto fun_of = [&](std::size_t pos) {
        for (auto [m, p] : f_of)
            if (p == pos) return GrassmannPoly::var_even(r11, 0, m);
        for (auto [m, p] : phi_of)
            if (p == pos) return GrassmannPoly::var_odd(r11, 0) * GrassmannPoly::var_even(r11, 0, m);
        throw std::logic_error("bad carrier position");
    };
    auto expand = [&](const GrassmannPoly& g) -> std::optional<Vec> {
        Vec out(dim, Scalar::zero(d));
        for (const auto& [mono, c] : g.terms()) {
            long m = mono.exp[0];
            if (mono.mask) {
                auto it = phi_of.find(m);
                if (it == phi_of.end()) return std::nullopt;
                out[it->second] += c;
            } else {
                auto it = f_of.find(m);
                if (it == f_of.end()) return std::nullopt;
                out[it->second] += c;
            }
        }
        return out;
    };

    Representation rep;
    rep.algebra = ak1;
    rep.carrier = carrier;
    for (std::size_t b = 0; b < ak1.dim(); ++b) {
        const auto& label = ak1.labels[b];
        auto us = label.rfind('_');
        long idx = std::stol(label.substr(us + 1));
        GrassmannPoly f(r11);
        Parity p;
        if (label.substr(0, us) == "eps") { // eps_n -> xi x^n
            f = GrassmannPoly::var_odd(r11, 0) * GrassmannPoly::var_even(r11, 0, idx);
            p = Parity::Even;
        } else { // a_{2i} -> x^{i + 1/2}
            f = GrassmannPoly::var_even(r11, 0, (idx + 1) / 2);
            p = Parity::Odd;
        }
        auto chi = contact_tangent(f);
        PartialOp op;
        op.parity = p;
        op.cols.resize(dim);
        for (std::size_t v = 0; v < dim; ++v) op.cols[v] = expand(chi.apply(fun_of(v)));
        rep.ops.push_back(std::move(op));
    }
    return rep;
}

// --- modules ----------------------------------------------------------------------

GradedAlgebra build_semidirect(const ModuleAction& action, bool koszul_sign) {
    const auto& alg = action.algebra;
    if (alg.windowed()) throw WindowedInput("semidirect product needs a total algebra");
    for (const auto& op : action.rho)
        if (!op.total()) throw std::invalid_argument("module action must be total");
    long d = alg.field_d;
    GradedAlgebra out;
    out.name = alg.name + "|x";
    out.field_d = d;
    out.labels = alg.labels;
    out.parities = alg.parities;
    for (std::size_t v = 0; v < action.carrier.dim(); ++v) {
        out.labels.push_back("v:" + action.carrier.labels[v]);
        out.parities.push_back(action.carrier.parities[v]);
    }
    for (const auto& [k, terms] : alg.table) out.table[k] = terms;
    std::size_t na = alg.dim();
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t v = 0; v < action.carrier.dim(); ++v) {
            Vec img = *action.rho[i].cols[v];
            std::vector<Term> terms;
            for (std::size_t r = 0; r < img.size(); ++r) {
                if (img[r].is_zero()) continue;
                Scalar c = img[r];
                if (!koszul_sign) {
                    // stored value chosen so that the product in the other order
                    // comes out without the Koszul sign
                    int s = (static_cast<int>(alg.parities[i]) *
                             static_cast<int>(action.carrier.parities[v])) %
                            2;
                    if (s) c = -c;
                }
                terms.push_back({na + r, c});
            }
            if (!terms.empty()) out.table[{i, na + v}] = terms;
        }
    out.validate();
    return out;
}

ModuleCheck check_module(const ModuleAction& action, bool koszul_sign) {
    ModuleCheck out;
    out.semidirect_report = check_antialgebra(build_semidirect(action, koszul_sign));
    out.pass = out.semidirect_report.overall_pass;
    return out;
}

ModuleAction adjoint_action(const GradedAlgebra& alg) {
    ModuleAction act;
    act.algebra = alg;
    act.carrier.field_d = alg.field_d;
    act.carrier.labels = alg.labels;
    act.carrier.parities = alg.parities;
    for (std::size_t i = 0; i < alg.dim(); ++i) {
        PartialOp op;
        op.parity = alg.parities[i];
        for (std::size_t j = 0; j < alg.dim(); ++j)
            op.cols.push_back(*alg.product(alg.basis_vector(i), alg.basis_vector(j)));
        act.rho.push_back(std::move(op));
    }
    return act;
}

ModuleAction coadjoint_action(const GradedAlgebra& alg) {
    // rho_x phi = (-1)^{p(x)p(phi)} ad*_x phi with <ad*_x phi, y> = <phi, x y>
    ModuleAction act;
    act.algebra = alg;
    act.carrier.field_d = alg.field_d;
    for (std::size_t i = 0; i < alg.dim(); ++i) {
        act.carrier.labels.push_back(alg.labels[i] + "*");
        act.carrier.parities.push_back(alg.parities[i]);
    }
    for (std::size_t i = 0; i < alg.dim(); ++i) {
        PartialOp op;
        op.parity = alg.parities[i];
        op.cols.resize(alg.dim());
        for (std::size_t k = 0; k < alg.dim(); ++k) {
            // column: image of phi_k; (rho_x phi_k)(e_j) = sign phi_k(x e_j)
            Vec col(alg.dim(), Scalar::zero(alg.field_d));
            for (std::size_t j = 0; j < alg.dim(); ++j) {
                Vec prod = *alg.product(alg.basis_vector(i), alg.basis_vector(j));
                int s = (static_cast<int>(alg.parities[i]) *
                         static_cast<int>(alg.parities[k])) %
                        2;
                col[j] = s ? -prod[k] : prod[k];
            }
            op.cols[k] = col;
        }
        act.rho.push_back(std::move(op));
    }
    return act;
}

Representation adjoint_representation(const GradedAlgebra& bracket_alg) {
    if (!bracket_alg.bracket) throw std::invalid_argument("expected a bracket table");
    Representation rep;
    rep.algebra = bracket_alg;
    rep.carrier.field_d = bracket_alg.field_d;
    rep.carrier.labels = bracket_alg.labels;
    rep.carrier.parities = bracket_alg.parities;
    for (std::size_t i = 0; i < bracket_alg.dim(); ++i) {
        PartialOp op;
        op.parity = bracket_alg.parities[i];
        for (std::size_t j = 0; j < bracket_alg.dim(); ++j)
            op.cols.push_back(
                *bracket_alg.product(bracket_alg.basis_vector(i), bracket_alg.basis_vector(j)));
        rep.ops.push_back(std::move(op));
    }
    return rep;
}

// --- JSON ----------------------------------------------------------------------------

nlohmann::json representation_to_json(const Representation& rep) {
    nlohmann::json j;
    j["algebra"] = algebra_to_json(rep.algebra);
    auto [p, q] = rep.carrier.graded_dims();
    j["carrier"] = {{"dims", {p, q}}};
    j["operators"] = nlohmann::json::array();
    for (std::size_t b = 0; b < rep.ops.size(); ++b) {
        nlohmann::json op;
        op["basis"] = rep.algebra.labels[b];
        nlohmann::json rows = nlohmann::json::array();
        // emitted row-major; undefined columns are not representable, so only
        // total operators serialize
        if (!rep.ops[b].total()) throw std::invalid_argument("cannot serialize a partial operator");
        for (std::size_t r = 0; r < rep.carrier.dim(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t c = 0; c < rep.carrier.dim(); ++c)
                row.push_back((*rep.ops[b].cols[c])[r].str());
            rows.push_back(row);
        }
        op["matrix"] = rows;
        j["operators"].push_back(op);
    }
    return j;
}

Representation representation_from_json(const nlohmann::json& j) {
    Representation rep;
    try {
        rep.algebra = algebra_from_json(j.at("algebra"));
        auto dims = j.at("carrier").at("dims");
        std::size_t p = dims.at(0).get<std::size_t>(), q = dims.at(1).get<std::size_t>();
        rep.carrier.field_d = rep.algebra.field_d;
        for (std::size_t i = 0; i < p; ++i) {
            rep.carrier.labels.push_back("v_" + std::to_string(i));
            rep.carrier.parities.push_back(Parity::Even);
        }
        for (std::size_t i = 0; i < q; ++i) {
            rep.carrier.labels.push_back("w_" + std::to_string(i));
            rep.carrier.parities.push_back(Parity::Odd);
        }
        std::size_t dim = p + q;
        rep.ops.assign(rep.algebra.dim(), PartialOp{});
        std::vector<bool> seen(rep.algebra.dim(), false);
        for (const auto& op : j.at("operators")) {
            long b = rep.algebra.label_index(op.at("basis").get<std::string>());
            if (b < 0) throw ParseError("operator for an unknown basis label");
            PartialOp po;
            po.parity = rep.algebra.parities[b];
            po.cols.assign(dim, Vec(dim, Scalar::zero(rep.algebra.field_d)));
            const auto& m = op.at("matrix");
            if (m.size() != dim) throw ParseError("operator matrix has wrong shape");
            for (std::size_t r = 0; r < dim; ++r) {
                if (m.at(r).size() != dim) throw ParseError("operator matrix has wrong shape");
                for (std::size_t c = 0; c < dim; ++c)
                    (*po.cols[c])[r] =
                        Scalar::parse(m.at(r).at(c).get<std::string>(), rep.algebra.field_d);
            }
            rep.ops[b] = std::move(po);
            seen[b] = true;
        }
        for (std::size_t b = 0; b < rep.algebra.dim(); ++b)
            if (!seen[b]) {
                rep.ops[b].parity = rep.algebra.parities[b];
                rep.ops[b].cols.assign(dim, Vec(dim, Scalar::zero(rep.algebra.field_d)));
            }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad representation JSON: ") + e.what());
    }
    return rep;
}

} // namespace anti
