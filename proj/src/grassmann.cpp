#include "anti/grassmann.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace anti {

RingPtr make_ring(std::vector<std::string> even_names, std::vector<std::string> odd_names,
                  long field_d) {
    if (odd_names.size() > 32) throw std::invalid_argument("at most 32 odd variables");
    auto r = std::make_shared<PolyRing>();
    r->even_names = std::move(even_names);
    r->odd_names = std::move(odd_names);
    r->field_d = field_d;
    return r;
}

namespace conv {
// sign-convention knobs, frozen by the calibration battery in the tests
int mixed_swap = 0;  // wedge swap exponent: 0: 1 + pu pv, 1: (pu+1)(pv+1)
int coeff_move = 0;  // moving a coefficient past a dir block: pm*(pa + coeff_move*k)
int lie_twist = 0;   // Leibniz twist: px*(pa + lie_twist)
int alpha[6] = {1, 0, 0, 1, 0, 0}; // contraction exponents, see pairing_sign
int odd_prefactor = 0;             // odd bracket prefactor: (-1)^{(pF + odd_prefactor) * (1 - const_half)} / 2
int const_half = 0;                // 1: odd bracket prefactor is 1/2 regardless of parity
} // namespace conv

namespace {
void require_same_ring(const RingPtr& a, const RingPtr& b) {
    if (!a || !b || !(*a == *b)) throw std::invalid_argument("polynomials from different rings");
}
int popcount_below(std::uint32_t mask, std::size_t j) {
    return std::popcount(mask & ((1u << j) - 1u));
}
// exponent of the sign picked up when swapping adjacent wedge slots
int wedge_swap_exp(int pu, int pv) {
    return conv::mixed_swap ? (pu + 1) * (pv + 1) : 1 + pu * pv;
}
} // namespace

void GrassmannPoly::add_term(Mono m, Scalar c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(std::move(m), std::move(c));
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

GrassmannPoly GrassmannPoly::constant(RingPtr ring, const Scalar& c) {
    GrassmannPoly p(std::move(ring));
    Mono m;
    m.exp.assign(p.ring_->even_names.size(), 0);
    p.add_term(std::move(m), c);
    return p;
}

GrassmannPoly GrassmannPoly::var_even(RingPtr ring, std::size_t i, long exp) {
    GrassmannPoly p(std::move(ring));
    if (i >= p.ring_->even_names.size()) throw std::invalid_argument("even variable out of range");
    Mono m;
    m.exp.assign(p.ring_->even_names.size(), 0);
    m.exp[i] = exp;
    p.add_term(std::move(m), Scalar::one(p.ring_->field_d));
    return p;
}

GrassmannPoly GrassmannPoly::var_odd(RingPtr ring, std::size_t j) {
    GrassmannPoly p(std::move(ring));
    if (j >= p.ring_->odd_names.size()) throw std::invalid_argument("odd variable out of range");
    Mono m;
    m.exp.assign(p.ring_->even_names.size(), 0);
    m.mask = 1u << j;
    p.add_term(std::move(m), Scalar::one(p.ring_->field_d));
    return p;
}

GrassmannPoly GrassmannPoly::monomial(RingPtr ring, Mono m, const Scalar& c) {
    GrassmannPoly p(std::move(ring));
    if (m.exp.size() != p.ring_->even_names.size())
        throw std::invalid_argument("monomial exponent size mismatch");
    p.add_term(std::move(m), c);
    return p;
}

GrassmannPoly GrassmannPoly::operator+(const GrassmannPoly& o) const {
    require_same_ring(ring_, o.ring_);
    GrassmannPoly out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

GrassmannPoly GrassmannPoly::operator-(const GrassmannPoly& o) const {
    require_same_ring(ring_, o.ring_);
    GrassmannPoly out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, -c);
    return out;
}

GrassmannPoly GrassmannPoly::operator-() const {
    GrassmannPoly out(ring_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

GrassmannPoly GrassmannPoly::scaled(const Scalar& c) const {
    GrassmannPoly out(ring_);
    if (c.is_zero()) return out;
    for (const auto& [m, k] : terms_) out.terms_.emplace(m, k * c);
    return out;
}

GrassmannPoly GrassmannPoly::operator*(const GrassmannPoly& o) const {
    require_same_ring(ring_, o.ring_);
    GrassmannPoly out(ring_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            if (ma.mask & mb.mask) continue; // tau^2 = 0
            // Koszul sign: move each odd var of mb past the odd vars of ma above it
            int inversions = 0;
            for (std::size_t j = 0; j < ring_->odd_names.size(); ++j)
                if (mb.mask & (1u << j))
                    inversions += std::popcount(ma.mask >> (j + 1));
            Mono m;
            m.exp.resize(ma.exp.size());
            for (std::size_t i = 0; i < ma.exp.size(); ++i) m.exp[i] = ma.exp[i] + mb.exp[i];
            m.mask = ma.mask | mb.mask;
            Scalar c = ca * cb;
            if (inversions & 1) c = -c;
            out.add_term(std::move(m), std::move(c));
        }
    return out;
}

bool GrassmannPoly::operator==(const GrassmannPoly& o) const {
    require_same_ring(ring_, o.ring_);
    return terms_ == o.terms_;
}

GrassmannPoly GrassmannPoly::partial_even(std::size_t i) const {
    GrassmannPoly out(ring_);
    for (const auto& [m, c] : terms_) {
        if (m.exp[i] == 0) continue;
        Mono n = m;
        Scalar k = c * Scalar(m.exp[i]);
        n.exp[i] -= 1;
        out.add_term(std::move(n), std::move(k));
    }
    return out;
}

GrassmannPoly GrassmannPoly::partial_odd(std::size_t j) const {
    GrassmannPoly out(ring_);
    for (const auto& [m, c] : terms_) {
        if (!(m.mask & (1u << j))) continue;
        Mono n = m;
        n.mask &= ~(1u << j);
        Scalar k = c;
        if (popcount_below(m.mask, j) & 1) k = -k;
        out.add_term(std::move(n), std::move(k));
    }
    return out;
}

GrassmannPoly GrassmannPoly::partial(int dir) const {
    std::size_t ne = ring_->even_names.size();
    if (dir < static_cast<int>(ne)) return partial_even(dir);
    return partial_odd(dir - ne);
}

std::optional<Parity> GrassmannPoly::parity_opt() const {
    if (terms_.empty()) return Parity::Even;
    std::optional<Parity> p;
    for (const auto& [m, c] : terms_) {
        Parity q = (std::popcount(m.mask) & 1) ? Parity::Odd : Parity::Even;
        if (!p)
            p = q;
        else if (*p != q)
            return std::nullopt;
    }
    return p;
}

Parity GrassmannPoly::parity() const {
    auto p = parity_opt();
    if (!p) throw std::invalid_argument("polynomial is not parity-homogeneous");
    return *p;
}

GrassmannPoly GrassmannPoly::substitute_linear(RingPtr target, const std::vector<Vec>& even_rows,
                                               const std::vector<Vec>& odd_rows) const {
    if (even_rows.size() != ring_->even_names.size() ||
        odd_rows.size() != ring_->odd_names.size())
        throw std::invalid_argument("substitution row count mismatch");
    long d = target->field_d;
    GrassmannPoly out(target);
    for (const auto& [m, c] : terms_) {
        GrassmannPoly acc = GrassmannPoly::constant(target, c);
        for (std::size_t i = 0; i < m.exp.size(); ++i) {
            if (m.exp[i] == 0) continue;
            GrassmannPoly sub(target);
            for (std::size_t k = 0; k < even_rows[i].size(); ++k)
                if (!even_rows[i][k].is_zero())
                    sub = sub + GrassmannPoly::var_even(target, k).scaled(even_rows[i][k]);
            if (m.exp[i] < 0) {
                // negative exponents only through unit-monomial substitutions
                std::size_t nz = 0, at = 0;
                for (std::size_t k = 0; k < even_rows[i].size(); ++k)
                    if (!even_rows[i][k].is_zero()) {
                        ++nz;
                        at = k;
                    }
                if (nz != 1)
                    throw std::invalid_argument("Laurent exponent under a non-monomial substitution");
                Scalar coef = even_rows[i][at];
                GrassmannPoly pw = GrassmannPoly::var_even(target, at, m.exp[i]);
                Scalar cpow = Scalar::one(d);
                for (long t = 0; t < -m.exp[i]; ++t) cpow = cpow / coef;
                acc = acc * pw.scaled(cpow);
                continue;
            }
            for (long t = 0; t < m.exp[i]; ++t) acc = acc * sub;
        }
        for (std::size_t j = 0; j < ring_->odd_names.size(); ++j) {
            if (!(m.mask & (1u << j))) continue;
            GrassmannPoly sub(target);
            for (std::size_t k = 0; k < odd_rows[j].size(); ++k)
                if (!odd_rows[j][k].is_zero())
                    sub = sub + GrassmannPoly::var_odd(target, k).scaled(odd_rows[j][k]);
            acc = acc * sub;
        }
        out = out + acc;
    }
    return out;
}

std::string GrassmannPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        for (std::size_t i = 0; i < m.exp.size(); ++i)
            if (m.exp[i] != 0) {
                os << "*" << ring_->even_names[i];
                if (m.exp[i] != 1) os << "^" << m.exp[i];
            }
        for (std::size_t j = 0; j < ring_->odd_names.size(); ++j)
            if (m.mask & (1u << j)) os << "*" << ring_->odd_names[j];
    }
    return os.str();
}

// --- PolyVectorField -----------------------------------------------------------

int PolyVectorField::dir_parity(int dir) const {
    return dir < static_cast<int>(ring_->even_names.size()) ? 0 : 1;
}

PolyVectorField PolyVectorField::single(RingPtr ring, GrassmannPoly coeff, std::vector<int> dirs) {
    PolyVectorField f(ring, static_cast<int>(dirs.size()));
    f.add(std::move(coeff), std::move(dirs));
    return f;
}

void PolyVectorField::add(GrassmannPoly coeff, std::vector<int> dirs) {
    if (static_cast<int>(dirs.size()) != degree_)
        throw std::invalid_argument("wedge degree mismatch");
    if (coeff.is_zero()) return;
    // canonicalize by adjacent swaps with the wedge symmetry sign
    bool negate = false;
    for (std::size_t pass = 0; pass + 1 < dirs.size(); ++pass)
        for (std::size_t i = 0; i + 1 < dirs.size(); ++i) {
            if (dirs[i] > dirs[i + 1]) {
                int pu = dir_parity(dirs[i]), pv = dir_parity(dirs[i + 1]);
                if (wedge_swap_exp(pu, pv) & 1) negate = !negate;
                std::swap(dirs[i], dirs[i + 1]);
            }
        }
    for (std::size_t i = 0; i + 1 < dirs.size(); ++i)
        if (dirs[i] == dirs[i + 1] && dir_parity(dirs[i]) == 0) return; // even repeat: zero
    if (negate) coeff = -coeff;
    auto it = terms_.find(dirs);
    if (it == terms_.end()) {
        terms_.emplace(std::move(dirs), std::move(coeff));
    } else {
        it->second = it->second + coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

PolyVectorField PolyVectorField::operator+(const PolyVectorField& o) const {
    require_same_ring(ring_, o.ring_);
    if (degree_ != o.degree_) throw std::invalid_argument("degree mismatch");
    PolyVectorField out = *this;
    for (const auto& [d, c] : o.terms_) out.add(c, d);
    return out;
}

PolyVectorField PolyVectorField::operator-(const PolyVectorField& o) const {
    require_same_ring(ring_, o.ring_);
    if (degree_ != o.degree_) throw std::invalid_argument("degree mismatch");
    PolyVectorField out = *this;
    for (const auto& [d, c] : o.terms_) out.add(-c, d);
    return out;
}

PolyVectorField PolyVectorField::scaled(const Scalar& c) const {
    PolyVectorField out(ring_, degree_);
    for (const auto& [d, k] : terms_) out.add(k.scaled(c), d);
    return out;
}

bool PolyVectorField::operator==(const PolyVectorField& o) const {
    require_same_ring(ring_, o.ring_);
    return degree_ == o.degree_ && terms_ == o.terms_;
}

Parity PolyVectorField::parity() const {
    std::optional<Parity> p;
    for (const auto& [dirs, c] : terms_) {
        int dp = 0;
        for (int d : dirs) dp += dir_parity(d);
        Parity q = c.parity() + static_cast<Parity>(dp & 1);
        if (!p)
            p = q;
        else if (*p != q)
            throw std::invalid_argument("vector field is not parity-homogeneous");
    }
    return p.value_or(Parity::Even);
}

GrassmannPoly PolyVectorField::apply(const GrassmannPoly& f) const {
    if (degree_ != 1) throw std::invalid_argument("apply needs a degree-1 field");
    require_same_ring(ring_, f.ring());
    GrassmannPoly out(ring_);
    for (const auto& [dirs, c] : terms_) out = out + c * f.partial(dirs[0]);
    return out;
}

std::string PolyVectorField::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    auto dir_name = [&](int d) {
        std::size_t ne = ring_->even_names.size();
        return d < static_cast<int>(ne) ? "d/d" + ring_->even_names[d]
                                        : "d/d" + ring_->odd_names[d - ne];
    };
    for (const auto& [dirs, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ") ";
        for (std::size_t i = 0; i < dirs.size(); ++i) {
            if (i) os << "^";
            os << dir_name(dirs[i]);
        }
    }
    return os.str();
}

PolyVectorField wedge(const PolyVectorField& a, const PolyVectorField& b) {
    require_same_ring(a.ring(), b.ring());
    PolyVectorField out(a.ring(), a.degree() + b.degree());
    for (const auto& [da, fa] : a.terms())
        for (const auto& [db, fb] : b.terms()) {
            // (fa DA) ^ (fb DB): move fb left across DA
            int pa = 0;
            for (int d : da) pa += out.dir_parity(d);
            pa += conv::coeff_move * static_cast<int>(da.size());
            // split fb by parity of its monomials
            for (const auto& [m, c] : fb.terms()) {
                int pm = std::popcount(m.mask) & 1;
                GrassmannPoly mono = GrassmannPoly::monomial(fb.ring(), m, c);
                GrassmannPoly coeff = fa * mono;
                if ((pa & 1) && pm) coeff = -coeff;
                std::vector<int> dirs = da;
                dirs.insert(dirs.end(), db.begin(), db.end());
                out.add(std::move(coeff), std::move(dirs));
            }
        }
    return out;
}

PolyVectorField vf_commutator(const PolyVectorField& x, const PolyVectorField& y,
                              CommutatorSign sign) {
    require_same_ring(x.ring(), y.ring());
    if (x.degree() != 1 || y.degree() != 1)
        throw std::invalid_argument("commutator needs degree-1 fields");
    int s;
    {
        int px = static_cast<int>(x.parity()), py = static_cast<int>(y.parity());
        int koszul = (px * py) & 1 ? -1 : 1;
        s = sign == CommutatorSign::Super ? -koszul : koszul;
    }
    PolyVectorField out(x.ring(), 1);
    // first-order parts
    for (const auto& [du, f] : x.terms())
        for (const auto& [dv, g] : y.terms()) {
            out.add(f * g.partial(du[0]), dv);
            GrassmannPoly t = g * f.partial(dv[0]);
            out.add(s == 1 ? t : -t, du);
        }
    // second-order residue must cancel
    std::map<std::pair<int, int>, GrassmannPoly> residue;
    auto put = [&](int u, int v, GrassmannPoly c) {
        int pu = out.dir_parity(u), pv = out.dir_parity(v);
        if (u > v) {
            std::swap(u, v);
            if ((pu * pv) & 1) c = -c; // d_u d_v = (-1)^{p p} d_v d_u as operators
        }
        if (u == v && out.dir_parity(u) == 1) return; // odd second derivative vanishes
        auto it = residue.find({u, v});
        if (it == residue.end())
            residue.emplace(std::make_pair(u, v), std::move(c));
        else
            it->second = it->second + c;
    };
    for (const auto& [du, f] : x.terms())
        for (const auto& [dv, g] : y.terms()) {
            int pu = out.dir_parity(du[0]), pv = out.dir_parity(dv[0]);
            for (const auto& [m, c] : g.terms()) {
                int pm = std::popcount(m.mask) & 1;
                GrassmannPoly t = f * GrassmannPoly::monomial(g.ring(), m, c);
                if (pu && pm) t = -t;
                put(du[0], dv[0], std::move(t));
            }
            for (const auto& [m, c] : f.terms()) {
                int pm = std::popcount(m.mask) & 1;
                GrassmannPoly t = g * GrassmannPoly::monomial(f.ring(), m, c);
                if (pv && pm) t = -t;
                if (s != 1) t = -t;
                put(dv[0], du[0], std::move(t));
            }
        }
    for (const auto& [k, c] : residue)
        if (!c.is_zero())
            throw std::invalid_argument("composition is not a vector field (second-order residue)");
    return out;
}

PolyVectorField lie_derivative(const PolyVectorField& x, const PolyVectorField& lambda) {
    require_same_ring(x.ring(), lambda.ring());
    if (x.degree() != 1) throw std::invalid_argument("lie_derivative needs a degree-1 field");
    if (lambda.degree() == 1) return vf_commutator(x, lambda, CommutatorSign::Super);
    int px = static_cast<int>(x.parity());
    PolyVectorField out(lambda.ring(), lambda.degree());
    for (const auto& [dirs, c] : lambda.terms()) {
        // split the coefficient by monomial parity so A = c d_{dirs[0]} is homogeneous
        for (const auto& [m, k] : c.terms()) {
            GrassmannPoly mono = GrassmannPoly::monomial(c.ring(), m, k);
            PolyVectorField a = PolyVectorField::single(lambda.ring(), mono, {dirs[0]});
            std::vector<int> rest(dirs.begin() + 1, dirs.end());
            PolyVectorField b(lambda.ring(), static_cast<int>(rest.size()));
            b.add(GrassmannPoly::constant(lambda.ring(), Scalar::one(lambda.ring()->field_d)), rest);
            int pa = static_cast<int>(a.parity()) + conv::lie_twist;
            PolyVectorField t1 = wedge(vf_commutator(x, a, CommutatorSign::Super), b);
            PolyVectorField t2 = wedge(a, lie_derivative(x, b));
            if ((px * pa) & 1) t2 = t2.scaled(Scalar(-1));
            PolyVectorField sum = t1 + t2;
            for (const auto& [d2, c2] : sum.terms()) out.add(c2, d2);
        }
    }
    return out;
}

GrassmannPoly bracket_from_bivector(const PolyVectorField& lambda, const GrassmannPoly& f,
                                    const GrassmannPoly& g, BracketConvention convention) {
    require_same_ring(lambda.ring(), f.ring());
    require_same_ring(lambda.ring(), g.ring());
    if (lambda.degree() != 2) throw std::invalid_argument("bracket needs a bivector");
    int pf = static_cast<int>(f.parity());
    int pg = static_cast<int>(g.parity());
    GrassmannPoly out(lambda.ring());
    auto q_exp = [](int pu, int pv, int pf, int pg) {
        return conv::alpha[0] * pu * pf + conv::alpha[1] * pv * pf + conv::alpha[2] * pu * pg +
               conv::alpha[3] * pv * pg + conv::alpha[4] * pu * pv + conv::alpha[5] * pf * pg;
    };
    for (const auto& [dirs, c] : lambda.terms()) {
        int u = dirs[0], v = dirs[1];
        int pu = lambda.dir_parity(u), pv = lambda.dir_parity(v);
        GrassmannPoly t1 = c * f.partial(u) * g.partial(v);
        if (q_exp(pu, pv, pf, pg) & 1) t1 = -t1;
        GrassmannPoly t2 = c * f.partial(v) * g.partial(u);
        if ((wedge_swap_exp(pu, pv) + q_exp(pv, pu, pf, pg)) & 1) t2 = -t2;
        out = out + t1 + t2;
    }
    if (convention == BracketConvention::Odd) {
        out = out.scaled(Scalar(1, 2));
        if (!conv::const_half && ((pf + conv::odd_prefactor) & 1)) out = out.scaled(Scalar(-1));
    }
    return out;
}

PolyVectorField hamiltonian_field(const PolyVectorField& poisson, const GrassmannPoly& h) {
    const auto& ring = poisson.ring();
    std::size_t ne = ring->even_names.size(), no = ring->odd_names.size();
    PolyVectorField out(ring, 1);
    for (std::size_t i = 0; i < ne; ++i) {
        auto z = GrassmannPoly::var_even(ring, i);
        auto c = bracket_from_bivector(poisson, h, z, BracketConvention::Even);
        if (!c.is_zero()) out.add(std::move(c), {static_cast<int>(i)});
    }
    for (std::size_t j = 0; j < no; ++j) {
        auto z = GrassmannPoly::var_odd(ring, j);
        auto c = bracket_from_bivector(poisson, h, z, BracketConvention::Even);
        if (!c.is_zero()) out.add(std::move(c), {static_cast<int>(ne + j)});
    }
    return out;
}

// --- canonical structures ---------------------------------------------------------

RingPtr ring_k21(long d) { return make_ring({"p", "q"}, {"tau"}, d); }
RingPtr ring_k11(long d) { return make_ring({"x"}, {"xi"}, d); }
RingPtr ring_k42(long d) { return make_ring({"p1", "q1", "p2", "q2"}, {"tau1", "tau2"}, d); }

PolyVectorField poisson_bivector(const RingPtr& r) {
    long d = r->field_d;
    PolyVectorField out(r, 2);
    out.add(GrassmannPoly::constant(r, Scalar::one(d)), {0, 1});
    out.add(GrassmannPoly::constant(r, Scalar(1, 2)), {2, 2});
    return out;
}

PolyVectorField euler_field(const RingPtr& r) {
    long d = r->field_d;
    PolyVectorField out(r, 1);
    std::size_t ne = r->even_names.size();
    for (std::size_t i = 0; i < ne; ++i)
        out.add(GrassmannPoly::var_even(r, i), {static_cast<int>(i)});
    for (std::size_t j = 0; j < r->odd_names.size(); ++j)
        out.add(GrassmannPoly::var_odd(r, j), {static_cast<int>(ne + j)});
    (void)d;
    return out;
}

PolyVectorField odd_bivector(const RingPtr& r) {
    // d_tau ^ E + tau d_p ^ d_q
    PolyVectorField one_dtau =
        PolyVectorField::single(r, GrassmannPoly::constant(r, Scalar::one(r->field_d)), {2});
    PolyVectorField out = wedge(one_dtau, euler_field(r));
    out.add(GrassmannPoly::var_odd(r, 0), {0, 1});
    return out;
}

PolyVectorField contact_field(const RingPtr& r) {
    // D = 1/2 (d_xi + xi d_x)
    PolyVectorField out(r, 1);
    out.add(GrassmannPoly::constant(r, Scalar(1, 2)), {1});
    out.add(GrassmannPoly::var_odd(r, 0).scaled(Scalar(1, 2)), {0});
    return out;
}

std::vector<PolyVectorField> osp12_fields(const RingPtr& r) {
    long d = r->field_d;
    auto P = [&](long n, long den = 1) { return Scalar(n, den); };
    auto vp = GrassmannPoly::var_even(r, 0);
    auto vq = GrassmannPoly::var_even(r, 1);
    auto vt = GrassmannPoly::var_odd(r, 0);
    std::vector<PolyVectorField> out;
    {
        PolyVectorField e(r, 1); // 2p d_q
        e.add(vp.scaled(P(2)), {1});
        out.push_back(e);
    }
    {
        PolyVectorField h(r, 1); // -p d_p + q d_q
        h.add(vp.scaled(P(-1)), {0});
        h.add(vq, {1});
        out.push_back(h);
    }
    {
        PolyVectorField f(r, 1); // -2q d_p
        f.add(vq.scaled(P(-2)), {0});
        out.push_back(f);
    }
    {
        PolyVectorField a(r, 1); // tau d_q + p d_tau
        a.add(vt, {1});
        a.add(vp, {2});
        out.push_back(a);
    }
    {
        PolyVectorField b(r, 1); // -tau d_p + q d_tau
        b.add(vt.scaled(P(-1)), {0});
        b.add(vq, {2});
        out.push_back(b);
    }
    (void)d;
    return out;
}

PolyVectorField complex_rotation_field(const RingPtr& r) {
    // q2 d_p1 + p2 d_q1 - q1 d_p2 - p1 d_q2 + tau2 d_tau1 - tau1 d_tau2
    PolyVectorField j(r, 1);
    j.add(GrassmannPoly::var_even(r, 3), {0});
    j.add(GrassmannPoly::var_even(r, 2), {1});
    j.add(GrassmannPoly::var_even(r, 1).scaled(Scalar(-1)), {2});
    j.add(GrassmannPoly::var_even(r, 0).scaled(Scalar(-1)), {3});
    j.add(GrassmannPoly::var_odd(r, 1), {4});
    j.add(GrassmannPoly::var_odd(r, 0).scaled(Scalar(-1)), {5});
    return j;
}

PolyVectorField complex_odd_bivector(const RingPtr& r) {
    // d_tau1 ^ E + d_tau2 ^ J + tau1 (d_p1^d_q1 + d_p2^d_q2) + tau2 (d_p1^d_p2 - d_q1^d_q2)
    auto one = GrassmannPoly::constant(r, Scalar::one(r->field_d));
    PolyVectorField out = wedge(PolyVectorField::single(r, one, {4}), euler_field(r));
    PolyVectorField jpart = wedge(PolyVectorField::single(r, one, {5}), complex_rotation_field(r));
    for (const auto& [dirs, c] : jpart.terms()) out.add(c, dirs);
    auto t1 = GrassmannPoly::var_odd(r, 0);
    auto t2 = GrassmannPoly::var_odd(r, 1);
    out.add(t1, {0, 1});
    out.add(t1, {2, 3});
    out.add(t2, {0, 2});
    out.add(t2.scaled(Scalar(-1)), {1, 3});
    return out;
}

std::vector<PolyVectorField> invariant_bivector_space(const std::vector<PolyVectorField>& action,
                                                      Parity parity, const RingPtr& ring) {
    long d = ring->field_d;
    std::size_t ne = ring->even_names.size(), no = ring->odd_names.size();
    // ansatz monomials of degree <= 1
    std::vector<Mono> monos;
    {
        Mono unit;
        unit.exp.assign(ne, 0);
        monos.push_back(unit);
        for (std::size_t i = 0; i < ne; ++i) {
            Mono m = unit;
            m.exp[i] = 1;
            monos.push_back(m);
        }
        for (std::size_t j = 0; j < no; ++j) {
            Mono m = unit;
            m.mask = 1u << j;
            monos.push_back(m);
        }
    }
    std::vector<std::pair<int, int>> pairs;
    int total = static_cast<int>(ne + no);
    for (int u = 0; u < total; ++u)
        for (int v = u; v < total; ++v) {
            if (u == v && u < static_cast<int>(ne)) continue; // even wedge square = 0
            pairs.push_back({u, v});
        }
    std::vector<PolyVectorField> basis;
    for (const auto& [u, v] : pairs)
        for (const auto& m : monos) {
            int pm = std::popcount(m.mask) & 1;
            int pu = u < static_cast<int>(ne) ? 0 : 1;
            int pv = v < static_cast<int>(ne) ? 0 : 1;
            if (((pm + pu + pv) & 1) != static_cast<int>(parity)) continue;
            basis.push_back(PolyVectorField::single(
                ring, GrassmannPoly::monomial(ring, m, Scalar::one(d)), {u, v}));
        }

    // assemble L_X(basis_t) = 0 over all X: one row per (generator, dirs, mono)
    std::map<std::tuple<std::size_t, std::vector<int>, Mono>, std::size_t> rows;
    std::vector<std::map<std::size_t, Scalar>> col_entries(basis.size());
    for (std::size_t t = 0; t < basis.size(); ++t)
        for (std::size_t g = 0; g < action.size(); ++g) {
            auto lx = lie_derivative(action[g], basis[t]);
            for (const auto& [dirs, c] : lx.terms())
                for (const auto& [m, k] : c.terms()) {
                    auto key = std::make_tuple(g, dirs, m);
                    auto it = rows.find(key);
                    std::size_t r;
                    if (it == rows.end()) {
                        r = rows.size();
                        rows.emplace(key, r);
                    } else {
                        r = it->second;
                    }
                    col_entries[t][r] += k;
                }
        }
    RatField f{d};
    Mat<RatField> sys(std::max<std::size_t>(rows.size(), 1), basis.size(), f);
    for (std::size_t t = 0; t < basis.size(); ++t)
        for (const auto& [r, k] : col_entries[t]) sys.at(r, t) = k;
    auto rr = rref_rank_nullspace(f, std::move(sys));
    std::vector<PolyVectorField> out;
    for (const auto& v : rr.nullspace) {
        PolyVectorField lam(ring, 2);
        for (std::size_t t = 0; t < basis.size(); ++t) {
            if (v[t].is_zero()) continue;
            for (const auto& [dirs, c] : basis[t].scaled(v[t]).terms()) lam.add(c, dirs);
        }
        out.push_back(std::move(lam));
    }
    return out;
}

GrassmannPoly lift(const GrassmannPoly& f, const mpq_class& lambda, const RingPtr& r21) {
    // source ring: one even (x), one odd (xi); target: p, q, tau
    const auto& src = f.ring();
    if (src->even_names.size() != 1 || src->odd_names.size() != 1)
        throw std::invalid_argument("lift expects one even and one odd variable");
    GrassmannPoly out(r21);
    for (const auto& [m, c] : f.terms()) {
        long a = m.exp[0];
        long b = std::popcount(m.mask) ? 1 : 0;
        mpq_class e = lambda - a - b;
        if (e.get_den() != 1) throw std::invalid_argument("lift exponent is not an integer");
        Mono n;
        n.exp = {static_cast<long>(e.get_num().get_si()), a};
        n.mask = b ? 1u : 0u;
        out = out + GrassmannPoly::monomial(r21, n, c);
    }
    return out;
}

PolyVectorField contact_tangent(const GrassmannPoly& f) {
    const auto& r = f.ring();
    PolyVectorField out(r, 1);
    // f D = 1/2 f d_xi + 1/2 (f xi) d_x
    out.add(f.scaled(Scalar(1, 2)), {1});
    out.add((f * GrassmannPoly::var_odd(r, 0)).scaled(Scalar(1, 2)), {0});
    return out;
}

GrassmannPoly ak1_smooth_product(const GrassmannPoly& f, const GrassmannPoly& g) {
    const auto& r = f.ring();
    require_same_ring(r, g.ring());
    auto xi = GrassmannPoly::var_odd(r, 0);
    GrassmannPoly f1 = f.partial_odd(0), g1 = g.partial_odd(0);
    GrassmannPoly f0 = f - xi * f1, g0 = g - xi * g1;
    GrassmannPoly even_slot = (f1 * g0 + g1 * f0).scaled(Scalar(1, 2));
    GrassmannPoly odd_slot =
        f1 * g1 + (f0 * g0.partial_even(0) - f0.partial_even(0) * g0).scaled(Scalar(1, 2));
    return even_slot + xi * odd_slot;
}

// --- canonical linear bivector ------------------------------------------------------

LinearBivector lambda_of_algebra(const GradedAlgebra& alg) {
    if (alg.windowed()) throw WindowedInput("lambda_of_algebra needs a total algebra");
    auto evens = alg.even_indices();
    auto odds = alg.odd_indices();
    std::vector<std::string> even_names, odd_names;
    for (auto o : odds) even_names.push_back(alg.labels[o]);
    for (auto e : evens) odd_names.push_back(alg.labels[e]);
    RingPtr ring = make_ring(even_names, odd_names, alg.field_d);
    long d = alg.field_d;
    std::size_t ne = even_names.size();

    // ring coordinate of a source basis index
    auto coord_dir = [&](std::size_t src) -> int {
        for (std::size_t a = 0; a < odds.size(); ++a)
            if (odds[a] == src) return static_cast<int>(a);
        for (std::size_t i = 0; i < evens.size(); ++i)
            if (evens[i] == src) return static_cast<int>(ne + i);
        throw std::logic_error("bad index");
    };
    auto coord_poly = [&](std::size_t src) {
        int dir = coord_dir(src);
        return dir < static_cast<int>(ne) ? GrassmannPoly::var_even(ring, dir)
                                          : GrassmannPoly::var_odd(ring, dir - ne);
    };

    PolyVectorField lam(ring, 2);
    for (std::size_t i = 0; i < evens.size(); ++i) {
        // adjoint-type operator: ad on the even part, 2 ad on the odd part
        Vec eps = alg.basis_vector(evens[i]);
        PolyVectorField a(ring, 1);
        for (std::size_t k = 0; k < alg.dim(); ++k) {
            Vec img = *alg.product(eps, alg.basis_vector(k));
            if (alg.parities[k] == Parity::Odd)
                for (auto& c : img) c *= Scalar(2);
            GrassmannPoly coeff(ring);
            for (std::size_t m = 0; m < alg.dim(); ++m)
                if (!img[m].is_zero()) coeff = coeff + coord_poly(m).scaled(img[m]);
            if (!coeff.is_zero()) a.add(std::move(coeff), {coord_dir(k)});
        }
        // d_tau_i ^ A_i
        PolyVectorField dt = PolyVectorField::single(
            ring, GrassmannPoly::constant(ring, Scalar::one(d)), {static_cast<int>(ne + i)});
        for (const auto& [dirs, c] : wedge(dt, a).terms()) lam.add(c, dirs);
        // tau_i pi_i with pi_i = sum_{a<b} 2 omega_i(a,b) d_a ^ d_b
        auto tau = GrassmannPoly::var_odd(ring, i);
        for (std::size_t a2 = 0; a2 < odds.size(); ++a2)
            for (std::size_t b2 = a2 + 1; b2 < odds.size(); ++b2) {
                Vec prod = *alg.product(alg.basis_vector(odds[a2]), alg.basis_vector(odds[b2]));
                Scalar w = prod[evens[i]];
                if (w.is_zero()) continue;
                lam.add(tau.scaled(w * Scalar(2)), {static_cast<int>(a2), static_cast<int>(b2)});
            }
    }

    LinearBivector out;
    out.field = std::move(lam);
    out.source_name = alg.name;
    out.source_field_d = alg.field_d;
    out.source_labels = alg.labels;
    out.source_parities = alg.parities;
    return out;
}

GradedAlgebra recover_algebra(const LinearBivector& lb) {
    const auto& ring = lb.field.ring();
    std::size_t ne = ring->even_names.size();
    long d = lb.source_field_d;
    std::size_t n = lb.source_labels.size();

    // source index -> coordinate poly and back
    std::vector<int> dir_of(n, -1);
    {
        std::size_t a = 0, i = 0;
        for (std::size_t s = 0; s < n; ++s)
            if (lb.source_parities[s] == Parity::Odd)
                dir_of[s] = static_cast<int>(a++);
            else
                dir_of[s] = static_cast<int>(ne + i++);
    }
    auto coord_poly = [&](std::size_t s) {
        int dir = dir_of[s];
        return dir < static_cast<int>(ne) ? GrassmannPoly::var_even(ring, dir)
                                          : GrassmannPoly::var_odd(ring, dir - ne);
    };
    auto expand_linear = [&](const GrassmannPoly& p) {
        Vec out(n, Scalar::zero(d));
        for (const auto& [m, c] : p.terms()) {
            long total = 0;
            for (auto e : m.exp) total += std::abs(e);
            int bits = std::popcount(m.mask);
            if (total + bits != 1)
                throw std::invalid_argument("bracket of coordinates is not linear");
            int dir = -1;
            if (total == 1) {
                for (std::size_t i2 = 0; i2 < m.exp.size(); ++i2)
                    if (m.exp[i2] == 1) dir = static_cast<int>(i2);
                if (dir < 0) throw std::invalid_argument("negative exponent in a linear bracket");
            } else {
                for (std::size_t j = 0; j < ring->odd_names.size(); ++j)
                    if (m.mask & (1u << j)) dir = static_cast<int>(ne + j);
            }
            for (std::size_t s = 0; s < n; ++s)
                if (dir_of[s] == dir) out[s] += c;
        }
        return out;
    };

    GradedAlgebra alg;
    alg.name = lb.source_name;
    alg.field_d = d;
    alg.labels = lb.source_labels;
    alg.parities = lb.source_parities;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            auto br = bracket_from_bivector(lb.field, coord_poly(i), coord_poly(j),
                                            BracketConvention::Odd);
            Vec coords = expand_linear(br);
            std::vector<Term> terms;
            for (std::size_t k = 0; k < n; ++k)
                if (!coords[k].is_zero()) terms.push_back({k, coords[k]});
            if (!terms.empty()) alg.table[{i, j}] = terms;
        }
    alg.validate();
    return alg;
}

// --- window realization ----------------------------------------------------------

namespace {

struct LineAccum {
    RealizeLine line;
    explicit LineAccum(std::string name) { line.family = std::move(name); }
    void update(const GrassmannPoly& actual, const GrassmannPoly& expected) {
        ++line.checked;
        if (actual == expected) {
            ++line.matched;
            return;
        }
        // track actual = ratio * expected
        if (!expected.is_zero()) {
            const auto& [m, c] = *expected.terms().begin();
            auto it = actual.terms().find(m);
            if (it != actual.terms().end()) {
                Scalar ratio = it->second / c;
                if (actual == expected.scaled(ratio)) {
                    if (!line.uniform_ratio)
                        line.uniform_ratio = ratio;
                    else if (!(*line.uniform_ratio == ratio))
                        line.uniform_ratio.reset();
                    return;
                }
            }
        }
        line.uniform_ratio.reset();
    }
};

} // namespace

const RealizeLine* RealizeReport::find(const std::string& family) const {
    for (const auto& l : lines)
        if (l.family == family) return &l;
    return nullptr;
}

RealizeReport realize_brackets(long N) {
    if (N < 1) throw std::invalid_argument("realize_brackets needs N >= 1");
    auto r21 = ring_k21();
    auto r11 = ring_k11();
    auto lam = odd_bivector(r21);
    auto poi = poisson_bivector(r21);
    auto xxi = [&](long a) { return GrassmannPoly::var_even(r11, 0, a); };
    auto xi_x = [&](long a) { return GrassmannPoly::var_odd(r11, 0) * xxi(a); };

    // window index sets: eps_n |n| <= 2N, a_i with 2i odd, |2i| <= 2N-1,
    // x_n |n| <= 2N, xi_i like a_i
    std::vector<long> eidx, oidx;
    for (long n = -2 * N; n <= 2 * N; ++n) eidx.push_back(n);
    for (long t = -(2 * N - 1); t <= 2 * N - 1; t += 2) oidx.push_back(t);

    auto eps_fun = [&](long n) { return xi_x(n); };                 // xi x^n
    auto a_fun = [&](long t) { return xxi((t + 1) / 2); };          // x^{i+1/2}, t = 2i
    auto eps_lift = [&](long n) { return lift(eps_fun(n), 1, r21); };
    auto a_lift = [&](long t) { return lift(a_fun(t), 1, r21); };
    auto x_lift = [&](long n) { return lift(xxi(n + 1).scaled(Scalar(1, 2)), 2, r21); };
    auto xi_lift = [&](long t) { return lift(xi_x((t + 1) / 2), 2, r21); };

    RealizeReport rep;
    auto ebr = [&](const GrassmannPoly& f, const GrassmannPoly& g) {
        return bracket_from_bivector(lam, f, g, BracketConvention::Odd);
    };
    auto pbr = [&](const GrassmannPoly& f, const GrassmannPoly& g) {
        return bracket_from_bivector(poi, f, g, BracketConvention::Even);
    };
    auto zero21 = GrassmannPoly(r21);

    {
        LineAccum acc("antibracket eps*eps"); // eps_n eps_m = eps_{n+m}
        for (long n : eidx)
            for (long m : eidx) {
                if (std::abs(n + m) > 2 * N) continue;
                acc.update(ebr(eps_lift(n), eps_lift(m)), eps_lift(n + m));
            }
        rep.lines.push_back(acc.line);
    }
    {
        LineAccum acc("antibracket eps*a"); // eps_n a_i = 1/2 a_{n+i}
        for (long n : eidx)
            for (long t : oidx) {
                if (std::abs(2 * n + t) > 2 * N - 1) continue;
                acc.update(ebr(eps_lift(n), a_lift(t)), a_lift(2 * n + t).scaled(Scalar(1, 2)));
            }
        rep.lines.push_back(acc.line);
    }
    {
        LineAccum acc("antibracket a*a"); // a_i a_j = (j - i) eps_{i+j}
        for (long s : oidx)
            for (long t : oidx) {
                long coeff2 = t - s;
                acc.update(ebr(a_lift(s), a_lift(t)),
                           coeff2 == 0 ? zero21 : eps_lift((s + t) / 2).scaled(Scalar(coeff2, 2)));
            }
        rep.lines.push_back(acc.line);
    }
    {
        LineAccum acc("poisson x*x"); // [x_n, x_m] = (m - n) x_{n+m}
        for (long n : eidx)
            for (long m : eidx) {
                if (std::abs(n + m) > 2 * N) continue;
                acc.update(pbr(x_lift(n), x_lift(m)),
                           m == n ? zero21 : x_lift(n + m).scaled(Scalar(m - n)));
            }
        rep.lines.push_back(acc.line);
    }
    {
        LineAccum acc("poisson x*xi"); // [x_n, xi_i] = (i - n/2) xi_{i+n}
        for (long n : eidx)
            for (long t : oidx) {
                if (std::abs(2 * n + t) > 2 * N - 1) continue;
                acc.update(pbr(x_lift(n), xi_lift(t)), xi_lift(t + 2 * n).scaled(Scalar(t - n, 2)));
            }
        rep.lines.push_back(acc.line);
    }
    {
        LineAccum acc("poisson xi*xi"); // [xi_i, xi_j] = x_{i+j}
        for (long s : oidx)
            for (long t : oidx) acc.update(pbr(xi_lift(s), xi_lift(t)), x_lift((s + t) / 2));
        rep.lines.push_back(acc.line);
    }
    {
        LineAccum acc("action x on eps"); // x_n(eps_m) = m eps_{n+m}
        for (long n : eidx)
            for (long m : eidx) {
                if (std::abs(n + m) > 2 * N) continue;
                acc.update(pbr(x_lift(n), eps_lift(m)),
                           m == 0 ? zero21 : eps_lift(n + m).scaled(Scalar(m)));
            }
        rep.lines.push_back(acc.line);
    }
    {
        LineAccum acc("action x on a"); // x_n(a_i) = (i - n/2) a_{n+i}
        for (long n : eidx)
            for (long t : oidx) {
                if (std::abs(2 * n + t) > 2 * N - 1) continue;
                acc.update(pbr(x_lift(n), a_lift(t)), a_lift(t + 2 * n).scaled(Scalar(t - n, 2)));
            }
        rep.lines.push_back(acc.line);
    }
    {
        LineAccum acc("action xi on eps"); // xi_i(eps_n) = a_{i+n}
        for (long t : oidx)
            for (long n : eidx) {
                if (std::abs(t + 2 * n) > 2 * N - 1) continue;
                acc.update(pbr(xi_lift(t), eps_lift(n)), a_lift(t + 2 * n));
            }
        rep.lines.push_back(acc.line);
    }
    {
        LineAccum acc("action xi on a"); // xi_i(a_j) = (j - i) eps_{i+j}
        for (long s : oidx)
            for (long t : oidx) {
                long coeff2 = t - s;
                acc.update(pbr(xi_lift(s), a_lift(t)),
                           coeff2 == 0 ? zero21 : eps_lift((s + t) / 2).scaled(Scalar(coeff2, 2)));
            }
        rep.lines.push_back(acc.line);
    }
    {
        // chi_f(g) equals the contraction of the degree-1 and degree-0 lifts
        LineAccum acc("tangent contraction identity");
        std::vector<GrassmannPoly> window_funs, carrier_funs;
        for (long n : eidx) window_funs.push_back(eps_fun(n));
        for (long t : oidx) window_funs.push_back(a_fun(t));
        for (long m = -2 * N; m <= 2 * N; ++m) {
            carrier_funs.push_back(xxi(m));
            carrier_funs.push_back(xi_x(m));
        }
        for (const auto& f : window_funs)
            for (const auto& g : carrier_funs) {
                auto lhs = lift(contact_tangent(f).apply(g), 0, r21);
                auto rhs = ebr(lift(f, 1, r21), lift(g, 0, r21));
                acc.update(lhs, rhs);
            }
        rep.lines.push_back(acc.line);
    }
    {
        // [chi_f, chi_g]_+ = chi_{f*g} for all window basis pairs
        LineAccum acc("tangent anticommutator");
        std::vector<GrassmannPoly> window_funs;
        for (long n : eidx) window_funs.push_back(eps_fun(n));
        for (long t : oidx) window_funs.push_back(a_fun(t));
        for (const auto& f : window_funs)
            for (const auto& g : window_funs) {
                auto lhs = vf_commutator(contact_tangent(f), contact_tangent(g),
                                         CommutatorSign::Anticommutator);
                auto rhs = contact_tangent(ak1_smooth_product(f, g));
                ++acc.line.checked;
                if (lhs == rhs) ++acc.line.matched;
            }
        rep.lines.push_back(acc.line);
    }
    {
        // lifted Neveu-Schwarz window fields preserve the odd bivector
        LineAccum acc("k1 field invariance");
        for (long n : eidx) {
            auto x = hamiltonian_field(poi, x_lift(n));
            ++acc.line.checked;
            if (lie_derivative(x, lam).is_zero()) ++acc.line.matched;
        }
        for (long t : oidx) {
            auto x = hamiltonian_field(poi, xi_lift(t));
            ++acc.line.checked;
            if (lie_derivative(x, lam).is_zero()) ++acc.line.matched;
        }
        rep.lines.push_back(acc.line);
    }
    return rep;
}

} // namespace anti
