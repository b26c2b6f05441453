#include "anti/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace anti {

namespace {

// "eps_-3" -> ("eps", -3); labels without an index get index 0
std::pair<std::string, long> split_label(const std::string& label) {
    auto pos = label.rfind('_');
    if (pos == std::string::npos) return {label, 0};
    try {
        return {label.substr(0, pos), std::stol(label.substr(pos + 1))};
    } catch (...) {
        return {label, 0};
    }
}

std::string render(const Vec& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << v[i].str();
    }
    os << ")";
    return os.str();
}

} // namespace

void GradedAlgebra::validate() const {
    if (labels.size() != parities.size())
        throw std::invalid_argument("labels/parities size mismatch");
    for (const auto& [key, terms] : table) {
        auto [i, j] = key;
        if (i > j) throw std::invalid_argument("product table must store i <= j only");
        if (j >= dim()) throw std::invalid_argument("product index out of range");
        for (const auto& t : terms) {
            if (t.k >= dim()) throw std::invalid_argument("product target out of range");
            if (!t.c.is_zero() && parities[t.k] != parities[i] + parities[j])
                throw std::invalid_argument("product violates the parity grading at " + labels[i] +
                                            "*" + labels[j]);
        }
    }
    // diagonal terms on odd pairs: x*x = -x*x forces zero in a plain algebra;
    // bracket tables allow [x, x] on odd x.
    if (!bracket) {
        for (const auto& [key, terms] : table) {
            auto [i, j] = key;
            if (i == j && parities[i] == Parity::Odd)
                for (const auto& t : terms)
                    if (!t.c.is_zero())
                        throw std::invalid_argument("odd square must vanish in a commutative table");
        }
    }
}

std::pair<std::size_t, std::size_t> GradedAlgebra::graded_dims() const {
    std::size_t even = 0, odd = 0;
    for (auto p : parities) (p == Parity::Even ? even : odd)++;
    return {even, odd};
}

std::vector<std::size_t> GradedAlgebra::even_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dim(); ++i)
        if (parities[i] == Parity::Even) out.push_back(i);
    return out;
}

std::vector<std::size_t> GradedAlgebra::odd_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dim(); ++i)
        if (parities[i] == Parity::Odd) out.push_back(i);
    return out;
}

bool GradedAlgebra::defined(std::size_t i, std::size_t j) const {
    if (!window) return true;
    const auto& w = *window;
    auto [ti, ni] = split_label(labels[i]);
    auto [tj, nj] = split_label(labels[j]);
    if (w.kind == "ak1" || w.kind == "ak1_plus") {
        // indices: eps_n carries n, a_m encodes i = m/2
        bool iodd = parities[i] == Parity::Odd, jodd = parities[j] == Parity::Odd;
        if (!iodd && !jodd) {
            long n = ni + nj;
            return w.kind == "ak1" ? std::abs(n) <= 2 * w.N : (0 <= n && n <= 2 * w.N);
        }
        if (iodd != jodd) {
            long two_i = iodd ? ni : nj, n = iodd ? nj : ni;
            long t = 2 * n + two_i;
            return w.kind == "ak1" ? std::abs(t) <= 2 * w.N : (-1 <= t && t <= 2 * w.N - 1);
        }
        return true; // odd*odd lands on eps_{i+j}, always inside for these windows
    }
    if (w.kind == "k1") {
        bool iodd = parities[i] == Parity::Odd, jodd = parities[j] == Parity::Odd;
        if (!iodd && !jodd) return std::abs(ni + nj) <= 2 * w.N;
        if (iodd != jodd) {
            long two_i = iodd ? ni : nj, n = iodd ? nj : ni;
            return std::abs(2 * n + two_i) <= 2 * w.N;
        }
        return true;
    }
    throw std::invalid_argument("unknown window kind: " + w.kind);
}

std::vector<Term> GradedAlgebra::basis_product(std::size_t i, std::size_t j) const {
    if (!defined(i, j)) throw std::logic_error("product undefined in this window");
    bool swap = i > j;
    auto key = swap ? std::make_pair(j, i) : std::make_pair(i, j);
    auto it = table.find(key);
    if (it == table.end()) return {};
    auto terms = it->second;
    if (swap) {
        bool both_odd = parities[i] == Parity::Odd && parities[j] == Parity::Odd;
        // commutative: x*y = (-1)^{p p} y*x ; bracket: [x,y] = -(-1)^{p p}[y,x]
        bool flip = bracket ? !both_odd : both_odd;
        if (flip)
            for (auto& t : terms) t.c = -t.c;
    }
    return terms;
}

std::optional<Vec> GradedAlgebra::product(const Vec& u, const Vec& v) const {
    if (u.size() != dim() || v.size() != dim())
        throw std::invalid_argument("vector dimension mismatch");
    Vec out = zero_vector();
    for (std::size_t i = 0; i < dim(); ++i) {
        if (u[i].is_zero()) continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (v[j].is_zero()) continue;
            if (!defined(i, j)) return std::nullopt;
            for (const auto& t : basis_product(i, j)) out[t.k] += u[i] * v[j] * t.c;
        }
    }
    return out;
}

Vec GradedAlgebra::basis_vector(std::size_t i) const {
    Vec v = zero_vector();
    v[i] = Scalar::one(field_d);
    return v;
}

Mat<RatField> GradedAlgebra::left_mult(const Vec& x) const {
    if (windowed()) throw WindowedInput("left_mult needs a total algebra");
    Mat<RatField> m(dim(), dim(), field());
    for (std::size_t j = 0; j < dim(); ++j) {
        auto col = product(x, basis_vector(j));
        for (std::size_t i = 0; i < dim(); ++i) m.at(i, j) = (*col)[i];
    }
    return m;
}

bool GradedAlgebra::same_structure(const GradedAlgebra& o) const {
    if (field_d != o.field_d || parities != o.parities || bracket != o.bracket) return false;
    if (window != o.window) return false;
    auto norm = [](const std::map<std::pair<std::size_t, std::size_t>, std::vector<Term>>& t) {
        std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, Scalar>> n;
        for (const auto& [k, terms] : t)
            for (const auto& term : terms)
                if (!term.c.is_zero()) {
                    auto& cell = n[k][term.k];
                    cell += term.c;
                    if (cell.is_zero()) n[k].erase(term.k);
                }
        std::erase_if(n, [](const auto& kv) { return kv.second.empty(); });
        return n;
    };
    return norm(table) == norm(o.table);
}

GradedAlgebra GradedAlgebra::with_field(long d) const {
    GradedAlgebra out = *this;
    out.field_d = d;
    for (auto& [k, terms] : out.table)
        for (auto& t : terms) t.c = t.c.with_tag(d);
    return out;
}

long GradedAlgebra::label_index(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return static_cast<long>(i);
    return -1;
}

// --- Subspace ----------------------------------------------------------------

Subspace Subspace::span(std::size_t ambient, long field_d, const std::vector<Vec>& vectors) {
    Subspace s(ambient, field_d);
    RatField f{field_d};
    if (vectors.empty()) return s;
    Mat<RatField> m(vectors.size(), ambient, f);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != ambient) throw std::invalid_argument("ambient dim mismatch");
        for (std::size_t j = 0; j < ambient; ++j) m.at(i, j) = vectors[i][j];
    }
    auto rr = rref_rank_nullspace(f, std::move(m));
    for (std::size_t i = 0; i < rr.rank; ++i)
        s.rows_.emplace_back(rr.rref.e.begin() + i * ambient, rr.rref.e.begin() + (i + 1) * ambient);
    return s;
}

bool Subspace::contains(const Vec& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("ambient dim mismatch");
    // reduce v against the rref rows
    Vec w = v;
    for (const auto& row : rows_) {
        std::size_t piv = 0;
        while (piv < ambient_ && row[piv].is_zero()) ++piv;
        if (piv == ambient_) continue;
        if (!w[piv].is_zero()) {
            Scalar c = w[piv]; // rows are pivot-normalized to 1
            for (std::size_t j = 0; j < ambient_; ++j) w[j] -= c * row[j];
        }
    }
    return std::all_of(w.begin(), w.end(), [](const Scalar& x) { return x.is_zero(); });
}

bool Subspace::contains(const Subspace& other) const {
    for (const auto& row : other.rows_)
        if (!contains(row)) return false;
    return true;
}

Subspace Subspace::sum(const Subspace& other) const {
    std::vector<Vec> all = rows_;
    all.insert(all.end(), other.rows_.begin(), other.rows_.end());
    return Subspace::span(ambient_, field_.d, all);
}

std::pair<std::size_t, std::size_t> Subspace::graded_dims(const std::vector<Parity>& parities) const {
    std::size_t even = 0, odd = 0;
    for (const auto& row : rows_) {
        bool has_even = false, has_odd = false;
        for (std::size_t j = 0; j < row.size(); ++j)
            if (!row[j].is_zero()) (parities[j] == Parity::Even ? has_even : has_odd) = true;
        if (has_even && has_odd) throw std::invalid_argument("subspace is not parity-homogeneous");
        (has_even ? even : odd)++;
    }
    return {even, odd};
}

// --- SuperLinearMap ----------------------------------------------------------

void SuperLinearMap::validate() const {
    if (cols.size() != src_dim()) throw std::invalid_argument("column count mismatch");
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != tgt_dim()) throw std::invalid_argument("column size mismatch");
        for (std::size_t i = 0; i < cols[j].size(); ++i)
            if (!cols[j][i].is_zero() && tgt_parities[i] != src_parities[j] + map_parity)
                throw std::invalid_argument("map violates its declared parity");
    }
}

Vec SuperLinearMap::apply(const Vec& v) const {
    if (v.size() != src_dim()) throw std::invalid_argument("map/vector shape mismatch");
    Vec out(tgt_dim(), Scalar::zero(field_d));
    for (std::size_t j = 0; j < src_dim(); ++j) {
        if (v[j].is_zero()) continue;
        for (std::size_t i = 0; i < tgt_dim(); ++i) out[i] += cols[j][i] * v[j];
    }
    return out;
}

Mat<RatField> SuperLinearMap::matrix() const {
    RatField f{field_d};
    Mat<RatField> m(tgt_dim(), src_dim(), f);
    for (std::size_t j = 0; j < src_dim(); ++j)
        for (std::size_t i = 0; i < tgt_dim(); ++i) m.at(i, j) = cols[j][i];
    return m;
}

SuperLinearMap SuperLinearMap::from_matrix(const Mat<RatField>& m, const std::vector<Parity>& src,
                                           const std::vector<Parity>& tgt, Parity p, long field_d) {
    SuperLinearMap f;
    f.src_parities = src;
    f.tgt_parities = tgt;
    f.map_parity = p;
    f.field_d = field_d;
    f.cols.resize(src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
        f.cols[j].resize(tgt.size(), Scalar::zero(field_d));
        for (std::size_t i = 0; i < tgt.size(); ++i) f.cols[j][i] = m.at(i, j);
    }
    f.validate();
    return f;
}

SuperLinearMap ad_operator(const GradedAlgebra& alg, const Vec& x) {
    // parity of x must be homogeneous
    Parity px = Parity::Even;
    bool seen_even = false, seen_odd = false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!x[i].is_zero()) (alg.parities[i] == Parity::Even ? seen_even : seen_odd) = true;
    if (seen_even && seen_odd) throw std::invalid_argument("ad of a non-homogeneous element");
    px = seen_odd ? Parity::Odd : Parity::Even;
    return SuperLinearMap::from_matrix(alg.left_mult(x), alg.parities, alg.parities, px,
                                       alg.field_d);
}

// --- closure / quotient / compose ---------------------------------------------

Subspace closure(const GradedAlgebra& alg, const Subspace& seed, ClosureMode mode) {
    if (alg.windowed()) throw WindowedInput("closure needs a total algebra");
    Subspace cur = seed;
    for (;;) {
        std::vector<Vec> next = cur.basis();
        if (mode == ClosureMode::Ideal) {
            for (const auto& v : cur.basis())
                for (std::size_t i = 0; i < alg.dim(); ++i)
                    next.push_back(*alg.product(alg.basis_vector(i), v));
        } else {
            for (const auto& v : cur.basis())
                for (const auto& w : cur.basis()) next.push_back(*alg.product(v, w));
        }
        Subspace grown = Subspace::span(alg.dim(), alg.field_d, next);
        if (grown.dim() == cur.dim()) return grown;
        cur = grown;
    }
}

QuotientResult quotient(const GradedAlgebra& alg, const Subspace& ideal) {
    if (alg.windowed()) throw WindowedInput("quotient needs a total algebra");
    if (closure(alg, ideal, ClosureMode::Ideal).dim() != ideal.dim())
        throw NotAnIdeal("subspace is not closed under multiplication by the algebra");

    RatField f = alg.field();
    std::size_t n = alg.dim();
    // pivot columns of the ideal; complement indices are the representatives
    std::vector<bool> is_pivot(n, false);
    for (const auto& row : ideal.basis()) {
        std::size_t piv = 0;
        while (piv < n && row[piv].is_zero()) ++piv;
        if (piv < n) is_pivot[piv] = true;
    }
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < n; ++i)
        if (!is_pivot[i]) reps.push_back(i);

    // reduce an ambient vector modulo the ideal, then read off rep coordinates
    auto project = [&](Vec v) {
        for (const auto& row : ideal.basis()) {
            std::size_t piv = 0;
            while (piv < n && row[piv].is_zero()) ++piv;
            if (piv == n) continue;
            Scalar c = v[piv];
            if (!c.is_zero())
                for (std::size_t j = 0; j < n; ++j) v[j] -= c * row[j];
        }
        Vec out(reps.size(), Scalar::zero(alg.field_d));
        for (std::size_t r = 0; r < reps.size(); ++r) out[r] = v[reps[r]];
        return out;
    };

    GradedAlgebra q;
    q.name = alg.name + "/ideal";
    q.field_d = alg.field_d;
    for (auto r : reps) {
        q.labels.push_back(alg.labels[r]);
        q.parities.push_back(alg.parities[r]);
    }
    for (std::size_t a = 0; a < reps.size(); ++a)
        for (std::size_t b = a; b < reps.size(); ++b) {
            auto prod = *alg.product(alg.basis_vector(reps[a]), alg.basis_vector(reps[b]));
            Vec img = project(prod);
            std::vector<Term> terms;
            for (std::size_t k = 0; k < img.size(); ++k)
                if (!img[k].is_zero()) terms.push_back({k, img[k]});
            if (!terms.empty()) q.table[{a, b}] = terms;
        }
    q.validate();

    SuperLinearMap proj;
    proj.src_parities = alg.parities;
    proj.tgt_parities = q.parities;
    proj.map_parity = Parity::Even;
    proj.field_d = alg.field_d;
    for (std::size_t j = 0; j < n; ++j) proj.cols.push_back(project(alg.basis_vector(j)));
    proj.validate();
    return {std::move(q), std::move(proj), std::move(reps)};
}

GradedAlgebra compose(ComposeMode mode, const GradedAlgebra& a, const GradedAlgebra& b) {
    if (a.field_d != b.field_d) throw FieldMismatch("compose needs one ground field");
    if (a.windowed() || b.windowed()) throw WindowedInput("compose needs total algebras");
    GradedAlgebra out;
    out.field_d = a.field_d;
    if (mode == ComposeMode::DirectSum) {
        out.name = a.name + "+" + b.name;
        out.labels = a.labels;
        for (const auto& l : b.labels) out.labels.push_back(l + "'");
        out.parities = a.parities;
        out.parities.insert(out.parities.end(), b.parities.begin(), b.parities.end());
        for (const auto& [k, terms] : a.table) out.table[k] = terms;
        std::size_t off = a.dim();
        for (const auto& [k, terms] : b.table) {
            auto shifted = terms;
            for (auto& t : shifted) t.k += off;
            out.table[{k.first + off, k.second + off}] = shifted;
        }
        out.validate();
        return out;
    }
    // tensor with a purely even commutative associative algebra
    for (auto p : b.parities)
        if (p == Parity::Odd) throw std::invalid_argument("tensor factor must be purely even");
    out.name = a.name + "(x)" + b.name;
    std::size_t nb = b.dim();
    auto idx = [&](std::size_t i, std::size_t s) { return i * nb + s; };
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t s = 0; s < nb; ++s) {
            out.labels.push_back(a.labels[i] + "." + b.labels[s]);
            out.parities.push_back(a.parities[i]);
        }
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            for (std::size_t s = 0; s < nb; ++s)
                for (std::size_t t = 0; t < nb; ++t) {
                    std::size_t u = idx(i, s), v = idx(j, t);
                    if (u > v) continue;
                    Vec prod_a = *a.product(a.basis_vector(i), a.basis_vector(j));
                    Vec prod_b = *b.product(b.basis_vector(s), b.basis_vector(t));
                    std::vector<Term> terms;
                    for (std::size_t k = 0; k < a.dim(); ++k) {
                        if (prod_a[k].is_zero()) continue;
                        for (std::size_t w = 0; w < nb; ++w) {
                            if (prod_b[w].is_zero()) continue;
                            terms.push_back({idx(k, w), prod_a[k] * prod_b[w]});
                        }
                    }
                    if (!terms.empty()) {
                        auto& cell = out.table[{u, v}];
                        cell.insert(cell.end(), terms.begin(), terms.end());
                    }
                }
    out.validate();
    return out;
}

// --- analyze ------------------------------------------------------------------

namespace {

// center = { z : z * e_k = 0 for all k }, computed by one linear solve
Subspace compute_center(const GradedAlgebra& alg) {
    RatField f = alg.field();
    std::size_t n = alg.dim();
    Mat<RatField> sys(n * n, n, f);
    for (std::size_t j = 0; j < n; ++j) { // unknown coordinate j of z
        for (std::size_t k = 0; k < n; ++k) {
            auto prod = *alg.product(alg.basis_vector(j), alg.basis_vector(k));
            for (std::size_t i = 0; i < n; ++i) sys.at(k * n + i, j) = prod[i];
        }
    }
    auto rr = rref_rank_nullspace(f, std::move(sys));
    return Subspace::span(n, alg.field_d, rr.nullspace);
}

bool even_element_nilpotent(const GradedAlgebra& alg, std::size_t idx) {
    // nilpotency of alpha inside the commutative algebra a0
    Vec power = alg.basis_vector(idx);
    for (std::size_t steps = 0; steps < alg.dim() + 1; ++steps) {
        bool zero = std::all_of(power.begin(), power.end(),
                                [](const Scalar& c) { return c.is_zero(); });
        if (zero) return true;
        power = *alg.product(power, alg.basis_vector(idx));
    }
    return false;
}

} // namespace

StructureReport analyze(const GradedAlgebra& alg) {
    if (alg.windowed()) throw WindowedInput("analyze needs a total algebra");
    RatField f = alg.field();
    StructureReport rep;
    auto evens = alg.even_indices();
    auto odds = alg.odd_indices();
    rep.rank = evens.size();

    // pencil: project odd*odd products on each even basis vector
    for (auto e : evens) {
        PencilForm pf;
        pf.even_index = e;
        pf.omega.assign(odds.size(), Vec(odds.size(), Scalar::zero(alg.field_d)));
        for (std::size_t a = 0; a < odds.size(); ++a)
            for (std::size_t b = 0; b < odds.size(); ++b) {
                auto prod = *alg.product(alg.basis_vector(odds[a]), alg.basis_vector(odds[b]));
                pf.omega[a][b] = prod[e];
            }
        Mat<RatField> m(odds.size(), odds.size(), f);
        for (std::size_t a = 0; a < odds.size(); ++a)
            for (std::size_t b = 0; b < odds.size(); ++b) m.at(a, b) = pf.omega[a][b];
        pf.rank = rref_rank_nullspace(f, std::move(m)).rank;
        rep.pencil.push_back(std::move(pf));
    }

    // kernel ideal: joint kernel of all pencil forms, lifted to ambient odd vectors
    {
        Mat<RatField> sys(rep.pencil.size() * odds.size(), odds.size(), f);
        for (std::size_t p = 0; p < rep.pencil.size(); ++p)
            for (std::size_t a = 0; a < odds.size(); ++a)
                for (std::size_t b = 0; b < odds.size(); ++b)
                    sys.at(p * odds.size() + a, b) = rep.pencil[p].omega[a][b];
        auto rr = rref_rank_nullspace(f, std::move(sys));
        std::vector<Vec> ambient;
        for (const auto& v : rr.nullspace) {
            Vec w = alg.zero_vector();
            for (std::size_t b = 0; b < odds.size(); ++b) w[odds[b]] = v[b];
            ambient.push_back(std::move(w));
        }
        rep.kernel_ideal = Subspace::span(alg.dim(), alg.field_d, ambient);
    }

    rep.center = compute_center(alg);

    // ample: odd products span a0
    {
        std::vector<Vec> prods;
        for (std::size_t a = 0; a < odds.size(); ++a)
            for (std::size_t b = 0; b < odds.size(); ++b)
                prods.push_back(*alg.product(alg.basis_vector(odds[a]), alg.basis_vector(odds[b])));
        Subspace spanod = Subspace::span(alg.dim(), alg.field_d, prods);
        std::size_t even_rank = 0;
        for (const auto& row : spanod.basis()) {
            bool nonzero_even = false;
            for (auto e : evens)
                if (!row[e].is_zero()) nonzero_even = true;
            if (nonzero_even) ++even_rank;
        }
        rep.ample = even_rank == evens.size();
    }

    // unit of a0: solve eps * beta = beta over the even basis
    {
        Mat<RatField> sys(evens.size() * alg.dim(), evens.size(), f);
        std::vector<Scalar> rhs(evens.size() * alg.dim(), Scalar::zero(alg.field_d));
        for (std::size_t col = 0; col < evens.size(); ++col)
            for (std::size_t bi = 0; bi < evens.size(); ++bi) {
                auto prod = *alg.product(alg.basis_vector(evens[col]), alg.basis_vector(evens[bi]));
                for (std::size_t i = 0; i < alg.dim(); ++i)
                    sys.at(bi * alg.dim() + i, col) = prod[i];
            }
        for (std::size_t bi = 0; bi < evens.size(); ++bi)
            rhs[bi * alg.dim() + evens[bi]] = Scalar::one(alg.field_d);
        auto sol = solve(f, sys, rhs);
        if (sol && !evens.empty()) {
            Vec unit = alg.zero_vector();
            for (std::size_t col = 0; col < evens.size(); ++col) unit[evens[col]] = (*sol)[col];
            // eigen-split of ad_unit on a1
            Mat<RatField> ad(odds.size(), odds.size(), f);
            for (std::size_t b = 0; b < odds.size(); ++b) {
                auto prod = *alg.product(unit, alg.basis_vector(odds[b]));
                for (std::size_t a = 0; a < odds.size(); ++a) ad.at(a, b) = prod[odds[a]];
            }
            auto eig = [&](const Scalar& lambda) {
                Mat<RatField> m = ad;
                for (std::size_t i = 0; i < odds.size(); ++i)
                    m.at(i, i) = m.at(i, i) - lambda;
                auto rr = rref_rank_nullspace(f, std::move(m));
                std::vector<Vec> ambient;
                for (const auto& v : rr.nullspace) {
                    Vec w = alg.zero_vector();
                    for (std::size_t b = 0; b < odds.size(); ++b) w[odds[b]] = v[b];
                    ambient.push_back(std::move(w));
                }
                return Subspace::span(alg.dim(), alg.field_d, ambient);
            };
            UnitalSplit us;
            us.unit = unit;
            us.half_eigenspace = eig(Scalar(1, 2));
            us.zero_eigenspace = eig(Scalar(0));
            rep.unital = std::move(us);
        }
    }

    rep.fingerprint.dims = alg.graded_dims();
    for (const auto& pf : rep.pencil) rep.fingerprint.pencil_ranks.insert(pf.rank);
    rep.fingerprint.center_dims = rep.center.dim() == 0
                                      ? std::make_pair(std::size_t{0}, std::size_t{0})
                                      : rep.center.graded_dims(alg.parities);
    rep.fingerprint.ample = rep.ample;
    for (auto e : evens) rep.fingerprint.even_generator_nilpotent.push_back(even_element_nilpotent(alg, e));
    return rep;
}

// --- simplicity ----------------------------------------------------------------

SimpleOutcome is_simple(const GradedAlgebra& alg, const std::vector<std::uint64_t>& primes) {
    if (alg.windowed()) throw WindowedInput("is_simple needs a total algebra");
    if (alg.dim() == 0) throw std::invalid_argument("is_simple needs a nonzero algebra");
    SimpleOutcome out;

    // cheap witnesses first
    auto report = analyze(alg);
    if (alg.dim() > 1 && report.center.dim() > 0) {
        auto ideal = closure(alg, report.center, ClosureMode::Ideal);
        if (ideal.dim() < alg.dim()) {
            out.kind = SimpleOutcome::Kind::NotSimple;
            out.witness = ideal;
            return out;
        }
    }
    if (report.kernel_ideal.dim() > 0 && report.kernel_ideal.dim() < alg.dim()) {
        out.kind = SimpleOutcome::Kind::NotSimple;
        out.witness = closure(alg, report.kernel_ideal, ClosureMode::Ideal);
        if (out.witness.dim() < alg.dim()) return out;
        out = SimpleOutcome{};
    }
    for (std::size_t i = 0; i < alg.dim(); ++i) {
        Subspace line = Subspace::span(alg.dim(), alg.field_d, {alg.basis_vector(i)});
        auto ideal = closure(alg, line, ClosureMode::Ideal);
        if (ideal.dim() < alg.dim()) {
            out.kind = SimpleOutcome::Kind::NotSimple;
            out.witness = ideal;
            return out;
        }
    }

    // mod-p certification via irreducibility of the multiplication module
    for (auto p : primes) {
        FqCtx ctx(2);
        try {
            ctx = make_reduction_ctx(alg.field_d, p);
        } catch (const BadPrime&) {
            continue;
        }
        FqField f{ctx};
        std::vector<Mat<FqField>> gens;
        bool bad = false;
        try {
            for (std::size_t i = 0; i < alg.dim() && !bad; ++i) {
                auto lm = alg.left_mult(alg.basis_vector(i));
                Mat<FqField> g(alg.dim(), alg.dim(), f);
                for (std::size_t r = 0; r < alg.dim(); ++r)
                    for (std::size_t c = 0; c < alg.dim(); ++c)
                        g.at(r, c) = reduce_mod(lm.at(r, c), ctx);
                gens.push_back(std::move(g));
            }
        } catch (const BadPrime&) {
            bad = true;
        }
        if (bad) continue;
        auto res = module_irreducible(f, gens, alg.dim());
        if (std::holds_alternative<Irreducible>(res)) {
            out.kind = SimpleOutcome::Kind::Simple;
            out.certifying_prime = p;
            return out;
        }
        if (auto* red = std::get_if<Reducible<FqField>>(&res)) {
            // try to lift the witness: use the integer coordinates of the mod-p
            // basis as exact vectors and close; a proper exact ideal decides
            std::vector<Vec> lifted;
            for (const auto& row : red->subspace) {
                Vec v = alg.zero_vector();
                for (std::size_t j = 0; j < alg.dim(); ++j) {
                    if (row[j].b != 0) { v.clear(); break; } // GF(p^2) part: skip lift
                    v[j] = Scalar(static_cast<long>(row[j].a)).with_tag(alg.field_d);
                }
                if (!v.empty()) lifted.push_back(std::move(v));
            }
            if (!lifted.empty()) {
                auto cand = closure(alg, Subspace::span(alg.dim(), alg.field_d, lifted),
                                    ClosureMode::Ideal);
                if (cand.dim() > 0 && cand.dim() < alg.dim()) {
                    out.kind = SimpleOutcome::Kind::NotSimple;
                    out.witness = cand;
                    return out;
                }
            }
        }
    }
    out.kind = SimpleOutcome::Kind::Unknown;
    return out;
}

// --- check_linear_map ------------------------------------------------------------

MapCheck check_linear_map(const SuperLinearMap& f, const GradedAlgebra& a, const GradedAlgebra& b,
                          MapKind kind) {
    if (kind == MapKind::Derivation && (&a != &b) && !a.same_structure(b))
        throw std::invalid_argument("derivation check needs one algebra");
    if (f.src_dim() != a.dim() || f.tgt_dim() != b.dim())
        throw std::invalid_argument("map shape does not match the algebras");
    f.validate();
    MapCheck out;
    out.pass = true;
    int pd = static_cast<int>(f.map_parity);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) {
            if (!a.defined(i, j)) {
                ++out.skipped;
                continue;
            }
            Vec xy = *a.product(a.basis_vector(i), a.basis_vector(j));
            Vec lhs = f.apply(xy);
            Vec rhs;
            if (kind == MapKind::Homomorphism) {
                auto prod = b.product(f.apply(a.basis_vector(i)), f.apply(a.basis_vector(j)));
                if (!prod) {
                    ++out.skipped;
                    continue;
                }
                rhs = *prod;
            } else {
                // D(x y) = D(x) y + (-1)^{p(D)p(x)} x D(y)
                auto t1 = b.product(f.apply(a.basis_vector(i)), a.basis_vector(j));
                auto t2 = b.product(a.basis_vector(i), f.apply(a.basis_vector(j)));
                if (!t1 || !t2) {
                    ++out.skipped;
                    continue;
                }
                rhs = *t1;
                int sign = (pd * static_cast<int>(a.parities[i])) % 2 ? -1 : 1;
                for (std::size_t k = 0; k < rhs.size(); ++k)
                    rhs[k] += sign == 1 ? (*t2)[k] : -(*t2)[k];
            }
            ++out.checked;
            if (lhs != rhs) {
                if (out.pass) {
                    out.witness = {i, j};
                    out.lhs = render(lhs);
                    out.rhs = render(rhs);
                }
                out.pass = false;
            }
        }
    return out;
}

} // namespace anti
