#include "anti/catalog.hpp"

namespace anti {

namespace {

void put(GradedAlgebra& alg, std::size_t i, std::size_t j, std::size_t k, Scalar c) {
    if (i > j) {
        bool both_odd = alg.parities[i] == Parity::Odd && alg.parities[j] == Parity::Odd;
        bool flip = alg.bracket ? !both_odd : both_odd;
        if (flip) c = -c;
        std::swap(i, j);
    }
    alg.table[{i, j}].push_back({k, std::move(c)});
}

GradedAlgebra make_k3() {
    GradedAlgebra a;
    a.name = "k3";
    a.labels = {"eps", "a", "b"};
    a.parities = {Parity::Even, Parity::Odd, Parity::Odd};
    put(a, 0, 0, 0, Scalar(1));
    put(a, 0, 1, 1, Scalar(1, 2));
    put(a, 0, 2, 2, Scalar(1, 2));
    put(a, 1, 2, 0, Scalar(1, 2));
    a.validate();
    return a;
}

GradedAlgebra make_ah(long n) {
    if (n < 1) throw BadParams("ah needs n >= 1");
    GradedAlgebra a;
    a.name = "ah" + std::to_string(n);
    a.labels = {"alpha"};
    a.parities = {Parity::Even};
    for (long i = 1; i <= n; ++i) {
        a.labels.push_back("a_" + std::to_string(i));
        a.parities.push_back(Parity::Odd);
    }
    for (long i = 1; i <= n; ++i) {
        a.labels.push_back("b_" + std::to_string(i));
        a.parities.push_back(Parity::Odd);
    }
    for (long i = 1; i <= n; ++i) put(a, i, n + i, 0, Scalar(1));
    a.validate();
    return a;
}

GradedAlgebra make_ah_twisted(long kappa) {
    if (kappa != 1 && kappa != -1) throw BadParams("ah_twisted needs kappa = +1 or -1");
    GradedAlgebra a;
    a.name = kappa == 1 ? "ah_twisted+" : "ah_twisted-";
    a.labels = {"alpha", "a", "b"};
    a.parities = {Parity::Even, Parity::Odd, Parity::Odd};
    put(a, 1, 2, 0, Scalar(1));        // a*b = alpha
    put(a, 0, 1, 2, Scalar(kappa));    // alpha*a = kappa b
    a.validate();
    return a;
}

GradedAlgebra make_aaf(long n) {
    if (n < 1) throw BadParams("aaf needs n >= 1");
    GradedAlgebra a;
    a.name = "aaf" + std::to_string(n);
    a.labels = {"eps"};
    a.parities = {Parity::Even};
    for (long i = 1; i <= n; ++i) {
        a.labels.push_back("a_" + std::to_string(i));
        a.parities.push_back(Parity::Odd);
    }
    put(a, 0, 0, 0, Scalar(1));
    for (long i = 1; i <= n; ++i) put(a, 0, i, i, Scalar(1, 2));
    a.validate();
    return a;
}

GradedAlgebra make_ah_hat() {
    GradedAlgebra a;
    a.name = "ah_hat";
    a.labels = {"alpha", "a", "b", "z"};
    a.parities = {Parity::Even, Parity::Odd, Parity::Odd, Parity::Odd};
    put(a, 1, 2, 0, Scalar(1)); // a*b = alpha
    put(a, 0, 1, 3, Scalar(1)); // alpha*a = z
    a.validate();
    return a;
}

GradedAlgebra make_ah_hat_hat() {
    GradedAlgebra a;
    a.name = "ah_hat_hat";
    a.labels = {"alpha", "a", "b", "z_1", "z_2"};
    a.parities = {Parity::Even, Parity::Odd, Parity::Odd, Parity::Odd, Parity::Odd};
    put(a, 1, 2, 0, Scalar(1)); // a*b = alpha
    put(a, 0, 1, 3, Scalar(1)); // alpha*a = z1
    put(a, 0, 2, 4, Scalar(1)); // alpha*b = z2
    a.validate();
    return a;
}

GradedAlgebra make_b2() {
    GradedAlgebra a;
    a.name = "b2";
    a.labels = {"alpha", "a", "b"};
    a.parities = {Parity::Even, Parity::Odd, Parity::Odd};
    put(a, 0, 1, 2, Scalar(1)); // alpha*a = b, ad_alpha nilpotent of order 2
    a.validate();
    return a;
}

GradedAlgebra make_abelian(long n, long q) {
    if (n < 0 || q < 0) throw BadParams("abelian needs nonnegative dims");
    GradedAlgebra a;
    a.name = "abelian" + std::to_string(n) + "|" + std::to_string(q);
    for (long i = 1; i <= n; ++i) {
        a.labels.push_back("e_" + std::to_string(i));
        a.parities.push_back(Parity::Even);
    }
    for (long i = 1; i <= q; ++i) {
        a.labels.push_back("o_" + std::to_string(i));
        a.parities.push_back(Parity::Odd);
    }
    a.validate();
    return a;
}

GradedAlgebra make_dual_numbers() {
    GradedAlgebra a;
    a.name = "dual_numbers";
    a.labels = {"one", "t"};
    a.parities = {Parity::Even, Parity::Even};
    put(a, 0, 0, 0, Scalar(1));
    put(a, 0, 1, 1, Scalar(1));
    a.validate();
    return a;
}

GradedAlgebra make_gauss() {
    GradedAlgebra a;
    a.name = "gauss";
    a.labels = {"one", "i"};
    a.parities = {Parity::Even, Parity::Even};
    put(a, 0, 0, 0, Scalar(1));
    put(a, 0, 1, 1, Scalar(1));
    put(a, 1, 1, 0, Scalar(-1));
    a.validate();
    return a;
}

// eps_n for |n| <= 2N (or 0..2N), a_{2i} for odd 2i in the window
GradedAlgebra make_ak1(long N, bool plus) {
    if (N < 1) throw BadParams("ak1 needs N >= 1");
    GradedAlgebra a;
    a.name = plus ? "ak1_plus" : "ak1";
    long elo = plus ? 0 : -2 * N, ehi = 2 * N;
    long olo = plus ? -1 : -(2 * N - 1), ohi = 2 * N - 1;
    std::map<long, std::size_t> eidx, oidx;
    for (long n = elo; n <= ehi; ++n) {
        eidx[n] = a.labels.size();
        a.labels.push_back("eps_" + std::to_string(n));
        a.parities.push_back(Parity::Even);
    }
    for (long t = olo; t <= ohi; t += 2) {
        oidx[t] = a.labels.size();
        a.labels.push_back("a_" + std::to_string(t));
        a.parities.push_back(Parity::Odd);
    }
    a.window = Window{plus ? "ak1_plus" : "ak1", N};
    // eps_n * eps_m = eps_{n+m}
    for (auto [n, i] : eidx)
        for (auto [m, j] : eidx) {
            if (i > j) continue;
            if (eidx.count(n + m)) put(a, i, j, eidx[n + m], Scalar(1));
        }
    // eps_n * a_{2i} = 1/2 a_{2(n+i)}
    for (auto [n, i] : eidx)
        for (auto [t, j] : oidx)
            if (oidx.count(2 * n + t)) put(a, i, j, oidx[2 * n + t], Scalar(1, 2));
    // a_{2i} * a_{2j} = (j - i) eps_{i+j}
    for (auto [s, i] : oidx)
        for (auto [t, j] : oidx) {
            if (i >= j) continue;
            long coeff2 = t - s; // 2(j - i)
            if (eidx.count((s + t) / 2))
                put(a, i, j, eidx[(s + t) / 2], Scalar(coeff2, 2));
        }
    a.validate();
    return a;
}

// x_n for |n| <= 2N, xi_{2i} for odd |2i| <= 2N
GradedAlgebra make_kk1(long N) {
    if (N < 1) throw BadParams("kk1 needs N >= 1");
    GradedAlgebra a;
    a.name = "kk1";
    a.bracket = true;
    std::map<long, std::size_t> xidx, qidx;
    for (long n = -2 * N; n <= 2 * N; ++n) {
        xidx[n] = a.labels.size();
        a.labels.push_back("x_" + std::to_string(n));
        a.parities.push_back(Parity::Even);
    }
    for (long t = -(2 * N - 1); t <= 2 * N - 1; t += 2) {
        qidx[t] = a.labels.size();
        a.labels.push_back("xi_" + std::to_string(t));
        a.parities.push_back(Parity::Odd);
    }
    a.window = Window{"k1", N};
    // [x_n, x_m] = (m - n) x_{n+m}
    for (auto [n, i] : xidx)
        for (auto [m, j] : xidx) {
            if (i >= j) continue;
            if (xidx.count(n + m) && m != n) put(a, i, j, xidx[n + m], Scalar(m - n));
        }
    // [x_n, xi_{2i}] = (i - n/2) xi_{2i+2n} ; coefficient stored as (2i - n)/2
    for (auto [n, i] : xidx)
        for (auto [t, j] : qidx)
            if (qidx.count(t + 2 * n) && t != n) put(a, i, j, qidx[t + 2 * n], Scalar(t - n, 2));
    // [xi_{2i}, xi_{2j}] = x_{i+j}
    for (auto [s, i] : qidx)
        for (auto [t, j] : qidx) {
            if (i > j) continue;
            if (xidx.count((s + t) / 2)) put(a, i, j, xidx[(s + t) / 2], Scalar(1));
        }
    a.validate();
    return a;
}

GradedAlgebra make_osp12() {
    // bracket table of the superalgebra built on K3: basis (a.a, a.b, b.b; a, b)
    GradedAlgebra g;
    g.name = "osp12";
    g.bracket = true;
    g.labels = {"a.a", "a.b", "b.b", "a", "b"};
    g.parities = {Parity::Even, Parity::Even, Parity::Even, Parity::Odd, Parity::Odd};
    const std::size_t U = 0, W = 1, V = 2, A = 3, B = 4;
    put(g, U, W, U, Scalar(1, 2));  // [a.a, a.b] = 1/2 a.a
    put(g, V, W, V, Scalar(-1, 2)); // [b.b, a.b] = -1/2 b.b
    put(g, U, V, W, Scalar(1));     // [a.a, b.b] = a.b
    put(g, U, B, A, Scalar(1, 2));  // [a.a, b] = 1/2 a
    put(g, V, A, B, Scalar(-1, 2)); // [b.b, a] = -1/2 b
    put(g, W, A, A, Scalar(-1, 4)); // [a.b, a] = -1/4 a
    put(g, W, B, B, Scalar(1, 4));  // [a.b, b] = 1/4 b
    put(g, A, A, U, Scalar(1));     // [a, a] = a.a
    put(g, A, B, W, Scalar(1));     // [a, b] = a.b
    put(g, B, B, V, Scalar(1));     // [b, b] = b.b
    g.validate();
    return g;
}

} // namespace

GradedAlgebra builtin(const std::string& name, const BuiltinParams& p) {
    if (name == "k3") return make_k3();
    if (name == "k3c") {
        auto out = compose(ComposeMode::TensorCommutative, make_k3(), make_gauss());
        out.name = "k3c";
        return out;
    }
    if (name == "ak1") return make_ak1(p.N, false);
    if (name == "ak1_plus") return make_ak1(p.N, true);
    if (name == "kk1") return make_kk1(p.N);
    if (name == "osp12") return make_osp12();
    if (name == "ah") return make_ah(p.n);
    if (name == "ah_twisted") return make_ah_twisted(p.kappa);
    if (name == "aaf") return make_aaf(p.n);
    if (name == "ah_hat") return make_ah_hat();
    if (name == "ah_hat_hat") return make_ah_hat_hat();
    if (name == "b2") return make_b2();
    if (name == "abelian") return make_abelian(p.n, p.q);
    if (name == "dual_numbers") return make_dual_numbers();
    if (name == "gauss") return make_gauss();
    throw UnknownName("unknown builtin: " + name);
}

std::vector<GradedAlgebra> catalog_property_set() {
    std::vector<GradedAlgebra> out;
    out.push_back(builtin("k3"));
    out.push_back(builtin("k3c"));
    for (long n = 1; n <= 3; ++n) out.push_back(builtin("ah", {.n = n}));
    out.push_back(builtin("ah_twisted", {.kappa = 1}));
    out.push_back(builtin("ah_twisted", {.kappa = -1}));
    for (long n = 1; n <= 3; ++n) out.push_back(builtin("aaf", {.n = n}));
    out.push_back(builtin("ah_hat"));
    out.push_back(builtin("ah_hat_hat"));
    out.push_back(builtin("b2"));
    out.push_back(builtin("abelian", {.n = 0, .q = 2}));
    return out;
}

} // namespace anti
