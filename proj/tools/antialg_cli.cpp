// Command-line front end: algebra construction, axiom checks, structure
// analysis, derivations, bridge superalgebras, central extensions,
// representation checks, canonical bivectors, and the geometry self-test.
//
// Exit codes: 0 success / clean, 1 mathematical violation found, 2 usage or
// input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "anti/axioms.hpp"
#include "anti/bridge.hpp"
#include "anti/catalog.hpp"
#include "anti/extensions.hpp"
#include "anti/grassmann.hpp"
#include "anti/io.hpp"
#include "anti/reps.hpp"

using nlohmann::json;

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw anti::ParseError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit_error(const std::string& kind, const std::string& message) {
    json err;
    err["error"] = kind;
    err["message"] = message;
    std::cout << anti::canonical_dump(err) << "\n";
}

json bivector_json(const anti::LinearBivector& lb) {
    json out;
    out["source"] = lb.source_name;
    json terms = json::array();
    const auto& ring = lb.field.ring();
    std::size_t ne = ring->even_names.size();
    for (const auto& [dirs, coeff] : lb.field.terms()) {
        for (const auto& [m, c] : coeff.terms()) {
            json term;
            term["coeff"] = c.str();
            json evens = json::array();
            for (auto e : m.exp) evens.push_back(e);
            json odds = json::array();
            for (std::size_t j = 0; j < ring->odd_names.size(); ++j)
                if (m.mask & (1u << j)) odds.push_back(j);
            term["monomial"] = {{"even", evens}, {"odd", odds}};
            json wedge = json::array();
            for (int dir : dirs)
                wedge.push_back(dir < static_cast<int>(ne)
                                    ? "d/d" + ring->even_names[dir]
                                    : "d/d" + ring->odd_names[dir - ne]);
            term["wedge"] = wedge;
            terms.push_back(term);
        }
    }
    out["terms"] = terms;
    return out;
}

std::string bivector_latex(const anti::LinearBivector& lb) {
    const auto& ring = lb.field.ring();
    std::size_t ne = ring->even_names.size();
    std::ostringstream os;
    bool first = true;
    for (const auto& [dirs, coeff] : lb.field.terms()) {
        for (const auto& [m, c] : coeff.terms()) {
            os << (first ? "" : " + ") << c.str();
            first = false;
            for (std::size_t i = 0; i < m.exp.size(); ++i)
                if (m.exp[i] != 0) {
                    os << " " << ring->even_names[i];
                    if (m.exp[i] != 1) os << "^{" << m.exp[i] << "}";
                }
            for (std::size_t j = 0; j < ring->odd_names.size(); ++j)
                if (m.mask & (1u << j)) os << " \\" << "tau_{" << ring->odd_names[j] << "}";
            for (int dir : dirs) {
                std::string nm = dir < static_cast<int>(ne) ? ring->even_names[dir]
                                                            : ring->odd_names[dir - ne];
                os << " \\partial_{" << nm << "}";
            }
        }
    }
    return first ? "0" : os.str();
}

int geometry_selftest(long N) {
    using namespace anti;
    int failures = 0;
    auto report = [&](const std::string& name, bool ok, const std::string& note = "") {
        std::cout << (ok ? "pass" : "FAIL") << "  " << name;
        if (!note.empty()) std::cout << "  [" << note << "]";
        std::cout << "\n";
        if (!ok) ++failures;
    };

    auto r21 = ring_k21();
    auto lam = odd_bivector(r21);
    auto poi = poisson_bivector(r21);
    auto fields = osp12_fields(r21);

    // order-1 bracket tables
    auto vp = GrassmannPoly::var_even(r21, 0), vq = GrassmannPoly::var_even(r21, 1);
    auto vt = GrassmannPoly::var_odd(r21, 0);
    auto obr = [&](const GrassmannPoly& f, const GrassmannPoly& g) {
        return bracket_from_bivector(lam, f, g, BracketConvention::Odd);
    };
    auto pbr = [&](const GrassmannPoly& f, const GrassmannPoly& g) {
        return bracket_from_bivector(poi, f, g, BracketConvention::Even);
    };
    report("odd bracket order-1 table",
           obr(vp, vq) == vt.scaled(Scalar(1, 2)) && obr(vp, vt) == vp.scaled(Scalar(1, 2)) &&
               obr(vq, vt) == vq.scaled(Scalar(1, 2)) && obr(vt, vt) == vt);
    report("even bracket order-1 table",
           pbr(vp, vq) == GrassmannPoly::constant(r21, Scalar(1)) &&
               pbr(vt, vt) == GrassmannPoly::constant(r21, Scalar(1)) &&
               pbr(vp, vt).is_zero() && pbr(vq, vt).is_zero());

    bool inv = true;
    for (const auto& x : fields)
        if (!lie_derivative(x, lam).is_zero() || !lie_derivative(x, poi).is_zero()) inv = false;
    report("osp(1|2) preserves both canonical bivectors", inv);

    auto proportional = [](const PolyVectorField& a, const PolyVectorField& b) {
        if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
        const auto& [dirs, coeff] = *b.terms().begin();
        auto it = a.terms().find(dirs);
        if (it == a.terms().end()) return false;
        const auto& [m, c] = *coeff.terms().begin();
        auto jt = it->second.terms().find(m);
        if (jt == it->second.terms().end()) return false;
        return a == b.scaled(jt->second / c);
    };
    auto odd_space = invariant_bivector_space(fields, Parity::Odd, r21);
    auto even_space = invariant_bivector_space(fields, Parity::Even, r21);
    report("invariant odd bivector space is one line spanned by Lambda",
           odd_space.size() == 1 && proportional(odd_space[0], lam));
    report("invariant even bivector space is one line spanned by the Poisson bivector",
           even_space.size() == 1 && proportional(even_space[0], poi));

    // Known normalization mismatches between the order-1 bracket tables (the
    // engine's calibration) and the tabulated infinite families: the odd-odd
    // realizations land at 1/2 resp. 2 times the tabulated constants. Those
    // two lines are verified to deviate by exactly that ratio.
    auto rr = realize_brackets(N);
    for (const auto& line : rr.lines) {
        std::ostringstream note;
        note << line.matched << "/" << line.checked;
        if (line.uniform_ratio) note << " (uniform ratio " << line.uniform_ratio->str() << ")";
        bool ok;
        if (line.family == "antibracket a*a")
            ok = line.uniform_ratio && *line.uniform_ratio == Scalar(1, 2);
        else if (line.family == "poisson xi*xi")
            ok = line.uniform_ratio && *line.uniform_ratio == Scalar(2);
        else
            ok = line.exact();
        report("realization: " + line.family, ok, note.str());
    }
    std::cout << (failures ? "geometry self-test: FAIL\n" : "geometry self-test: ok\n");
    return failures ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computer algebra for graded commutative antialgebras"};
    app.require_subcommand(1);

    std::string name, input, rep_input, format = "json", type_str = "I", primes_str;
    long n = 1, N = 1, kappa = 1, q = 0;

    auto* cmd_builtin = app.add_subcommand("builtin", "emit a named algebra as JSON");
    cmd_builtin->add_option("name", name)->required();
    cmd_builtin->add_option("--n", n);
    cmd_builtin->add_option("--N", N);
    cmd_builtin->add_option("--kappa", kappa);
    cmd_builtin->add_option("--q", q);

    auto* cmd_check = app.add_subcommand("check", "run the antialgebra identity checks");
    cmd_check->add_option("file", input)->required();

    auto* cmd_analyze = app.add_subcommand("analyze", "structure report");
    cmd_analyze->add_option("file", input)->required();
    cmd_analyze->add_option("--simple-primes", primes_str,
                            "comma-separated primes enabling the simplicity check");

    auto* cmd_der = app.add_subcommand("der", "derivation algebra bracket table");
    cmd_der->add_option("file", input)->required();

    auto* cmd_ga = app.add_subcommand("ga", "bridge superalgebra bracket table");
    cmd_ga->add_option("file", input)->required();

    auto* cmd_ext = app.add_subcommand("ext", "central extension cocycle space");
    cmd_ext->add_option("file", input)->required();
    cmd_ext->add_option("--type", type_str)->check(CLI::IsMember({"I", "II"}));

    auto* cmd_rep = app.add_subcommand("rep", "representation checks");
    auto* cmd_rep_check = cmd_rep->add_subcommand("check", "verify a representation file");
    cmd_rep_check->add_option("algebra", input)->required();
    cmd_rep_check->add_option("representation", rep_input)->required();

    auto* cmd_biv = app.add_subcommand("bivector", "canonical odd bivector of an algebra");
    cmd_biv->add_option("file", input)->required();
    cmd_biv->add_option("--format", format)->check(CLI::IsMember({"json", "latex", "text"}));

    auto* cmd_geo = app.add_subcommand("geometry-selftest", "symplectic verification battery");
    cmd_geo->add_option("--N", N);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_builtin->parsed()) {
            auto alg = anti::builtin(name, {.n = n, .N = N, .kappa = kappa, .q = q});
            std::cout << anti::algebra_to_string(alg) << "\n";
            return 0;
        }
        if (cmd_check->parsed()) {
            auto alg = anti::algebra_from_string(read_input(input));
            auto rep = anti::check_antialgebra(alg);
            std::cout << anti::canonical_dump(anti::axiom_report_to_json(rep)) << "\n";
            return rep.overall_pass ? 0 : 1;
        }
        if (cmd_analyze->parsed()) {
            auto alg = anti::algebra_from_string(read_input(input));
            auto rep = anti::analyze(alg);
            json out = anti::structure_report_to_json(alg, rep);
            if (!primes_str.empty()) {
                std::vector<std::uint64_t> primes;
                std::stringstream ss(primes_str);
                std::string tok;
                while (std::getline(ss, tok, ',')) primes.push_back(std::stoull(tok));
                auto simple = anti::is_simple(alg, primes);
                json sj;
                sj["verdict"] = simple.kind == anti::SimpleOutcome::Kind::Simple      ? "simple"
                                : simple.kind == anti::SimpleOutcome::Kind::NotSimple ? "not_simple"
                                                                                      : "unknown";
                if (simple.kind == anti::SimpleOutcome::Kind::Simple)
                    sj["prime"] = simple.certifying_prime;
                if (simple.kind == anti::SimpleOutcome::Kind::NotSimple) {
                    json rows = json::array();
                    for (const auto& row : simple.witness.basis()) {
                        json jr = json::array();
                        for (const auto& c : row) jr.push_back(c.str());
                        rows.push_back(jr);
                    }
                    sj["ideal_witness"] = rows;
                }
                out["simplicity"] = sj;
            }
            std::cout << anti::canonical_dump(out) << "\n";
            return 0;
        }
        if (cmd_der->parsed()) {
            auto alg = anti::algebra_from_string(read_input(input));
            auto der = anti::compute_der(alg);
            std::cout << anti::algebra_to_string(der.bracket_algebra) << "\n";
            return 0;
        }
        if (cmd_ga->parsed()) {
            auto alg = anti::algebra_from_string(read_input(input));
            auto ga = anti::build_ga(alg);
            std::cout << anti::algebra_to_string(ga.superalgebra) << "\n";
            return 0;
        }
        if (cmd_ext->parsed()) {
            auto alg = anti::algebra_from_string(read_input(input));
            auto type = type_str == "I" ? anti::ExtType::I : anti::ExtType::II;
            auto space = anti::cocycle_space(alg, type);
            json out;
            out["type"] = type_str;
            out["dimZ"] = space.dim_z();
            out["dimB"] = space.dim_b();
            out["dimH"] = space.dim_h();
            json zb = json::array();
            for (const auto& row : space.cocycles.basis()) {
                json jr = json::array();
                for (const auto& c : row) jr.push_back(c.str());
                zb.push_back(jr);
            }
            out["Z_basis"] = zb;
            std::cout << anti::canonical_dump(out) << "\n";
            return 0;
        }
        if (cmd_rep_check->parsed()) {
            auto alg = anti::algebra_from_string(read_input(input));
            json rj = json::parse(read_input(rep_input));
            if (!rj.contains("algebra")) rj["algebra"] = anti::algebra_to_json(alg);
            auto rep = anti::representation_from_json(rj);
            if (!rep.algebra.same_structure(alg))
                throw anti::ParseError("representation file names a different algebra");
            auto check = anti::check_representation(rep);
            json out;
            out["pass"] = check.pass;
            out["checked"] = check.checked;
            out["skipped"] = check.skipped;
            if (check.witness) out["witness"] = {check.witness->first, check.witness->second};
            if (!check.detail.empty()) out["detail"] = check.detail;
            std::cout << anti::canonical_dump(out) << "\n";
            return check.pass ? 0 : 1;
        }
        if (cmd_biv->parsed()) {
            auto alg = anti::algebra_from_string(read_input(input));
            auto lb = anti::lambda_of_algebra(alg);
            if (format == "json")
                std::cout << anti::canonical_dump(bivector_json(lb)) << "\n";
            else if (format == "latex")
                std::cout << bivector_latex(lb) << "\n";
            else
                std::cout << lb.field.str() << "\n";
            return 0;
        }
        if (cmd_geo->parsed()) return geometry_selftest(N);
    } catch (const anti::ParseError& e) {
        emit_error("parse", e.what());
        return 2;
    } catch (const nlohmann::json::exception& e) {
        emit_error("parse", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        emit_error("input", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return 2;
    }
    return 2;
}
