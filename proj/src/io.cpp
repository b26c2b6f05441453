#include "anti/io.hpp"

namespace anti {

using nlohmann::json;

json algebra_to_json(const GradedAlgebra& alg) {
    json j;
    j["name"] = alg.name;
    if (alg.field_d == 0)
        j["field"] = {{"kind", "Q"}};
    else
        j["field"] = {{"kind", "Qsqrt"}, {"d", alg.field_d}};
    j["basis"] = json::array();
    for (std::size_t i = 0; i < alg.dim(); ++i)
        j["basis"].push_back({{"label", alg.labels[i]}, {"parity", static_cast<int>(alg.parities[i])}});
    j["products"] = json::array();
    for (const auto& [key, terms] : alg.table) {
        if (terms.empty()) continue;
        json cell;
        cell["i"] = key.first;
        cell["j"] = key.second;
        cell["terms"] = json::array();
        for (const auto& t : terms)
            if (!t.c.is_zero()) cell["terms"].push_back({{"k", t.k}, {"c", t.c.str()}});
        if (!cell["terms"].empty()) j["products"].push_back(cell);
    }
    if (alg.window)
        j["window"] = {{"kind", alg.window->kind}, {"N", alg.window->N}};
    else
        j["window"] = nullptr;
    if (alg.bracket) j["bracket"] = true;
    return j;
}

GradedAlgebra algebra_from_json(const json& j) {
    try {
        GradedAlgebra alg;
        alg.name = j.value("name", "");
        if (j.contains("field")) {
            const auto& f = j.at("field");
            std::string kind = f.at("kind").get<std::string>();
            if (kind == "Q")
                alg.field_d = 0;
            else if (kind == "Qsqrt")
                alg.field_d = f.at("d").get<long>();
            else
                throw ParseError("unknown field kind: " + kind);
        }
        for (const auto& b : j.at("basis")) {
            alg.labels.push_back(b.at("label").get<std::string>());
            int p = b.at("parity").get<int>();
            if (p != 0 && p != 1) throw ParseError("parity must be 0 or 1");
            alg.parities.push_back(static_cast<Parity>(p));
        }
        if (j.contains("products"))
            for (const auto& cell : j.at("products")) {
                std::size_t i = cell.at("i").get<std::size_t>();
                std::size_t jj = cell.at("j").get<std::size_t>();
                if (i > jj) throw ParseError("products must be stored with i <= j");
                std::vector<Term> terms;
                for (const auto& t : cell.at("terms"))
                    terms.push_back({t.at("k").get<std::size_t>(),
                                     Scalar::parse(t.at("c").get<std::string>(), alg.field_d)});
                if (alg.table.count({i, jj})) throw ParseError("duplicate product cell");
                alg.table[{i, jj}] = std::move(terms);
            }
        if (j.contains("window") && !j.at("window").is_null()) {
            Window w;
            w.kind = j.at("window").at("kind").get<std::string>();
            w.N = j.at("window").at("N").get<long>();
            alg.window = w;
        }
        alg.bracket = j.value("bracket", false);
        alg.validate();
        return alg;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad algebra JSON: ") + e.what());
    }
}

std::string canonical_dump(const json& j) { return j.dump(2); }

std::string algebra_to_string(const GradedAlgebra& alg) { return canonical_dump(algebra_to_json(alg)); }

GradedAlgebra algebra_from_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("parse: ") + e.what());
    }
    return algebra_from_json(j);
}

json identity_report_to_json(const IdentityReport& r) {
    json j;
    j["identity"] = r.identity;
    j["status"] = r.status == IdentityStatus::Pass     ? "pass"
                  : r.status == IdentityStatus::Fail   ? "fail"
                                                       : "partial";
    j["checked"] = r.checked;
    j["skipped"] = r.skipped;
    if (r.witness)
        j["witness"] = {(*r.witness)[0], (*r.witness)[1], (*r.witness)[2]};
    else
        j["witness"] = nullptr;
    if (r.witness) {
        j["lhs"] = r.lhs;
        j["rhs"] = r.rhs;
    }
    return j;
}

json axiom_report_to_json(const AxiomReport& r) {
    json j;
    j["identities"] = json::array();
    for (const auto* rep : r.all()) j["identities"].push_back(identity_report_to_json(*rep));
    j["overall"] = r.overall_pass ? "pass" : "fail";
    return j;
}

json super_report_to_json(const SuperReport& r) {
    json j;
    j["identities"] = {identity_report_to_json(r.anticommutativity),
                       identity_report_to_json(r.jacobi)};
    j["overall"] = r.overall_pass ? "pass" : "fail";
    return j;
}

json structure_report_to_json(const GradedAlgebra& alg, const StructureReport& r) {
    json j;
    auto [p, q] = alg.graded_dims();
    j["dims"] = {p, q};
    j["rank"] = r.rank;
    j["pencil"] = json::array();
    for (const auto& pf : r.pencil) {
        json form;
        form["even_basis"] = alg.labels[pf.even_index];
        form["rank"] = pf.rank;
        json rows = json::array();
        for (const auto& row : pf.omega) {
            json jr = json::array();
            for (const auto& c : row) jr.push_back(c.str());
            rows.push_back(jr);
        }
        form["omega"] = rows;
        j["pencil"].push_back(form);
    }
    auto subspace_json = [&](const Subspace& s) {
        json rows = json::array();
        for (const auto& row : s.basis()) {
            json jr = json::array();
            for (const auto& c : row) jr.push_back(c.str());
            rows.push_back(jr);
        }
        return rows;
    };
    j["kernel_ideal"] = subspace_json(r.kernel_ideal);
    j["center"] = subspace_json(r.center);
    j["ample"] = r.ample;
    if (r.unital) {
        json u;
        json unit = json::array();
        for (const auto& c : r.unital->unit) unit.push_back(c.str());
        u["unit"] = unit;
        u["half_eigenspace"] = subspace_json(r.unital->half_eigenspace);
        u["zero_eigenspace"] = subspace_json(r.unital->zero_eigenspace);
        j["unital"] = u;
    } else {
        j["unital"] = nullptr;
    }
    json fp;
    fp["dims"] = {r.fingerprint.dims.first, r.fingerprint.dims.second};
    fp["pencil_ranks"] = r.fingerprint.pencil_ranks;
    fp["center_dims"] = {r.fingerprint.center_dims.first, r.fingerprint.center_dims.second};
    fp["ample"] = r.fingerprint.ample;
    fp["even_generator_nilpotent"] = r.fingerprint.even_generator_nilpotent;
    j["fingerprint"] = fp;
    return j;
}

} // namespace anti
