#pragma once

#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "monres/chainmaps.hpp"
#include "monres/scarf.hpp"

namespace monres {

using Json = nlohmann::json;

// Canonical serialization: object keys sorted, arrays in basis id and table
// order, scalars as decimal strings, multidegrees as exponent vectors.
// Re-exporting an imported document reproduces it byte for byte.
inline std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

namespace detail {

inline Json mono_json(const Monomial& m) { return Json(m.exponents()); }

inline Monomial mono_from_json(const Json& j, const ContextPtr& ctx,
                               const std::string& where) {
    require(j.is_array(), "json: " + where + ": expected an exponent vector");
    return Monomial(ctx, j.get<std::vector<std::int64_t>>());
}

inline Json coeff_json(const Rational& c, const Monomial& m) {
    Json j;
    j["den"] = denominator(c).str();
    j["mono"] = mono_json(m);
    j["num"] = numerator(c).str();
    return j;
}

inline std::pair<Rational, Monomial> coeff_from_json(const Json& j, const ContextPtr& ctx,
                                                     const std::string& where) {
    require(j.is_object() && j.contains("num") && j.contains("den") && j.contains("mono"),
            "json: " + where + ": coefficient needs num, den and mono");
    Rational c = rational_from_strings(j.at("num").get<std::string>(),
                                       j.at("den").get<std::string>());
    require(c != 0, "json: " + where + ": zero coefficient stored");
    return {c, mono_from_json(j.at("mono"), ctx, where)};
}

inline const char* label_kind_name(LabelKind k) {
    switch (k) {
    case LabelKind::unit: return "unit";
    case LabelKind::subset: return "subset";
    case LabelKind::slot: return "slot";
    case LabelKind::tuple: return "tuple";
    }
    fail("json: unknown label kind");
}

inline LabelKind label_kind_from(const std::string& s, const std::string& where) {
    if (s == "unit") return LabelKind::unit;
    if (s == "subset") return LabelKind::subset;
    if (s == "slot") return LabelKind::slot;
    if (s == "tuple") return LabelKind::tuple;
    fail("json: " + where + ": unknown label kind '" + s + "'");
}

inline Json basis_json(const FreeComplex& cx) {
    Json rows = Json::array();
    for (const auto& b : cx.basis) {
        Json label;
        if (!b.label.indices.empty()) label["indices"] = b.label.indices;
        label["kind"] = label_kind_name(b.label.kind);
        Json row;
        row["hdeg"] = b.hdeg;
        row["id"] = b.id;
        row["label"] = std::move(label);
        row["mdeg"] = mono_json(b.mdeg);
        row["name"] = b.name;
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json diff_json(const FreeComplex& cx) {
    Json rows = Json::array();
    for (const auto& b : cx.basis)
        for (const auto& [tid, coeff] : cx.diff[static_cast<std::size_t>(b.id)].terms())
            for (const auto& [m, c] : coeff.terms()) {
                Json row;
                row["coeff"] = coeff_json(c, m);
                row["from"] = b.id;
                row["to"] = tid;
                rows.push_back(std::move(row));
            }
    return rows;
}

inline Json augmentation_json(const FreeComplex& cx) {
    Json rows = Json::array();
    for (const auto& g : cx.augmentation) rows.push_back(mono_json(g));
    return rows;
}

inline void complex_body_from_json(const Json& j, FreeComplex& cx) {
    require(j.contains("variables") && j.at("variables").is_array(),
            "json: missing variables array");
    std::vector<std::string> names;
    for (const auto& v : j.at("variables")) {
        require(v.is_string(), "json: variables must be strings");
        names.push_back(v.get<std::string>());
    }
    cx.ctx = make_context(names);

    require(j.contains("basis") && j.at("basis").is_array(), "json: missing basis array");
    for (const auto& row : j.at("basis")) {
        BasisId id = row.at("id").get<BasisId>();
        std::string where = "basis id " + std::to_string(id);
        const Json& label_row = row.at("label");
        BasisLabel label;
        label.kind = label_kind_from(label_row.at("kind").get<std::string>(), where);
        if (label_row.contains("indices"))
            label.indices = label_row.at("indices").get<std::vector<int>>();
        std::string name = row.contains("name") ? row.at("name").get<std::string>()
                                                : "b" + std::to_string(id);
        cx.basis.push_back({id, row.at("hdeg").get<int>(),
                            mono_from_json(row.at("mdeg"), cx.ctx, where),
                            std::move(label), std::move(name)});
    }

    cx.diff.resize(cx.basis.size());
    require(j.contains("diff") && j.at("diff").is_array(), "json: missing diff array");
    std::set<std::tuple<BasisId, BasisId, std::vector<std::int64_t>>> seen;
    for (const auto& row : j.at("diff")) {
        BasisId from = row.at("from").get<BasisId>();
        BasisId to = row.at("to").get<BasisId>();
        cx.elem(from);
        auto [c, m] = coeff_from_json(row.at("coeff"), cx.ctx,
                                      "diff row " + std::to_string(from) + " -> " +
                                          std::to_string(to));
        require(seen.insert({from, to, m.exponents()}).second,
                "json: duplicate diff row " + std::to_string(from) + " -> " +
                    std::to_string(to));
        cx.diff[static_cast<std::size_t>(from)].add_term(to, c, m);
    }

    if (j.contains("augmentation")) {
        std::size_t i = 0;
        for (const auto& g : j.at("augmentation"))
            cx.augmentation.push_back(
                mono_from_json(g, cx.ctx, "augmentation[" + std::to_string(i++) + "]"));
    }
}

} // namespace detail

// Optional nested description of how an algebra was constructed; absent when
// any part of it was assembled by hand. Generators are written as monomial
// strings, mirroring the ideal input format.
inline std::optional<Json> construction_json(const DGGammaAlgebra& alg) {
    if (!alg.info.has_value()) return std::nullopt;
    const ConstructionInfo& info = *alg.info;
    Json j;
    switch (info.kind) {
    case ConstructionKind::koszul:
        j["gamma_bound"] = alg.gamma.bound;
        j["generator"] = to_string(info.generators.at(0));
        j["kind"] = "koszul";
        return j;
    case ConstructionKind::taylor: {
        Json gens = Json::array();
        for (const auto& g : info.generators) gens.push_back(to_string(g));
        j["gamma_bound"] = alg.gamma.bound;
        j["generators"] = std::move(gens);
        j["kind"] = "taylor";
        return j;
    }
    case ConstructionKind::tensor:
    case ConstructionKind::star: {
        Json factors = Json::array();
        for (const auto& f : info.factors) {
            std::optional<Json> fj = construction_json(*f);
            if (!fj.has_value()) return std::nullopt;
            factors.push_back(std::move(*fj));
        }
        j["factors"] = std::move(factors);
        j["gamma_bound"] = alg.gamma.bound;
        j["kind"] = info.kind == ConstructionKind::tensor ? "tensor" : "generalized";
        if (info.kind == ConstructionKind::star)
            j["sign_mode"] =
                info.sign == SignMode::unsigned_products ? "unsigned" : "corrected";
        return j;
    }
    }
    fail("json: unknown construction kind");
}

inline DGGammaAlgebra algebra_from_construction_json(const Json& c, const ContextPtr& ctx) {
    require(c.is_object() && c.contains("kind"), "json: construction needs a kind");
    std::string kind = c.at("kind").get<std::string>();
    int bound = c.contains("gamma_bound") ? c.at("gamma_bound").get<int>() : 3;
    if (kind == "koszul")
        return koszul_principal(parse_monomial(c.at("generator").get<std::string>(), ctx),
                                bound);
    if (kind == "taylor") {
        std::vector<Monomial> gens;
        for (const auto& g : c.at("generators"))
            gens.push_back(parse_monomial(g.get<std::string>(), ctx));
        return taylor(gens, bound);
    }
    if (kind == "tensor" || kind == "generalized") {
        std::vector<AlgebraPtr> factors;
        for (const auto& f : c.at("factors"))
            factors.push_back(std::make_shared<const DGGammaAlgebra>(
                algebra_from_construction_json(f, ctx)));
        if (kind == "tensor") return tensor_product(std::move(factors), bound);
        SignMode sign = SignMode::corrected;
        if (c.contains("sign_mode")) {
            std::string s = c.at("sign_mode").get<std::string>();
            require(s == "corrected" || s == "unsigned",
                    "json: unknown sign mode '" + s + "'");
            if (s == "unsigned") sign = SignMode::unsigned_products;
        }
        return star_product(std::move(factors), sign, bound);
    }
    fail("json: unknown construction kind '" + kind + "'");
}

inline Json export_algebra_json(const DGGammaAlgebra& alg) {
    Json j;
    j["augmentation"] = detail::augmentation_json(alg.cx);
    j["basis"] = detail::basis_json(alg.cx);
    if (std::optional<Json> c = construction_json(alg)) j["construction"] = std::move(*c);
    j["diff"] = detail::diff_json(alg.cx);

    Json gamma = Json::array();
    for (const auto& [key, img] : alg.gamma.entries)
        for (const auto& [tid, coeff] : img.terms())
            for (const auto& [m, c] : coeff.terms()) {
                Json row;
                row["coeff"] = detail::coeff_json(c, m);
                row["from"] = key.first;
                row["k"] = key.second;
                row["to"] = tid;
                gamma.push_back(std::move(row));
            }
    j["gamma"] = std::move(gamma);
    j["gamma_bound"] = alg.gamma.bound;
    j["kind"] = "dg_gamma_algebra";

    Json mul = Json::array();
    for (const auto& [key, img] : alg.mul.entries)
        for (const auto& [tid, coeff] : img.terms())
            for (const auto& [m, c] : coeff.terms()) {
                Json row;
                row["coeff"] = detail::coeff_json(c, m);
                row["left"] = key.first;
                row["right"] = key.second;
                row["to"] = tid;
                mul.push_back(std::move(row));
            }
    j["mul"] = std::move(mul);
    j["unit"] = alg.mul.unit;
    j["variables"] = alg.cx.ctx->names();
    return j;
}

// A complex on its own, optionally marked as the Scarf subcomplex of the
// Taylor resolution of the given generators.
inline Json export_complex_json(const FreeComplex& cx,
                                const std::optional<std::vector<Monomial>>& scarf_of =
                                    std::nullopt) {
    Json j;
    j["augmentation"] = detail::augmentation_json(cx);
    j["basis"] = detail::basis_json(cx);
    j["diff"] = detail::diff_json(cx);
    j["kind"] = "complex";
    if (scarf_of.has_value()) {
        Json gens = Json::array();
        for (const auto& g : *scarf_of) gens.push_back(to_string(g));
        j["scarf_of"] = Json{{"generators", std::move(gens)}};
    }
    j["variables"] = cx.ctx->names();
    return j;
}

// Imports rebuild before they trust: a document carrying a construction (or
// scarf_of) descriptor is rebuilt from the descriptor alone and must then
// re-export byte-identically; documents without a descriptor are assembled
// from the stored tables and fully validated.
inline DGGammaAlgebra import_algebra_json(const Json& j) {
    require(j.is_object() && j.contains("kind") &&
                j.at("kind").get<std::string>() == "dg_gamma_algebra",
            "json: expected kind 'dg_gamma_algebra'");
    if (j.contains("construction")) {
        require(j.contains("variables") && j.at("variables").is_array(),
                "json: missing variables array");
        ContextPtr ctx = make_context(j.at("variables").get<std::vector<std::string>>());
        DGGammaAlgebra alg = algebra_from_construction_json(j.at("construction"), ctx);
        require(dump_canonical(export_algebra_json(alg)) == dump_canonical(j),
                "json: stored tables do not match the construction descriptor");
        return alg;
    }

    DGGammaAlgebra alg;
    detail::complex_body_from_json(j, alg.cx);
    alg.mul.unit = j.at("unit").get<BasisId>();
    require(j.contains("mul") && j.at("mul").is_array(), "json: missing mul array");
    std::set<std::tuple<BasisId, BasisId, BasisId, std::vector<std::int64_t>>> seen;
    for (const auto& row : j.at("mul")) {
        BasisId left = row.at("left").get<BasisId>();
        BasisId right = row.at("right").get<BasisId>();
        BasisId to = row.at("to").get<BasisId>();
        auto [c, m] = detail::coeff_from_json(row.at("coeff"), alg.cx.ctx,
                                              "mul row " + std::to_string(left) + " * " +
                                                  std::to_string(right));
        require(seen.insert({left, right, to, m.exponents()}).second,
                "json: duplicate mul row " + std::to_string(left) + " * " +
                    std::to_string(right));
        alg.mul.entries[{left, right}].add_term(to, c, m);
    }
    alg.gamma.bound = j.contains("gamma_bound") ? j.at("gamma_bound").get<int>() : 3;
    if (j.contains("gamma")) {
        std::set<std::tuple<BasisId, int, BasisId, std::vector<std::int64_t>>> gseen;
        for (const auto& row : j.at("gamma")) {
            BasisId from = row.at("from").get<BasisId>();
            int k = row.at("k").get<int>();
            BasisId to = row.at("to").get<BasisId>();
            auto [c, m] = detail::coeff_from_json(row.at("coeff"), alg.cx.ctx,
                                                  "gamma row " + std::to_string(from) +
                                                      "^(" + std::to_string(k) + ")");
            require(gseen.insert({from, k, to, m.exponents()}).second,
                    "json: duplicate gamma row " + std::to_string(from) + "^(" +
                        std::to_string(k) + ")");
            alg.gamma.entries[{from, k}].add_term(to, c, m);
        }
    }
    alg.validate();
    return alg;
}

inline FreeComplex import_complex_json(const Json& j) {
    require(j.is_object() && j.contains("kind") &&
                j.at("kind").get<std::string>() == "complex",
            "json: expected kind 'complex'");
    if (j.contains("scarf_of")) {
        require(j.contains("variables") && j.at("variables").is_array(),
                "json: missing variables array");
        ContextPtr ctx = make_context(j.at("variables").get<std::vector<std::string>>());
        std::vector<Monomial> gens;
        for (const auto& g : j.at("scarf_of").at("generators"))
            gens.push_back(parse_monomial(g.get<std::string>(), ctx));
        ScarfComplex s =
            scarf_subcomplex(std::make_shared<const DGGammaAlgebra>(taylor(gens)));
        require(dump_canonical(export_complex_json(s.induced, gens)) == dump_canonical(j),
                "json: stored tables do not match the scarf descriptor");
        return s.induced;
    }
    FreeComplex cx;
    detail::complex_body_from_json(j, cx);
    cx.validate();
    return cx;
}

// Machine-readable report: {command, seed, checks:[{name, status,
// violations}]}, no timings, so identical runs give identical documents.
inline Json report_json(const Report& r) {
    Json j;
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json row;
        row["name"] = c.name;
        row["status"] = c.passed() ? "pass" : "fail";
        Json vs = Json::array();
        for (const auto& v : c.violations) {
            Json vr;
            vr["lhs"] = v.lhs;
            vr["location"] = v.location;
            vr["rhs"] = v.rhs;
            vs.push_back(std::move(vr));
        }
        row["violations"] = std::move(vs);
        checks.push_back(std::move(row));
    }
    j["checks"] = std::move(checks);
    j["command"] = r.command;
    j["seed"] = r.seed;
    return j;
}

inline Json export_chainmap_json(const ChainMap& f,
                                 const std::vector<CheckResult>& properties = {}) {
    Json j;
    Json images = Json::array();
    for (const auto& [id, img] : f.images) {
        Json terms = Json::array();
        for (const auto& [tid, coeff] : img.terms())
            for (const auto& [m, c] : coeff.terms()) {
                Json t;
                t["coeff"] = detail::coeff_json(c, m);
                t["to"] = tid;
                terms.push_back(std::move(t));
            }
        Json row;
        row["from"] = id;
        row["terms"] = std::move(terms);
        images.push_back(std::move(row));
    }
    j["images"] = std::move(images);
    j["kind"] = "chain_map";
    j["name"] = f.name;
    Json props = Json::array();
    for (const auto& p : properties) {
        Json row;
        row["name"] = p.name;
        row["status"] = p.passed() ? "pass" : "fail";
        props.push_back(std::move(row));
    }
    j["properties_checked"] = std::move(props);
    std::optional<Json> src = construction_json(*f.source);
    std::optional<Json> tgt = construction_json(*f.target);
    j["source_ref"] = src.has_value() ? *src : Json(nullptr);
    j["target_ref"] = tgt.has_value() ? *tgt : Json(nullptr);
    return j;
}

} // namespace monres
