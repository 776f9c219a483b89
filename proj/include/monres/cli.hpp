#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "monres/json_io.hpp"

namespace monres {

// Parsed form of the input document {"variables":[...],"ideals":[[...]...]}.
struct InputSpec {
    ContextPtr ctx;
    std::vector<std::vector<Monomial>> ideals;
};

inline InputSpec parse_input(const Json& j) {
    require(j.is_object(), "input: expected a JSON object");
    require(j.contains("variables"), "input: schema: variables required");
    require(j.at("variables").is_array(), "input: variables must be an array");
    std::vector<std::string> names;
    std::size_t i = 0;
    for (const auto& v : j.at("variables")) {
        require(v.is_string(),
                "input: variables[" + std::to_string(i) + "]: expected a string");
        names.push_back(v.get<std::string>());
        ++i;
    }
    InputSpec spec;
    try {
        spec.ctx = make_context(std::move(names));
    } catch (const Error& e) {
        fail("input: variables: " + std::string(e.what()));
    }
    require(j.contains("ideals"), "input: schema: ideals required");
    require(j.at("ideals").is_array() && !j.at("ideals").empty(),
            "input: ideals must be a nonempty array");
    i = 0;
    for (const auto& row : j.at("ideals")) {
        std::string where = "ideals[" + std::to_string(i) + "]";
        require(row.is_array() && !row.empty(),
                "input: " + where + ": expected a nonempty array of monomials");
        std::vector<Monomial> ideal;
        std::size_t k = 0;
        for (const auto& g : row) {
            std::string gw = where + "[" + std::to_string(k) + "]";
            require(g.is_string(), "input: " + gw + ": expected a monomial string");
            try {
                ideal.push_back(parse_monomial(g.get<std::string>(), spec.ctx));
            } catch (const Error& e) {
                fail("input: " + gw + ": " + std::string(e.what()));
            }
            ++k;
        }
        spec.ideals.push_back(std::move(ideal));
        ++i;
    }
    return spec;
}

namespace detail {

struct CliOptions {
    std::string input;
    std::string out;
    std::string report_path;
    std::string construction = "taylor";
    std::string factor_resolution = "taylor";
    std::string sign_mode = "corrected";
    std::vector<std::string> checks;
    std::uint64_t seed = 42;
    std::size_t samples = 200;
    int max_divided_power = 3;
    std::string strand_mode = "lattice";
    std::int64_t box_bound = 4;
};

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open '" + path + "'");
    return Json::parse(in);
}

inline InputSpec load_input(const std::string& path) {
    return parse_input(read_json_file(path));
}

inline void write_text(const std::string& path, const std::string& text,
                       std::ostream& fallback) {
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream f(path);
    require(f.good(), "cannot write '" + path + "'");
    f << text;
}

inline ResolutionOptions strand_options(const CliOptions& opt) {
    ResolutionOptions o;
    o.mode = opt.strand_mode == "box" ? StrandMode::box : StrandMode::lattice;
    o.box_bound = opt.box_bound;
    return o;
}

inline AlgebraPtr build_algebra(const InputSpec& in, const CliOptions& opt) {
    int bound = opt.max_divided_power;
    require(bound >= 2, "max divided power must be at least 2");
    if (opt.sign_mode == "unsigned")
        require(opt.construction == "gen-taylor",
                "sign-mode unsigned applies to construction gen-taylor only");
    if (opt.construction == "taylor") {
        require(in.ideals.size() == 1, "construction taylor expects exactly one ideal");
        return std::make_shared<const DGGammaAlgebra>(taylor(in.ideals[0], bound));
    }
    if (opt.construction == "koszul") {
        require(in.ideals.size() == 1 && in.ideals[0].size() == 1,
                "construction koszul expects one principal ideal");
        return std::make_shared<const DGGammaAlgebra>(
            koszul_principal(in.ideals[0][0], bound));
    }
    require(in.ideals.size() >= 2,
            "construction " + opt.construction + " expects at least two ideals");
    std::vector<AlgebraPtr> factors;
    for (const auto& ideal : in.ideals) {
        if (opt.factor_resolution == "koszul") {
            require(ideal.size() == 1,
                    "factor-resolution koszul is only legal for principal ideals");
            factors.push_back(std::make_shared<const DGGammaAlgebra>(
                koszul_principal(ideal[0], bound)));
        } else {
            factors.push_back(
                std::make_shared<const DGGammaAlgebra>(taylor(ideal, bound)));
        }
    }
    if (opt.construction == "tensor")
        return std::make_shared<const DGGammaAlgebra>(
            tensor_product(std::move(factors), bound));
    SignMode sign = opt.sign_mode == "unsigned" ? SignMode::unsigned_products
                                                : SignMode::corrected;
    return std::make_shared<const DGGammaAlgebra>(
        star_product(std::move(factors), sign, bound));
}

// Checks a user may request for a construction kind.
inline std::vector<std::string> applicable_checks(ConstructionKind kind) {
    switch (kind) {
    case ConstructionKind::koszul: return {"d2", "resolution", "dg", "gamma"};
    case ConstructionKind::taylor:
        return {"d2", "resolution", "dg", "gamma", "maps", "scarf"};
    case ConstructionKind::tensor:
    case ConstructionKind::star:
        return {"d2", "resolution", "dg", "gamma", "maps"};
    }
    fail("unknown construction kind");
}

// What `all` expands to: the checks guaranteed to pass for the kind. Tensor
// resolution holds only for factors in disjoint variables and Scarf strand
// exactness only for generic ideals, so both stay opt-in; everything listed
// here is unconditional.
inline std::vector<std::string> default_checks(ConstructionKind kind) {
    switch (kind) {
    case ConstructionKind::koszul: return {"d2", "resolution", "dg", "gamma"};
    case ConstructionKind::taylor:
        return {"d2", "resolution", "dg", "gamma", "maps", "scarf"};
    case ConstructionKind::tensor: return {"d2", "dg", "gamma", "maps"};
    case ConstructionKind::star:
        return {"d2", "resolution", "dg", "gamma", "maps"};
    }
    fail("unknown construction kind");
}

// Map checks for a built construction. Taylor gets the isomorphism onto the
// generalized Taylor algebra of its Koszul factors; products get the
// tensor-to-star comparison map plus the factor inclusions.
inline void append_map_checks(const AlgebraPtr& alg, const CliOptions& opt, Report& r) {
    MapBudget budget;
    budget.samples = opt.samples;
    budget.seed = opt.seed;
    const ConstructionInfo& info = *alg->info;

    if (info.kind == ConstructionKind::taylor) {
        std::vector<AlgebraPtr> ks;
        for (const auto& g : info.generators)
            ks.push_back(std::make_shared<const DGGammaAlgebra>(
                koszul_principal(g, alg->gamma.bound)));
        AlgebraPtr st = std::make_shared<const DGGammaAlgebra>(
            star_product(std::move(ks), SignMode::corrected, alg->gamma.bound));
        ChainMap iso = taylor_iso(alg, st);
        for (MapProperty p : {MapProperty::chain, MapProperty::multiplicative,
                              MapProperty::gamma, MapProperty::iso})
            r.checks.push_back(check_map_property(iso, p, budget));

        CheckResult inv;
        inv.name = iso.name + ".inverse";
        Stopwatch timer;
        ChainMap back = invert_iso(iso);
        if (!is_identity(compose(back, iso)))
            inv.record("inverse after map", "composite", "identity");
        if (!is_identity(compose(iso, back)))
            inv.record("map after inverse", "composite", "identity");
        inv.seconds = timer.seconds();
        r.checks.push_back(std::move(inv));
        return;
    }

    require(info.kind == ConstructionKind::tensor || info.kind == ConstructionKind::star,
            "map checks need a taylor, tensor or gen-taylor construction");
    AlgebraPtr tensor_alg, star_alg;
    if (info.kind == ConstructionKind::tensor) {
        tensor_alg = alg;
        star_alg = std::make_shared<const DGGammaAlgebra>(
            star_product(info.factors, SignMode::corrected, alg->gamma.bound));
    } else {
        star_alg = alg;
        tensor_alg = std::make_shared<const DGGammaAlgebra>(
            tensor_product(info.factors, alg->gamma.bound));
    }
    ChainMap phi = comparison_map(tensor_alg, star_alg);
    for (MapProperty p : {MapProperty::chain, MapProperty::multiplicative,
                          MapProperty::gamma, MapProperty::loc_invertible})
        r.checks.push_back(check_map_property(phi, p, budget));
    for (std::size_t slot = 0; slot < info.factors.size(); ++slot) {
        ChainMap inc = inclusion_map(alg, slot);
        for (MapProperty p :
             {MapProperty::chain, MapProperty::multiplicative, MapProperty::gamma})
            r.checks.push_back(check_map_property(inc, p, budget));
    }
}

inline void append_scarf_checks(const AlgebraPtr& alg, const CliOptions& opt, Report& r,
                                bool with_resolution) {
    ScarfComplex s = scarf_subcomplex(alg);
    CheckResult d2 = check_d_squared(s.induced);
    d2.name = "scarf.d2";
    r.checks.push_back(std::move(d2));
    if (with_resolution) {
        CheckResult res = verify_resolution(s.induced, strand_options(opt));
        res.name = "scarf.resolution";
        r.checks.push_back(std::move(res));
    }
    r.checks.push_back(check_scarf_gamma(s, opt.max_divided_power));
}

inline int finish_report(Report& r, const CliOptions& opt, std::ostream& out) {
    print_report(r, out);
    if (!opt.report_path.empty())
        write_text(opt.report_path, dump_canonical(report_json(r)), out);
    return r.all_passed() ? 0 : 1;
}

inline int run_build(const CliOptions& opt, std::ostream& out) {
    AlgebraPtr alg = build_algebra(load_input(opt.input), opt);
    write_text(opt.out, dump_canonical(export_algebra_json(*alg)), out);
    return 0;
}

inline int run_verify(const CliOptions& opt, std::ostream& out) {
    AlgebraPtr alg = build_algebra(load_input(opt.input), opt);
    ConstructionKind kind = alg->info->kind;

    static const std::vector<std::string> known = {"d2",    "resolution", "dg",
                                                   "gamma", "maps",       "scarf"};
    std::vector<std::string> applicable = applicable_checks(kind);
    std::vector<std::string> run;
    auto add = [&run](const std::string& c) {
        if (std::find(run.begin(), run.end(), c) == run.end()) run.push_back(c);
    };
    std::vector<std::string> requested =
        opt.checks.empty() ? std::vector<std::string>{"all"} : opt.checks;
    for (const auto& req : requested) {
        if (req == "all") {
            for (const auto& c : default_checks(kind)) add(c);
            continue;
        }
        require(std::find(known.begin(), known.end(), req) != known.end(),
                "unknown check '" + req + "'");
        require(std::find(applicable.begin(), applicable.end(), req) != applicable.end(),
                "check '" + req + "' does not apply to construction '" +
                    opt.construction + "'");
        add(req);
    }

    Report r;
    r.command = "verify";
    r.seed = opt.seed;
    DgBudget dg_budget;
    dg_budget.assoc_samples = opt.samples;
    dg_budget.seed = opt.seed;
    GammaBudget gamma_budget;
    gamma_budget.samples = opt.samples;
    gamma_budget.seed = opt.seed;
    for (const auto& c : run) {
        if (c == "d2") {
            r.checks.push_back(check_d_squared(alg->cx));
        } else if (c == "resolution") {
            r.checks.push_back(verify_resolution(alg->cx, strand_options(opt)));
        } else if (c == "dg") {
            for (auto& res : check_all_dg(*alg, dg_budget)) r.checks.push_back(std::move(res));
        } else if (c == "gamma") {
            for (auto& res : check_all_gamma(*alg, gamma_budget))
                r.checks.push_back(std::move(res));
        } else if (c == "maps") {
            append_map_checks(alg, opt, r);
        } else {
            append_scarf_checks(alg, opt, r, false);
        }
    }
    return finish_report(r, opt, out);
}

inline int run_scarf(const CliOptions& opt, std::ostream& out) {
    InputSpec in = load_input(opt.input);
    require(in.ideals.size() == 1, "scarf expects exactly one ideal");
    AlgebraPtr t = std::make_shared<const DGGammaAlgebra>(
        taylor(in.ideals[0], opt.max_divided_power));
    ScarfComplex s = scarf_subcomplex(t);

    Report r;
    r.command = "scarf";
    r.seed = opt.seed;
    CheckResult d2 = check_d_squared(s.induced);
    d2.name = "scarf.d2";
    r.checks.push_back(std::move(d2));
    CheckResult res = verify_resolution(s.induced, strand_options(opt));
    res.name = "scarf.resolution";
    r.checks.push_back(std::move(res));
    r.checks.push_back(check_scarf_gamma(s, opt.max_divided_power));

    if (!opt.out.empty())
        write_text(opt.out, dump_canonical(export_complex_json(s.induced, in.ideals[0])),
                   out);
    return finish_report(r, opt, out);
}

inline std::string rank_string(const std::vector<std::size_t>& ranks) {
    std::string s = "(";
    for (std::size_t i = 0; i < ranks.size(); ++i)
        s += (i ? ", " : "") + std::to_string(ranks[i]);
    return s + ")";
}

inline int run_compare(const CliOptions& opt, std::ostream& out) {
    InputSpec in = load_input(opt.input);
    require(in.ideals.size() == 1, "compare expects exactly one ideal");
    int bound = opt.max_divided_power;
    AlgebraPtr t = std::make_shared<const DGGammaAlgebra>(taylor(in.ideals[0], bound));
    std::vector<AlgebraPtr> ks;
    for (const auto& g : in.ideals[0])
        ks.push_back(std::make_shared<const DGGammaAlgebra>(koszul_principal(g, bound)));
    AlgebraPtr st = std::make_shared<const DGGammaAlgebra>(
        star_product(std::move(ks), SignMode::corrected, bound));

    Report r;
    r.command = "compare";
    r.seed = opt.seed;

    CheckResult ranks;
    ranks.name = "compare.ranks";
    Stopwatch rank_timer;
    if (t->cx.ranks() != st->cx.ranks())
        ranks.record("homological ranks", rank_string(t->cx.ranks()),
                     rank_string(st->cx.ranks()));
    else
        ranks.notes.push_back("both sides have ranks " + rank_string(t->cx.ranks()));
    ranks.seconds = rank_timer.seconds();
    r.checks.push_back(std::move(ranks));

    ChainMap iso = taylor_iso(t, st);
    MapBudget budget;
    budget.samples = opt.samples;
    budget.seed = opt.seed;
    for (MapProperty p : {MapProperty::chain, MapProperty::multiplicative,
                          MapProperty::gamma, MapProperty::iso})
        r.checks.push_back(check_map_property(iso, p, budget));

    CheckResult inv;
    inv.name = iso.name + ".inverse";
    Stopwatch inv_timer;
    ChainMap back = invert_iso(iso);
    if (!is_identity(compose(back, iso)))
        inv.record("inverse after map", "composite", "identity");
    if (!is_identity(compose(iso, back)))
        inv.record("map after inverse", "composite", "identity");
    inv.seconds = inv_timer.seconds();
    r.checks.push_back(std::move(inv));

    if (!opt.out.empty()) {
        std::vector<CheckResult> props(r.checks.begin() + 1, r.checks.end());
        write_text(opt.out, dump_canonical(export_chainmap_json(iso, props)), out);
    }
    return finish_report(r, opt, out);
}

inline int run_export(const CliOptions& opt, std::ostream& out) {
    Json j = read_json_file(opt.input);
    require(j.is_object() && j.contains("kind"), "export: document needs a kind");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "dg_gamma_algebra") {
        DGGammaAlgebra alg = import_algebra_json(j);
        write_text(opt.out, dump_canonical(export_algebra_json(alg)), out);
        return 0;
    }
    if (kind == "complex") {
        FreeComplex cx = import_complex_json(j);
        std::optional<std::vector<Monomial>> scarf_of;
        if (j.contains("scarf_of")) {
            std::vector<Monomial> gens;
            for (const auto& g : j.at("scarf_of").at("generators"))
                gens.push_back(parse_monomial(g.get<std::string>(), cx.ctx));
            scarf_of = std::move(gens);
        }
        write_text(opt.out, dump_canonical(export_complex_json(cx, scarf_of)), out);
        return 0;
    }
    fail("export: unsupported kind '" + kind + "'");
}

// Fixed regression instance: two Taylor factors with interleaved variable
// supports, so odd basis elements from different slots anticommute.
inline int run_demo_sign(const CliOptions& opt, std::ostream& out) {
    ContextPtr ctx = make_context({"x", "y", "z", "w"});
    std::vector<Monomial> i1 = {parse_monomial("x*y", ctx), parse_monomial("y*z", ctx)};
    std::vector<Monomial> i2 = {parse_monomial("z*w", ctx), parse_monomial("w*x", ctx)};
    auto star_of = [&](SignMode sign) {
        std::vector<AlgebraPtr> fs = {
            std::make_shared<const DGGammaAlgebra>(taylor(i1, opt.max_divided_power)),
            std::make_shared<const DGGammaAlgebra>(taylor(i2, opt.max_divided_power))};
        return std::make_shared<const DGGammaAlgebra>(
            star_product(std::move(fs), sign, opt.max_divided_power));
    };
    AlgebraPtr corrected = star_of(SignMode::corrected);
    AlgebraPtr unsigned_alg = star_of(SignMode::unsigned_products);

    DgBudget budget;
    budget.assoc_samples = opt.samples;
    budget.seed = opt.seed;

    Report r;
    r.command = "demo-sign";
    r.seed = opt.seed;
    for (DgAxiom ax : {DgAxiom::graded_comm, DgAxiom::leibniz}) {
        CheckResult c = check_dg_axiom(*corrected, ax, budget);
        c.name = "corrected." + c.name.substr(3); // strip the "dg." prefix
        r.checks.push_back(std::move(c));
    }

    CheckResult regression;
    regression.name = "unsigned.regression";
    Stopwatch timer;
    std::size_t unsigned_failures = 0;
    for (DgAxiom ax : {DgAxiom::graded_comm, DgAxiom::leibniz}) {
        CheckResult c = check_dg_axiom(*unsigned_alg, ax, budget);
        std::string axiom = c.name.substr(3);
        if (c.passed()) continue;
        ++unsigned_failures;
        const Violation& v = c.violations.front();
        regression.notes.push_back("unsigned " + axiom + " fails at " + v.location +
                                   ": " + v.lhs + " vs " + v.rhs);
    }
    if (unsigned_failures == 0)
        regression.record("unsigned product", "graded_comm and leibniz pass",
                          "at least one failure expected");
    regression.seconds = timer.seconds();
    r.checks.push_back(std::move(regression));

    // The counterexample pair: the first factor's e_{1} against the second's.
    auto show = [&out](const AlgebraPtr& a, const std::string& mode) {
        auto index = monres::detail::tuple_index(a->cx);
        BasisId left = index.at({1, 0});
        BasisId right = index.at({0, 1});
        const FreeComplex& cx = a->cx;
        auto fmt = [&cx](BasisId v, BasisId w) {
            return "(" + cx.elem(v).name + ")*(" + cx.elem(w).name + ")";
        };
        out << mode << ": " << fmt(left, right) << " = "
            << to_string(cx, multiply(*a, cx.basis_element(left), cx.basis_element(right)))
            << "\n";
        out << mode << ": " << fmt(right, left) << " = "
            << to_string(cx, multiply(*a, cx.basis_element(right), cx.basis_element(left)))
            << "\n";
    };
    out << "odd products in the two sign modes:\n";
    show(corrected, "corrected");
    show(unsigned_alg, "unsigned ");
    return finish_report(r, opt, out);
}

} // namespace detail

// Entry point shared by the binary and the tests. Returns the process exit
// code: 0 all checks passed, 1 at least one violation, 2 usage or input error.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact checks for multigraded resolutions with divided powers"};
    app.require_subcommand(1);
    detail::CliOptions opt;

    auto add_input = [&opt](CLI::App* cmd) {
        cmd->add_option("--input", opt.input, "input JSON file")->required();
    };
    auto add_build_flags = [&opt, &add_input](CLI::App* cmd) {
        add_input(cmd);
        cmd->add_option("--construction", opt.construction,
                        "taylor, koszul, tensor or gen-taylor")
            ->check(CLI::IsMember({"taylor", "koszul", "tensor", "gen-taylor"}));
        cmd->add_option("--factor-resolution", opt.factor_resolution,
                        "resolution used for each ideal of a product construction")
            ->check(CLI::IsMember({"taylor", "koszul"}));
        cmd->add_option("--sign-mode", opt.sign_mode,
                        "product signs for gen-taylor; unsigned reproduces the "
                        "classical sign error")
            ->check(CLI::IsMember({"corrected", "unsigned"}));
        cmd->add_option("--max-divided-power", opt.max_divided_power,
                        "largest stored divided power exponent");
    };
    auto add_check_flags = [&opt](CLI::App* cmd) {
        cmd->add_option("--seed", opt.seed, "seed for all randomized checks");
        cmd->add_option("--samples", opt.samples, "sample count for randomized checks");
        cmd->add_option("--report", opt.report_path, "write the JSON report to this file");
    };
    auto add_strand_flags = [&opt](CLI::App* cmd) {
        cmd->add_option("--strand-mode", opt.strand_mode,
                        "multidegrees checked for exactness: lcm lattice or a box")
            ->check(CLI::IsMember({"lattice", "box"}));
        cmd->add_option("--box-bound", opt.box_bound, "exponent bound in box mode");
    };

    CLI::App* build = app.add_subcommand("build", "construct a resolution and export it");
    add_build_flags(build);
    build->add_option("--out", opt.out, "output file (default stdout)");

    CLI::App* verify =
        app.add_subcommand("verify", "construct a resolution and run check suites");
    add_build_flags(verify);
    verify
        ->add_option("--checks", opt.checks,
                     "comma separated: d2,resolution,dg,gamma,maps,scarf,all")
        ->delimiter(',');
    add_check_flags(verify);
    add_strand_flags(verify);

    CLI::App* scarf_cmd =
        app.add_subcommand("scarf", "extract and check the Scarf subcomplex");
    add_input(scarf_cmd);
    scarf_cmd->add_option("--max-divided-power", opt.max_divided_power,
                          "largest divided power probed for vanishing");
    scarf_cmd->add_option("--out", opt.out, "export the induced complex to this file");
    add_check_flags(scarf_cmd);
    add_strand_flags(scarf_cmd);

    CLI::App* compare = app.add_subcommand(
        "compare", "match a Taylor resolution against the generalized Taylor "
                   "algebra of its Koszul factors");
    add_input(compare);
    compare->add_option("--max-divided-power", opt.max_divided_power,
                        "largest stored divided power exponent");
    compare->add_option("--out", opt.out, "export the isomorphism to this file");
    add_check_flags(compare);

    CLI::App* export_cmd =
        app.add_subcommand("export", "re-canonicalize a stored complex or algebra");
    add_input(export_cmd);
    export_cmd->add_option("--out", opt.out, "output file (default stdout)");

    CLI::App* demo = app.add_subcommand(
        "demo-sign", "show the corrected and uncorrected product signs side by side");
    add_check_flags(demo);
    demo->add_option("--max-divided-power", opt.max_divided_power,
                     "largest stored divided power exponent");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (build->parsed()) return detail::run_build(opt, out);
        if (verify->parsed()) return detail::run_verify(opt, out);
        if (scarf_cmd->parsed()) return detail::run_scarf(opt, out);
        if (compare->parsed()) return detail::run_compare(opt, out);
        if (export_cmd->parsed()) return detail::run_export(opt, out);
        if (demo->parsed()) return detail::run_demo_sign(opt, out);
        err << "error: no command given\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace monres
