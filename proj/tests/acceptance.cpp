// Acceptance gate: one line per criterion, exit 0 only if every one passes.
// Each criterion rebuilds what it needs from the public API so a failure
// names the first broken expectation rather than a downstream symptom.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "monres/cli.hpp"

using namespace monres;

namespace {

int failures = 0;

struct Checker {
    bool ok = true;
    std::string detail;
    void expect(bool cond, const std::string& what) {
        if (cond) return;
        ok = false;
        if (detail.empty()) detail = what;
    }
};

void criterion(int n, const std::string& what, const std::function<void(Checker&)>& body) {
    Checker c;
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %d: %s\n", c.ok ? "PASS" : "FAIL", n, what.c_str());
    if (!c.ok) {
        std::printf("      first failure: %s\n", c.detail.c_str());
        ++failures;
    }
}

AlgebraPtr owned(DGGammaAlgebra alg) {
    return std::make_shared<const DGGammaAlgebra>(std::move(alg));
}

Monomial m(const ContextPtr& ctx, const char* text) { return parse_monomial(text, ctx); }

std::string ranks_text(const std::vector<std::size_t>& r) {
    std::string s = "(";
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
    return s + ")";
}

bool passes(Checker& c, const CheckResult& r) {
    c.expect(r.passed() && r.violation_count == 0,
             r.name + ": " + (r.violations.empty()
                                  ? "failed"
                                  : r.violations.front().location + ": " +
                                        r.violations.front().lhs + " vs " +
                                        r.violations.front().rhs));
    return r.passed();
}

std::filesystem::path tmp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("monres_acceptance_" + name);
}

void spit(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

int main() {
    // shared instances
    auto ctx2 = make_context({"x", "y"});
    auto ctx3 = make_context({"x", "y", "z"});
    auto ctx4 = make_context({"x", "y", "z", "w"});
    std::vector<Monomial> gens2 = {m(ctx2, "x^2"), m(ctx2, "x*y"), m(ctx2, "y^3")};
    std::vector<Monomial> gens3 = {m(ctx3, "x*y"), m(ctx3, "y*z"), m(ctx3, "z*x")};

    AlgebraPtr taylor2 = owned(taylor(gens2));
    AlgebraPtr split_a = owned(taylor({m(ctx2, "x^2"), m(ctx2, "x*y")}));
    AlgebraPtr split_b = owned(taylor({m(ctx2, "y^3")}));
    AlgebraPtr herzog = owned(star_product({split_a, split_b}, SignMode::corrected));

    AlgebraPtr edge_a = owned(taylor({m(ctx4, "x*y"), m(ctx4, "y*z")}));
    AlgebraPtr edge_b = owned(taylor({m(ctx4, "z*w"), m(ctx4, "w*x")}));
    std::vector<AlgebraPtr> edge_factors = {edge_a, edge_b};
    AlgebraPtr star_good = owned(star_product(edge_factors, SignMode::corrected));
    AlgebraPtr star_flawed = owned(star_product(edge_factors, SignMode::unsigned_products));
    AlgebraPtr tensor_edges = owned(tensor_product(edge_factors));

    criterion(1, "Taylor algebra of (x^2, xy, y^3): ranks, exactness, DG and divided power axioms",
              [&](Checker& c) {
        c.expect(taylor2->cx.ranks() == std::vector<std::size_t>{1, 3, 3, 1},
                 "ranks " + ranks_text(taylor2->cx.ranks()) + " != (1,3,3,1)");
        passes(c, check_d_squared(taylor2->cx));
        CheckResult res = verify_resolution(taylor2->cx);
        passes(c, res);
        c.expect(!res.notes.empty() && res.notes.front() == "7 strands checked",
                 "expected an exactness check over exactly 7 strands");
        c.expect(taylor2->cx.basis.size() == 8, "expected the 8-element subset basis");
        std::vector<CheckResult> dg = check_all_dg(*taylor2);
        c.expect(dg.size() == 5, "expected five DG axiom checks");
        for (const CheckResult& r : dg) passes(c, r);
        std::vector<CheckResult> gam = check_all_gamma(*taylor2);
        c.expect(gam.size() == 6, "expected six divided power axiom checks");
        for (const CheckResult& r : gam) passes(c, r);
    });

    criterion(2, "star of Taylor((x^2, xy)) and Taylor((y^3)) resolves R/(x^2, xy, y^3) with convolved ranks",
              [&](Checker& c) {
        c.expect(herzog->cx.augmentation == gens2,
                 "augmentation is not (x^2, xy, y^3)");
        passes(c, check_d_squared(herzog->cx));
        passes(c, verify_resolution(herzog->cx));
        std::vector<std::size_t> a = split_a->cx.ranks(); // (1,2,1)
        std::vector<std::size_t> b = split_b->cx.ranks(); // (1,1)
        std::vector<std::size_t> conv(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) conv[i + j] += a[i] * b[j];
        c.expect(conv == std::vector<std::size_t>{1, 3, 3, 1},
                 "(1,2,1)*(1,1) convolution came out as " + ranks_text(conv));
        c.expect(herzog->cx.ranks() == conv,
                 "star ranks " + ranks_text(herzog->cx.ranks()) + " != convolution " +
                     ranks_text(conv));
    });

    criterion(3, "corrected signs pass graded commutativity and Leibniz where the unsigned product fails",
              [&](Checker& c) {
        passes(c, check_dg_axiom(*star_good, DgAxiom::graded_comm));
        passes(c, check_dg_axiom(*star_good, DgAxiom::leibniz));

        CheckResult comm = check_dg_axiom(*star_flawed, DgAxiom::graded_comm);
        CheckResult leib = check_dg_axiom(*star_flawed, DgAxiom::leibniz);
        c.expect(!comm.passed() || !leib.passed(),
                 "unsigned product unexpectedly satisfies both axioms");
        const CheckResult& broken = comm.passed() ? leib : comm;
        c.expect(!broken.violations.empty() && !broken.violations.front().location.empty() &&
                     !broken.violations.front().lhs.empty() &&
                     !broken.violations.front().rhs.empty(),
                 "violation does not name the basis pair with both sides");

        // the witness pair: the two odd singletons living in different slots
        auto index = detail::tuple_index(star_good->cx);
        BasisId left = index.at({1, 0});
        BasisId right = index.at({0, 1});
        ModuleElement a = star_good->cx.basis_element(left);
        ModuleElement b = star_good->cx.basis_element(right);
        ModuleElement ab = multiply(*star_good, a, b);
        ModuleElement ba = multiply(*star_good, b, a);
        c.expect(!ab.is_zero(), "witness product vanishes");
        c.expect(ab == -ba, "corrected products do not differ exactly by sign");
        ModuleElement ab_flawed = multiply(*star_flawed, a, b);
        ModuleElement ba_flawed = multiply(*star_flawed, b, a);
        c.expect(ab_flawed == ba_flawed && ab == ab_flawed,
                 "unsigned products should agree with each other and with ab");
    });

    criterion(4, "comparison map tensor -> star preserves chain, product, divided power and localized invertibility",
              [&](Checker& c) {
        ChainMap phi = comparison_map(tensor_edges, star_good);
        for (MapProperty p : {MapProperty::chain, MapProperty::multiplicative,
                              MapProperty::loc_invertible, MapProperty::gamma})
            passes(c, check_map_property(phi, p));
    });

    criterion(5, "star algebra divided powers: six axioms, slot independence, factor inclusions",
              [&](Checker& c) {
        for (const CheckResult& r : check_all_gamma(*star_good)) passes(c, r);

        std::size_t tuples_checked = 0;
        const auto& factors = star_good->info->factors;
        for (const auto& b : star_good->cx.basis) {
            if (b.label.kind != LabelKind::tuple) continue;
            bool all_even = true;
            std::vector<std::size_t> positive;
            for (std::size_t l = 0; l < factors.size(); ++l) {
                int h = factors[l]->cx.elem(b.label.indices[l]).hdeg;
                if (h % 2 != 0) all_even = false;
                if (h > 0) positive.push_back(l);
            }
            if (!all_even || positive.size() < 2) continue;
            ++tuples_checked;
            for (int k = 2; k <= 3; ++k) {
                ModuleElement ref = tuple_power_at_slot(*star_good, b.id, positive[0], k);
                for (std::size_t j = 1; j < positive.size(); ++j)
                    c.expect(tuple_power_at_slot(*star_good, b.id, positive[j], k) == ref,
                             "slot-dependent divided power at " + b.name);
            }
        }
        c.expect(tuples_checked >= 1, "no all-even tuple with two positive slots found");

        for (std::size_t slot = 0; slot < factors.size(); ++slot) {
            ChainMap inc = inclusion_map(star_good, slot);
            passes(c, check_map_property(inc, MapProperty::multiplicative));
            passes(c, check_map_property(inc, MapProperty::gamma));
        }
    });

    criterion(6, "Taylor algebras of (x^2, xy, y^3) and (xy, yz, zx) are isomorphic to stars of Koszul algebras",
              [&](Checker& c) {
        for (const auto& [alg, gens] :
             {std::pair{taylor2, gens2}, std::pair{owned(taylor(gens3)), gens3}}) {
            std::vector<AlgebraPtr> ks;
            for (const Monomial& g : gens) ks.push_back(owned(koszul_principal(g)));
            AlgebraPtr st = owned(star_product(ks, SignMode::corrected));
            ChainMap iso = taylor_iso(alg, st);
            for (MapProperty p : {MapProperty::chain, MapProperty::multiplicative,
                                  MapProperty::gamma, MapProperty::iso})
                passes(c, check_map_property(iso, p));
            ChainMap back = invert_iso(iso);
            c.expect(is_identity(compose(back, iso)),
                     "inverse composed with the map is not the identity table");
            c.expect(is_identity(compose(iso, back)),
                     "map composed with the inverse is not the identity table");
        }
    });

    criterion(7, "Scarf subcomplex of (x^2, xy, y^3): ranks, exactness, products, vanishing even powers",
              [&](Checker& c) {
        ScarfComplex s = scarf_subcomplex(taylor2);
        c.expect(s.induced.ranks() == std::vector<std::size_t>{1, 3, 2},
                 "ranks " + ranks_text(s.induced.ranks()) + " != (1,3,2)");
        c.expect(taylor2->cx.elem(5).name == "e_{1,3}", "parent id 5 is not e_{1,3}");
        c.expect(std::find(s.parent_ids.begin(), s.parent_ids.end(), 5) ==
                     s.parent_ids.end(),
                 "e_{1,3} was not excluded");
        passes(c, check_d_squared(s.induced));
        passes(c, verify_resolution(s.induced));

        // e_1 e_2 = d e_{1,2} and e_2 e_3 = d e_{2,3} with d in {x, y}, up to sign
        auto witness = [&](BasisId u, BasisId v, BasisId target, const Monomial& d,
                           const std::string& name) {
            ModuleElement p = multiply(*taylor2, taylor2->cx.basis_element(u),
                                       taylor2->cx.basis_element(v));
            auto terms = p.terms();
            if (terms.size() != 1 || terms.begin()->first != target) {
                c.expect(false, name + " is not a multiple of the expected subset element");
                return;
            }
            auto single = terms.begin()->second.single_term();
            c.expect(single.has_value() &&
                         (single->first == 1 || single->first == -1) &&
                         single->second == d,
                     name + " coefficient is not +-" + to_string(d));
        };
        witness(1, 2, 4, m(ctx2, "x"), "e_1 e_2");
        witness(2, 3, 6, m(ctx2, "y"), "e_2 e_3");
        passes(c, check_scarf_gamma(s, 3));

        for (BasisId id : {BasisId{4}, BasisId{6}}) // the even Scarf elements
            for (int k = 2; k <= 3; ++k)
                c.expect(divided_power(*taylor2, taylor2->cx.basis_element(id), k)
                             .is_zero(),
                         "divided power " + std::to_string(k) + " of " +
                             taylor2->cx.elem(id).name + " does not vanish");
    });

    criterion(8, "squarefree decomposition m = u * sqf on all 64 monomials with exponents <= 3 in 3 variables",
              [&](Checker& c) {
        std::size_t cases = 0;
        for (std::int64_t a = 0; a <= 3; ++a)
            for (std::int64_t b = 0; b <= 3; ++b)
                for (std::int64_t d = 0; d <= 3; ++d) {
                    Monomial mono(ctx3, {a, b, d});
                    SqfParts parts = sqf_decompose(mono);
                    c.expect(multiply(parts.outside, parts.sqf) == mono,
                             "u * sqf != m at " + to_string(mono));
                    bool squarefree = true;
                    for (std::size_t i = 0; i < 3; ++i)
                        if (parts.sqf.exponent(i) > 1) squarefree = false;
                    c.expect(squarefree, "sqf not squarefree at " + to_string(mono));
                    ++cases;
                }
        c.expect(cases == 64, "expected 64 grid cases");
    });

    criterion(9, "canonical JSON round trips, CLI exit codes, reproducible reports",
              [&](Checker& c) {
        // byte-identical round trip for every algebra built above
        for (const AlgebraPtr& alg :
             {taylor2, split_a, split_b, herzog, edge_a, edge_b, star_good, star_flawed,
              tensor_edges, owned(taylor(gens3)),
              owned(koszul_principal(m(ctx2, "x^2")))}) {
            Json doc = export_algebra_json(*alg);
            c.expect(dump_canonical(export_algebra_json(import_algebra_json(doc))) ==
                         dump_canonical(doc),
                     "algebra round trip not byte-identical for " +
                         doc.at("construction").at("kind").get<std::string>());
        }
        ScarfComplex s = scarf_subcomplex(taylor2);
        Json tagged = export_complex_json(s.induced, gens2);
        c.expect(dump_canonical(export_complex_json(import_complex_json(tagged), gens2)) ==
                     dump_canonical(tagged),
                 "scarf complex round trip not byte-identical");
        Json bare = tagged;
        bare.erase("scarf_of");
        c.expect(dump_canonical(export_complex_json(import_complex_json(bare))) ==
                     dump_canonical(bare),
                 "bare complex round trip not byte-identical");

        // exit codes 0 / 1 / 2 through the command line entry point
        auto in_taylor = tmp_file("taylor.json");
        auto in_edges = tmp_file("edges.json");
        spit(in_taylor, R"({"variables":["x","y"],"ideals":[["x^2","x*y","y^3"]]})");
        spit(in_edges,
             R"({"variables":["x","y","z","w"],"ideals":[["x*y","y*z"],["z*w","w*x"]]})");
        auto run = [](std::vector<std::string> args) {
            std::ostringstream out, err;
            return run_cli(std::move(args), out, err);
        };
        c.expect(run({"verify", "--input", in_taylor.string(), "--checks", "all",
                      "--samples", "40"}) == 0,
                 "verify --checks all should exit 0");
        c.expect(run({"verify", "--input", in_edges.string(), "--construction",
                      "gen-taylor", "--sign-mode", "unsigned", "--checks", "dg"}) == 1,
                 "unsigned dg verification should exit 1");
        c.expect(run({"verify", "--input", "/nonexistent.json"}) == 2,
                 "missing input should exit 2");
        c.expect(run({"verify", "--input", in_taylor.string(), "--checks", "bogus"}) == 2,
                 "unknown check should exit 2");

        // identical seeds give identical report documents
        auto rep1 = tmp_file("report1.json");
        auto rep2 = tmp_file("report2.json");
        auto report_run = [&](const std::filesystem::path& rep) {
            return run({"verify", "--input", in_edges.string(), "--construction",
                        "gen-taylor", "--checks", "gamma", "--samples", "60", "--seed",
                        "7", "--report", rep.string()});
        };
        c.expect(report_run(rep1) == 0 && report_run(rep2) == 0,
                 "seeded verification runs should exit 0");
        c.expect(slurp(rep1) == slurp(rep2), "identical seeds gave different reports");
        for (const auto& p : {in_taylor, in_edges, rep1, rep2})
            std::filesystem::remove(p);
    });

    std::printf("%d/9 criteria passed\n", 9 - failures);
    return failures == 0 ? 0 : 1;
}
