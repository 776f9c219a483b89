#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "monres/dg_gamma.hpp"

namespace monres {

// Subcomplex of a Taylor resolution spanned by the unit and the basis
// elements whose multidegree occurs exactly once. Always closed under the
// differential; a resolution exactly when the ideal is generic enough.
struct ScarfComplex {
    AlgebraPtr parent;               // the Taylor algebra it sits inside
    std::vector<BasisId> parent_ids; // surviving ids, in parent order
    FreeComplex induced;             // the subcomplex, re-indexed from 0
};

inline ScarfComplex scarf_subcomplex(const AlgebraPtr& parent) {
    require(parent != nullptr && parent->info.has_value() &&
                parent->info->kind == ConstructionKind::taylor,
            "scarf: a Taylor construction is required");
    const FreeComplex& cx = parent->cx;
    std::map<Monomial, int> multiplicity;
    for (const auto& b : cx.basis) ++multiplicity[b.mdeg];

    ScarfComplex s;
    s.parent = parent;
    std::map<BasisId, BasisId> new_id;
    for (const auto& b : cx.basis)
        if (b.label.kind == LabelKind::unit || multiplicity[b.mdeg] == 1) {
            new_id[b.id] = static_cast<BasisId>(s.parent_ids.size());
            s.parent_ids.push_back(b.id);
        }

    s.induced.ctx = cx.ctx;
    for (BasisId pid : s.parent_ids) {
        const BasisElement& b = cx.elem(pid);
        s.induced.basis.push_back({new_id.at(pid), b.hdeg, b.mdeg, b.label, b.name});
    }
    s.induced.diff.resize(s.induced.basis.size());
    for (BasisId pid : s.parent_ids)
        for (const auto& [tid, coeff] : cx.diff[static_cast<std::size_t>(pid)].terms()) {
            auto it = new_id.find(tid);
            require(it != new_id.end(), "scarf: differential of " + cx.elem(pid).name +
                                            " leaves the subcomplex");
            s.induced.diff[static_cast<std::size_t>(new_id.at(pid))].add(it->second, coeff);
        }
    s.induced.augmentation = cx.augmentation;
    s.induced.validate();
    return s;
}

// m = outside * sqf, where sqf is the product of the variables occurring
// in m (the squarefree part).
struct SqfParts {
    Monomial outside;
    Monomial sqf;
};

inline SqfParts sqf_decompose(const Monomial& m) {
    Monomial sf = gcd(m, all_variables(m.context()));
    return {quotient(m, sf), sf};
}

// A multihomogeneous element of a complex whose basis multidegrees are all
// squarefree splits as (M / sqf M) * (an element of multidegree sqf M):
// the squarefree strands carry everything.
struct SqfElement {
    Monomial outside;
    ModuleElement reduced;
};

inline SqfElement sqf_decompose(const FreeComplex& cx, const ModuleElement& x) {
    require(!x.is_zero(), "sqf: the zero element has no multidegree");
    std::optional<Monomial> mdeg;
    for (const auto& [id, coeff] : x.terms()) {
        const BasisElement& b = cx.elem(id);
        require(b.mdeg.is_squarefree(),
                "sqf: multidegree of " + b.name + " is not squarefree");
        for (const auto& [m, c] : coeff.terms()) {
            Monomial full = multiply(m, b.mdeg);
            if (!mdeg.has_value()) mdeg = full;
            require(*mdeg == full, "sqf: element is not multihomogeneous");
        }
    }
    SqfParts parts = sqf_decompose(*mdeg);
    SqfElement out{parts.outside, {}};
    for (const auto& [id, coeff] : x.terms())
        for (const auto& [m, c] : coeff.terms())
            out.reduced.add_term(id, c, quotient(m, parts.outside));
    return out;
}

// Over the Scarf complex the ascending product of the generator basis
// elements hits the subset element with sign exactly +1:
//   e_{i_1} ... e_{i_s} = (u_{i_1} ... u_{i_s} / m_sigma) e_sigma
// for i_1 < ... < i_s, and the divided powers of the even subset elements
// vanish for every exponent from 2 to max_power. The coefficients found are
// reported as notes.
inline CheckResult check_scarf_gamma(const ScarfComplex& s, int max_power = 3) {
    detail::Stopwatch timer;
    CheckResult result;
    result.name = "scarf.gamma";
    const DGGammaAlgebra& alg = *s.parent;
    const auto& gens = alg.info->generators;
    for (BasisId pid : s.parent_ids) {
        const BasisElement& b = alg.cx.elem(pid);
        if (b.label.kind != LabelKind::subset || b.label.indices.size() < 2) continue;
        ModuleElement prod = alg.unit_element();
        Monomial num = Monomial::one(alg.cx.ctx);
        for (int i : b.label.indices) {
            const BasisElement& singleton = alg.cx.elem(i); // e_{i} has id i
            require(singleton.label.indices == std::vector<int>{i},
                    "scarf: unexpected basis order in the Taylor parent");
            prod = multiply(alg, prod, alg.cx.basis_element(singleton.id));
            num = multiply(num, gens[static_cast<std::size_t>(i - 1)]);
        }
        Monomial coeff = quotient(num, b.mdeg);
        ModuleElement expected;
        expected.add_term(pid, 1, coeff);
        if (prod == expected)
            result.notes.push_back(b.name + ": ascending product coefficient +" +
                                   to_string(coeff));
        else
            result.record("ascending product at " + b.name, to_string(alg.cx, prod),
                          to_string(alg.cx, expected));
        if (b.hdeg % 2 == 0)
            for (int k = 2; k <= max_power; ++k) {
                ModuleElement p = detail::divided_power_any(alg, alg.cx.basis_element(pid), k);
                if (!p.is_zero())
                    result.record(b.name + "^(" + std::to_string(k) + ")",
                                  to_string(alg.cx, p), "0");
            }
    }
    result.seconds = timer.seconds();
    return result;
}

} // namespace monres
