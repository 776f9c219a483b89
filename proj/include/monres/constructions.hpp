#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "monres/dg_gamma.hpp"

namespace monres {

// Scalars alpha of a basis product table written in multigraded form:
//   f * f' = sum_a alpha_a * (m_f m_f' / m_a) * a.
// The monomial part is forced by the multigrading, so the scalars determine
// the table; extraction asserts exact reconstruction.
struct StructureConstants {
    std::map<std::pair<BasisId, BasisId>, std::vector<std::pair<BasisId, Rational>>> products;

    const std::vector<std::pair<BasisId, Rational>>& get(BasisId f, BasisId g) const {
        static const std::vector<std::pair<BasisId, Rational>> empty;
        auto it = products.find({f, g});
        return it == products.end() ? empty : it->second;
    }
};

inline StructureConstants extract_structure_constants(const DGGammaAlgebra& alg) {
    StructureConstants sc;
    for (const auto& [key, img] : alg.mul.entries) {
        const BasisElement& f = alg.cx.elem(key.first);
        const BasisElement& g = alg.cx.elem(key.second);
        Monomial md = multiply(f.mdeg, g.mdeg);
        auto& list = sc.products[key];
        for (const auto& [tid, coeff] : img.terms()) {
            auto st = coeff.single_term();
            require(st.has_value(), "structure constants: coefficient of " + f.name + " * " +
                                        g.name + " is not scalar * monomial");
            require(multiply(st->second, alg.cx.elem(tid).mdeg) == md,
                    "structure constants: " + f.name + " * " + g.name +
                        " breaks the multigrading");
            list.emplace_back(tid, st->first);
        }
        ModuleElement rebuilt;
        for (const auto& [tid, alpha] : list)
            rebuilt.add_term(tid, alpha, quotient(md, alg.cx.elem(tid).mdeg));
        require(rebuilt == img, "structure constants: reconstruction mismatch at " + f.name +
                                    " * " + g.name);
    }
    return sc;
}

namespace detail {

// Scalars alpha of the differential: d f = sum_a alpha_a * (m_f / m_a) * a.
inline std::map<BasisId, std::vector<std::pair<BasisId, Rational>>>
diff_constants(const FreeComplex& cx) {
    std::map<BasisId, std::vector<std::pair<BasisId, Rational>>> out;
    for (const auto& b : cx.basis) {
        auto& list = out[b.id];
        for (const auto& [tid, coeff] : cx.diff[static_cast<std::size_t>(b.id)].terms())
            list.emplace_back(tid, coeff.single_term()->first);
    }
    return out;
}

inline std::string subset_name(const std::vector<int>& s) {
    if (s.empty()) return "1";
    std::string out = "e_{";
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

} // namespace detail

// Exterior algebra on one generator f with d(f) = u: the resolution of R/(u)
// for a principal monomial ideal. Divided powers are trivial (f is odd).
inline DGGammaAlgebra koszul_principal(const Monomial& u, int gamma_bound = 3) {
    require(!u.is_one(), "koszul: generator must not be 1");
    ContextPtr ctx = u.context();
    DGGammaAlgebra alg;
    alg.cx.ctx = ctx;
    alg.cx.basis.push_back({0, 0, Monomial::one(ctx), BasisLabel::unit(), "1"});
    alg.cx.basis.push_back({1, 1, u, BasisLabel::slot(), "f"});
    alg.cx.diff.resize(2);
    alg.cx.diff[1].add_term(0, 1, u);
    alg.cx.augmentation = {u};
    alg.mul.unit = 0;
    alg.mul.entries[{0, 0}] = alg.cx.basis_element(0);
    alg.mul.entries[{0, 1}] = alg.cx.basis_element(1);
    alg.mul.entries[{1, 0}] = alg.cx.basis_element(1);
    alg.gamma.bound = gamma_bound;
    alg.info = ConstructionInfo{ConstructionKind::koszul, SignMode::corrected, {u}, {}};
    alg.validate();
    return alg;
}

// Resolution with one basis element e_F per subset F of the generator
// indices, m_{e_F} = lcm of the generators in F,
//   d(e_F) = sum_{i in F} (-1)^{pos of i in F} (m_F / m_{F - i}) e_{F - i},
// and the product
//   e_V e_W = (-1)^{inv(V,W)} (m_V m_W / m_{V u W}) e_{V u W}   (V, W disjoint)
// where inv(V, W) counts pairs v in V, w in W with w < v. Divided powers of
// the e_F vanish. Generators may repeat; subsets are index sets.
inline DGGammaAlgebra taylor(const std::vector<Monomial>& gens, int gamma_bound = 3,
                             bool allow_unit_generator = false) {
    require(!gens.empty(), "taylor: need at least one generator");
    require(gens.size() <= 12, "taylor: more than 12 generators (2^r basis elements)");
    ContextPtr ctx = gens[0].context();
    for (const auto& g : gens) {
        require(*g.context() == *ctx, "taylor: generators from different contexts");
        if (!allow_unit_generator)
            require(!g.is_one(), "taylor: generator 1 is not allowed here");
    }
    const int r = static_cast<int>(gens.size());

    // subsets grouped by size, lex within a size
    std::vector<std::vector<int>> subsets;
    for (int size = 0; size <= r; ++size) {
        std::vector<int> f(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i) f[static_cast<std::size_t>(i)] = i + 1;
        while (true) {
            subsets.push_back(f);
            if (size == 0) break;
            int i = size - 1;
            while (i >= 0 && f[static_cast<std::size_t>(i)] == r - (size - 1 - i)) --i;
            if (i < 0) break;
            ++f[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < size; ++j)
                f[static_cast<std::size_t>(j)] = f[static_cast<std::size_t>(j - 1)] + 1;
        }
    }

    DGGammaAlgebra alg;
    alg.cx.ctx = ctx;
    std::map<std::vector<int>, BasisId> id_of;
    for (const auto& f : subsets) {
        Monomial m = Monomial::one(ctx);
        for (int i : f) m = lcm(m, gens[static_cast<std::size_t>(i - 1)]);
        BasisId id = static_cast<BasisId>(alg.cx.basis.size());
        id_of[f] = id;
        alg.cx.basis.push_back({id, static_cast<int>(f.size()), m,
                                f.empty() ? BasisLabel::unit() : BasisLabel::subset(f),
                                detail::subset_name(f)});
    }

    alg.cx.diff.resize(alg.cx.basis.size());
    for (const auto& f : subsets) {
        if (f.empty()) continue;
        const BasisElement& e = alg.cx.basis[static_cast<std::size_t>(id_of[f])];
        for (std::size_t p = 0; p < f.size(); ++p) {
            std::vector<int> rest = f;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(p));
            BasisId tid = id_of.at(rest);
            Rational sign = p % 2 == 0 ? 1 : -1;
            alg.cx.diff[static_cast<std::size_t>(e.id)].add_term(
                tid, sign, quotient(e.mdeg, alg.cx.elem(tid).mdeg));
        }
    }
    alg.cx.augmentation = gens;

    alg.mul.unit = 0;
    for (const auto& v : subsets)
        for (const auto& w : subsets) {
            std::vector<int> u;
            std::set_union(v.begin(), v.end(), w.begin(), w.end(), std::back_inserter(u));
            if (u.size() != v.size() + w.size()) continue; // not disjoint
            std::size_t inversions = 0;
            for (int a : v)
                for (int b : w)
                    if (b < a) ++inversions;
            const Monomial& mv = alg.cx.elem(id_of[v]).mdeg;
            const Monomial& mw = alg.cx.elem(id_of[w]).mdeg;
            ModuleElement prod;
            prod.add_term(id_of[u], inversions % 2 == 0 ? 1 : -1,
                          quotient(multiply(mv, mw), alg.cx.elem(id_of[u]).mdeg));
            alg.mul.entries[{id_of[v], id_of[w]}] = std::move(prod);
        }

    alg.gamma.bound = gamma_bound;
    alg.info = ConstructionInfo{ConstructionKind::taylor, SignMode::corrected, gens, {}};
    alg.validate();
    return alg;
}

namespace detail {

inline std::map<std::vector<int>, BasisId> tuple_index(const FreeComplex& cx) {
    std::map<std::vector<int>, BasisId> out;
    for (const auto& b : cx.basis) {
        require(b.label.kind == LabelKind::tuple, "tuple index: basis is not tuple-labelled");
        out[b.label.indices] = b.id;
    }
    return out;
}

// Multilinear expansion: given one element per factor, the element of the
// product construction with coefficient the plain product of the component
// coefficients (the module structure of both product constructions is the
// tensor product of the factor modules).
inline ModuleElement expand_tuple(const ContextPtr& ctx,
                                  const std::map<std::vector<int>, BasisId>& index,
                                  const std::vector<ModuleElement>& components) {
    for (const auto& c : components)
        if (c.is_zero()) return ModuleElement();
    ModuleElement out;
    std::vector<int> choice(components.size(), 0);
    struct Rec {
        const std::map<std::vector<int>, BasisId>& index;
        const std::vector<ModuleElement>& components;
        ModuleElement& out;
        std::vector<int>& choice;
        void go(std::size_t slot, const RingElement& coeff) {
            if (slot == components.size()) {
                out.add(index.at(choice), coeff);
                return;
            }
            for (const auto& [id, c] : components[slot].terms()) {
                choice[slot] = id;
                go(slot + 1, coeff * c);
            }
        }
    };
    Rec rec{index, components, out, choice};
    rec.go(0, RingElement::term(1, Monomial::one(ctx)));
    return out;
}

} // namespace detail

// Divided power of a tuple basis element computed through one chosen slot:
//   (f_1 * ... * f_r)^(k) = f_1^k * ... * f_j^(k) * ... * f_r^k
// for a slot j of positive (even) degree, all other slots of even degree.
// The result does not depend on the admissible slot chosen; the product
// constructions use the smallest one.
inline ModuleElement tuple_power_at_slot(const DGGammaAlgebra& prod, BasisId tuple_id,
                                         std::size_t slot, int k) {
    require(prod.info.has_value() && !prod.info->factors.empty(),
            "tuple power: product construction required");
    const auto& factors = prod.info->factors;
    const BasisElement& t = prod.cx.elem(tuple_id);
    require(t.label.kind == LabelKind::tuple, "tuple power: basis element is not a tuple");
    require(slot < factors.size(), "tuple power: slot out of range");
    require(k >= 2, "tuple power: exponent must be >= 2");

    std::vector<ModuleElement> components;
    for (std::size_t l = 0; l < factors.size(); ++l) {
        const DGGammaAlgebra& fl = *factors[l];
        BasisId cid = static_cast<BasisId>(t.label.indices[l]);
        require(fl.cx.elem(cid).hdeg % 2 == 0,
                "tuple power: slot " + std::to_string(l) + " has odd degree");
        if (l == slot) {
            require(fl.cx.elem(cid).hdeg > 0, "tuple power: chosen slot has degree 0");
            components.push_back(detail::basis_divided_power(fl, cid, k));
        } else {
            components.push_back(power(fl, fl.cx.basis_element(cid), k));
        }
        if (components.back().is_zero()) return ModuleElement();
    }
    return detail::expand_tuple(prod.cx.ctx, detail::tuple_index(prod.cx), components);
}

namespace detail {

// Shared worker for the two product constructions. lcm_mode selects the
// generalized (lcm) multidegrees, differential and product coefficients;
// otherwise plain tensor conventions are used. The product sign
//   (-1)^{sum_i |f'_i| * sum_{j>i} |f_j|}
// is dropped in unsigned mode (generalized construction only).
inline DGGammaAlgebra product_construction(std::vector<AlgebraPtr> factors, bool lcm_mode,
                                           SignMode sign, int gamma_bound) {
    const std::size_t r = factors.size();
    require(r >= 2, "product construction: need at least two factors");
    for (const auto& f : factors) require(f != nullptr, "product construction: null factor");
    ContextPtr ctx = factors[0]->cx.ctx;
    std::size_t total = 1;
    for (const auto& f : factors) {
        require(*f->cx.ctx == *ctx, "product construction: factors over different variables");
        total *= f->cx.basis.size();
        require(total <= 200000, "product construction: basis would exceed 200000 elements");
    }

    // tuples of factor basis ids, grouped by total degree then lex
    std::vector<std::vector<int>> tuples;
    {
        std::vector<int> cur(r, 0);
        struct Rec {
            const std::vector<AlgebraPtr>& factors;
            std::vector<std::vector<int>>& tuples;
            std::vector<int>& cur;
            void go(std::size_t slot) {
                if (slot == factors.size()) {
                    tuples.push_back(cur);
                    return;
                }
                for (const auto& b : factors[slot]->cx.basis) {
                    cur[slot] = b.id;
                    go(slot + 1);
                }
            }
        };
        Rec rec{factors, tuples, cur};
        rec.go(0);
        auto hdeg_of = [&](const std::vector<int>& t) {
            int h = 0;
            for (std::size_t l = 0; l < t.size(); ++l)
                h += factors[l]->cx.elem(static_cast<BasisId>(t[l])).hdeg;
            return h;
        };
        std::stable_sort(tuples.begin(), tuples.end(),
                         [&](const std::vector<int>& a, const std::vector<int>& b) {
                             int ha = hdeg_of(a), hb = hdeg_of(b);
                             return ha != hb ? ha < hb : a < b;
                         });
    }

    const char* sep = lcm_mode ? "*" : "(x)";
    DGGammaAlgebra alg;
    alg.cx.ctx = ctx;
    std::map<std::vector<int>, BasisId> id_of;
    for (const auto& t : tuples) {
        int hdeg = 0;
        Monomial mdeg = Monomial::one(ctx);
        std::string name;
        for (std::size_t l = 0; l < r; ++l) {
            const BasisElement& c = factors[l]->cx.elem(static_cast<BasisId>(t[l]));
            hdeg += c.hdeg;
            mdeg = lcm_mode ? lcm(mdeg, c.mdeg) : multiply(mdeg, c.mdeg);
            name += (l ? sep : "") + c.name;
        }
        BasisId id = static_cast<BasisId>(alg.cx.basis.size());
        id_of[t] = id;
        alg.cx.basis.push_back({id, hdeg, mdeg, BasisLabel::tuple(t), name});
    }

    std::vector<std::map<BasisId, std::vector<std::pair<BasisId, Rational>>>> dconst;
    std::vector<StructureConstants> sconst;
    for (const auto& f : factors) {
        dconst.push_back(diff_constants(f->cx));
        sconst.push_back(extract_structure_constants(*f));
    }

    // differential: slot i contributes with sign (-1)^{|f_1|+...+|f_{i-1}|}
    alg.cx.diff.resize(alg.cx.basis.size());
    for (const auto& t : tuples) {
        const BasisElement& e = alg.cx.basis[static_cast<std::size_t>(id_of[t])];
        int sign_exp = 0;
        for (std::size_t i = 0; i < r; ++i) {
            const BasisElement& ci = factors[i]->cx.elem(static_cast<BasisId>(t[i]));
            for (const auto& [aid, alpha] : dconst[i].at(static_cast<BasisId>(t[i]))) {
                std::vector<int> target = t;
                target[i] = aid;
                const BasisElement& te = alg.cx.elem(id_of.at(target));
                Rational c = sign_exp % 2 == 0 ? alpha : -alpha;
                alg.cx.diff[static_cast<std::size_t>(e.id)].add_term(
                    id_of.at(target), c, quotient(e.mdeg, te.mdeg));
            }
            sign_exp += ci.hdeg;
        }
    }
    for (const auto& f : factors)
        for (const auto& g : f->cx.augmentation) alg.cx.augmentation.push_back(g);

    // product: per slot the factor structure constants, combined over all
    // choices; the coefficient monomial restores the multigrading
    alg.mul.unit = id_of.at([&] {
        std::vector<int> u(r);
        for (std::size_t l = 0; l < r; ++l) u[l] = factors[l]->mul.unit;
        return u;
    }());
    for (const auto& tv : tuples)
        for (const auto& tw : tuples) {
            int sign_exp = 0;
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = i + 1; j < r; ++j)
                    sign_exp += factors[i]->cx.elem(static_cast<BasisId>(tw[i])).hdeg *
                                factors[j]->cx.elem(static_cast<BasisId>(tv[j])).hdeg;
            bool negate = lcm_mode && sign == SignMode::unsigned_products
                              ? false
                              : sign_exp % 2 == 1;

            const BasisElement& ev = alg.cx.elem(id_of.at(tv));
            const BasisElement& ew = alg.cx.elem(id_of.at(tw));
            // multidegrees of the operands already combine the slots in the
            // mode's convention, so the coefficient monomial is their product
            // divided by the target multidegree in both modes
            Monomial numerator = multiply(ev.mdeg, ew.mdeg);

            ModuleElement prod;
            std::vector<int> choice(r, 0);
            struct Rec {
                const std::vector<AlgebraPtr>& factors;
                const std::vector<StructureConstants>& sconst;
                const std::vector<int>& tv;
                const std::vector<int>& tw;
                std::vector<int>& choice;
                const std::map<std::vector<int>, BasisId>& id_of;
                const FreeComplex& cx;
                const Monomial& numerator;
                ModuleElement& prod;
                void go(std::size_t slot, const Rational& alpha) {
                    if (slot == factors.size()) {
                        BasisId tid = id_of.at(choice);
                        prod.add_term(tid, alpha, quotient(numerator, cx.elem(tid).mdeg));
                        return;
                    }
                    for (const auto& [aid, a] :
                         sconst[slot].get(static_cast<BasisId>(tv[slot]),
                                          static_cast<BasisId>(tw[slot]))) {
                        choice[slot] = aid;
                        go(slot + 1, alpha * a);
                    }
                }
            };
            Rec rec{factors, sconst, tv, tw, choice, id_of, alg.cx, numerator, prod};
            rec.go(0, negate ? -1 : 1);
            if (!prod.is_zero()) alg.mul.entries[{id_of.at(tv), id_of.at(tw)}] = std::move(prod);
        }

    alg.gamma.bound = gamma_bound;
    alg.info = ConstructionInfo{lcm_mode ? ConstructionKind::star : ConstructionKind::tensor,
                                lcm_mode ? sign : SignMode::corrected,
                                {},
                                factors};

    // divided powers through the smallest positive slot; any odd slot or a
    // vanishing factor divided power kills the entry
    for (const auto& b : alg.cx.basis) {
        if (b.hdeg <= 0 || b.hdeg % 2 == 1) continue;
        bool all_even = true;
        std::size_t j = r;
        for (std::size_t l = 0; l < r; ++l) {
            int h = factors[l]->cx.elem(static_cast<BasisId>(b.label.indices[l])).hdeg;
            if (h % 2 == 1) all_even = false;
            if (h > 0 && j == r) j = l;
        }
        if (!all_even) continue;
        for (int k = 2; k <= gamma_bound; ++k) {
            ModuleElement p = tuple_power_at_slot(alg, b.id, j, k);
            if (!p.is_zero()) alg.gamma.entries[{b.id, k}] = std::move(p);
        }
    }

    alg.validate();
    return alg;
}

} // namespace detail

// F_1 (x) ... (x) F_r with multidegrees multiplied across slots.
inline DGGammaAlgebra tensor_product(std::vector<AlgebraPtr> factors, int gamma_bound = 3) {
    require(factors.size() >= 2, "tensor product: need at least two factors");
    return detail::product_construction(std::move(factors), false, SignMode::corrected,
                                        gamma_bound);
}

// Generalized construction F_1 * ... * F_r with multidegrees combined by lcm
// across slots; resolves R modulo the sum of the factor ideals when each
// factor resolves its own quotient. A single factor is returned unchanged.
inline DGGammaAlgebra star_product(std::vector<AlgebraPtr> factors,
                                   SignMode sign = SignMode::corrected, int gamma_bound = 3) {
    require(!factors.empty(), "star product: need at least one factor");
    if (factors.size() == 1) return *factors[0];
    return detail::product_construction(std::move(factors), true, sign, gamma_bound);
}

} // namespace monres
