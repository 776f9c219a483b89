#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "monres/constructions.hpp"

namespace monres {

// Degree-0 map of complexes given by the images of the source basis.
// Construction enforces preservation of both gradings: every image term
// c m e' of the image of e satisfies hdeg e' = hdeg e and m * mdeg e' =
// mdeg e.
struct ChainMap {
    std::string name;
    AlgebraPtr source;
    AlgebraPtr target;
    std::map<BasisId, ModuleElement> images;

    void validate() const {
        require(source != nullptr && target != nullptr, "chain map: missing endpoint");
        require(images.size() == source->cx.basis.size(),
                "chain map: need exactly one image per source basis element");
        for (const auto& [id, img] : images) {
            const BasisElement& e = source->cx.elem(id);
            for (const auto& [tid, coeff] : img.terms()) {
                const BasisElement& t = target->cx.elem(tid);
                require(t.hdeg == e.hdeg,
                        "chain map " + name + ": image of " + e.name +
                            " is not degree preserving");
                for (const auto& [m, c] : coeff.terms())
                    require(multiply(m, t.mdeg) == e.mdeg,
                            "chain map " + name + ": image of " + e.name +
                                " is not multidegree preserving");
            }
        }
    }
};

inline ModuleElement apply(const ChainMap& f, const ModuleElement& x) {
    ModuleElement out;
    for (const auto& [id, coeff] : x.terms()) {
        auto it = f.images.find(id);
        require(it != f.images.end(), "chain map: unknown source basis id");
        out += it->second.scaled(coeff);
    }
    return out;
}

namespace detail {

inline bool same_shape(const FreeComplex& a, const FreeComplex& b) {
    if (!(*a.ctx == *b.ctx) || a.basis.size() != b.basis.size()) return false;
    for (std::size_t i = 0; i < a.basis.size(); ++i) {
        if (a.basis[i].hdeg != b.basis[i].hdeg) return false;
        if (!(a.basis[i].mdeg == b.basis[i].mdeg)) return false;
        if (!(a.basis[i].label == b.basis[i].label)) return false;
    }
    return true;
}

inline void require_matching_factors(const AlgebraPtr& a, const AlgebraPtr& b,
                                     const std::string& who) {
    require(a->info.has_value() && b->info.has_value(), who + ": constructions required");
    const auto& fa = a->info->factors;
    const auto& fb = b->info->factors;
    require(fa.size() == fb.size(), who + ": factor counts differ");
    for (std::size_t i = 0; i < fa.size(); ++i)
        require(fa[i] == fb[i] || same_shape(fa[i]->cx, fb[i]->cx),
                who + ": factor " + std::to_string(i + 1) + " differs");
}

} // namespace detail

// Canonical comparison map from the plain tensor product onto the
// generalized one built from the same factors: the tuple of components
// (f_1, ..., f_r) is sent to
//   (prod_i mdeg f_i / lcm_i mdeg f_i) * (f_1 * ... * f_r),
// the unique multidegree-preserving diagonal choice (for two factors the
// coefficient is the gcd of the two multidegrees).
inline ChainMap comparison_map(const AlgebraPtr& tensor, const AlgebraPtr& star) {
    require(tensor && tensor->info && tensor->info->kind == ConstructionKind::tensor,
            "comparison map: source must be a tensor construction");
    require(star && star->info && star->info->kind == ConstructionKind::star,
            "comparison map: target must be a generalized construction");
    detail::require_matching_factors(tensor, star, "comparison map");

    ChainMap f;
    f.name = "comparison";
    f.source = tensor;
    f.target = star;
    std::map<std::vector<int>, BasisId> star_id = detail::tuple_index(star->cx);
    for (const auto& b : tensor->cx.basis) {
        BasisId tid = star_id.at(b.label.indices);
        ModuleElement img;
        img.add_term(tid, 1, quotient(b.mdeg, star->cx.elem(tid).mdeg));
        f.images[b.id] = img;
    }
    f.validate();
    return f;
}

// Isomorphism from the Taylor resolution onto the generalized product of the
// principal Koszul resolutions of its generators: e_F goes to the tuple with
// the exterior generator in the slots of F, coefficient 1.
inline ChainMap taylor_iso(const AlgebraPtr& taylor_alg, const AlgebraPtr& star_of_koszuls) {
    require(taylor_alg && taylor_alg->info &&
                taylor_alg->info->kind == ConstructionKind::taylor,
            "taylor iso: source must be a Taylor construction");
    require(star_of_koszuls && star_of_koszuls->info &&
                star_of_koszuls->info->kind == ConstructionKind::star,
            "taylor iso: target must be a generalized product");
    const auto& factors = star_of_koszuls->info->factors;
    const auto& gens = taylor_alg->info->generators;
    require(factors.size() == gens.size(),
            "taylor iso: generator and factor counts differ");
    for (std::size_t i = 0; i < factors.size(); ++i) {
        require(factors[i]->info && factors[i]->info->kind == ConstructionKind::koszul,
                "taylor iso: factor " + std::to_string(i + 1) + " is not a Koszul resolution");
        require(factors[i]->info->generators.at(0) == gens[i],
                "taylor iso: generator " + std::to_string(i + 1) + " differs");
    }

    ChainMap f;
    f.name = "taylor_iso";
    f.source = taylor_alg;
    f.target = star_of_koszuls;
    std::map<std::vector<int>, BasisId> star_id = detail::tuple_index(star_of_koszuls->cx);
    for (const auto& b : taylor_alg->cx.basis) {
        std::vector<int> tuple(gens.size(), 0);
        if (b.label.kind == LabelKind::subset)
            for (int i : b.label.indices) tuple[static_cast<std::size_t>(i - 1)] = 1;
        ModuleElement img;
        img.add_term(star_id.at(tuple), 1, Monomial::one(taylor_alg->cx.ctx));
        f.images[b.id] = img;
    }
    f.validate();
    return f;
}

// Canonical inclusion of one factor into a product construction: a basis
// element goes to the tuple with it in its slot and units elsewhere.
inline ChainMap inclusion_map(const AlgebraPtr& product, std::size_t slot) {
    require(product && product->info &&
                (product->info->kind == ConstructionKind::star ||
                 product->info->kind == ConstructionKind::tensor),
            "inclusion map: product construction required");
    const auto& factors = product->info->factors;
    require(slot < factors.size(), "inclusion map: slot out of range");

    ChainMap f;
    f.name = "inclusion_" + std::to_string(slot + 1);
    f.source = factors[slot];
    f.target = product;
    std::map<std::vector<int>, BasisId> prod_id = detail::tuple_index(product->cx);
    for (const auto& b : f.source->cx.basis) {
        std::vector<int> tuple(factors.size());
        for (std::size_t l = 0; l < factors.size(); ++l)
            tuple[l] = l == slot ? b.id : factors[l]->mul.unit;
        ModuleElement img;
        img.add_term(prod_id.at(tuple), 1, Monomial::one(product->cx.ctx));
        f.images[b.id] = img;
    }
    f.validate();
    return f;
}

inline ChainMap compose(const ChainMap& g, const ChainMap& f) {
    require(f.target == g.source || detail::same_shape(f.target->cx, g.source->cx),
            "compose: middle complexes differ");
    ChainMap out;
    out.name = g.name + " after " + f.name;
    out.source = f.source;
    out.target = g.target;
    for (const auto& [id, img] : f.images) out.images[id] = apply(g, img);
    out.validate();
    return out;
}

// Inverse of a map whose images are single basis elements with coefficient
// +-1 and monomial 1 (the shape the iso check accepts).
inline ChainMap invert_iso(const ChainMap& f) {
    ChainMap out;
    out.name = f.name + " inverse";
    out.source = f.target;
    out.target = f.source;
    for (const auto& [id, img] : f.images) {
        require(img.terms().size() == 1, "invert: image of basis id " + std::to_string(id) +
                                             " is not a single basis element");
        const auto& [tid, coeff] = *img.terms().begin();
        auto st = coeff.single_term();
        require(st.has_value() && (st->first == 1 || st->first == -1) && st->second.is_one(),
                "invert: coefficient of basis id " + std::to_string(id) + " is not a sign");
        ModuleElement back;
        back.add_term(id, st->first, Monomial::one(f.source->cx.ctx));
        require(out.images.emplace(tid, back).second, "invert: map is not injective on basis");
    }
    require(out.images.size() == f.target->cx.basis.size(),
            "invert: map is not surjective on basis");
    out.validate();
    return out;
}

inline bool is_identity(const ChainMap& f) {
    if (!detail::same_shape(f.source->cx, f.target->cx)) return false;
    for (const auto& [id, img] : f.images)
        if (img != f.source->cx.basis_element(id)) return false;
    return true;
}

enum class MapProperty { chain, multiplicative, gamma, loc_invertible, iso };

struct MapBudget {
    int k_max = 3;             // divided power exponents checked exhaustively
    std::size_t samples = 200; // random even elements for the gamma property
    std::uint64_t seed = 42;
};

inline CheckResult check_map_property(const ChainMap& f, MapProperty property,
                                      const MapBudget& budget = {}) {
    detail::Stopwatch timer;
    CheckResult result;
    const FreeComplex& src = f.source->cx;
    const FreeComplex& tgt = f.target->cx;

    switch (property) {
    case MapProperty::chain: {
        result.name = f.name + ".chain";
        for (const auto& b : src.basis) {
            ModuleElement lhs = apply(f, src.diff[static_cast<std::size_t>(b.id)]);
            ModuleElement rhs = apply_diff(tgt, apply(f, src.basis_element(b.id)));
            if (lhs != rhs)
                result.record(b.name, to_string(tgt, lhs), to_string(tgt, rhs));
        }
        break;
    }
    case MapProperty::multiplicative: {
        result.name = f.name + ".multiplicative";
        for (const auto& a : src.basis)
            for (const auto& b : src.basis) {
                ModuleElement lhs =
                    apply(f, multiply(*f.source, src.basis_element(a.id),
                                      src.basis_element(b.id)));
                ModuleElement rhs = multiply(*f.target, apply(f, src.basis_element(a.id)),
                                             apply(f, src.basis_element(b.id)));
                if (lhs != rhs)
                    result.record("image of " + a.name + " * " + b.name,
                                  to_string(tgt, lhs), to_string(tgt, rhs));
            }
        break;
    }
    case MapProperty::gamma: {
        result.name = f.name + ".gamma";
        auto check_one = [&](const std::string& loc, const ModuleElement& x) {
            for (int k = 2; k <= budget.k_max; ++k) {
                ModuleElement lhs = apply(f, detail::divided_power_any(*f.source, x, k));
                ModuleElement rhs = detail::divided_power_any(*f.target, apply(f, x), k);
                if (lhs != rhs)
                    result.record(loc + ", k=" + std::to_string(k), to_string(tgt, lhs),
                                  to_string(tgt, rhs));
            }
        };
        for (BasisId id : even_positive_ids(*f.source))
            check_one(src.elem(id).name, src.basis_element(id));
        Sampler sampler(budget.seed);
        for (std::size_t s = 0; s < budget.samples; ++s) {
            auto h = sampler.pick_even_positive_hdeg(*f.source);
            if (!h) break;
            check_one("sample #" + std::to_string(s), sampler.element_at(*f.source, *h));
        }
        break;
    }
    case MapProperty::loc_invertible:
    case MapProperty::iso: {
        bool iso = property == MapProperty::iso;
        result.name = f.name + (iso ? ".iso" : ".loc_invertible");
        std::map<BasisId, BasisId> hit;
        for (const auto& b : src.basis) {
            const ModuleElement& img = f.images.at(b.id);
            if (img.terms().size() != 1) {
                result.record(b.name, to_string(tgt, img), "a single basis element");
                continue;
            }
            const auto& [tid, coeff] = *img.terms().begin();
            auto st = coeff.single_term();
            if (!st.has_value() || st->first == 0) {
                result.record(b.name, to_string(tgt, img), "scalar * monomial, scalar nonzero");
                continue;
            }
            if (iso && !(st->second.is_one() && (st->first == 1 || st->first == -1))) {
                result.record(b.name, to_string(tgt, img),
                              "a basis element with coefficient +-1");
                continue;
            }
            if (!hit.emplace(tid, b.id).second)
                result.record(b.name, "target " + tgt.elem(tid).name + " already covered",
                              "a bijection on basis elements");
        }
        if (hit.size() != tgt.basis.size() && result.violation_count == 0)
            result.record(f.name,
                          std::to_string(hit.size()) + " of " +
                              std::to_string(tgt.basis.size()) + " target elements covered",
                          "a bijection on basis elements");
        break;
    }
    }
    result.seconds = timer.seconds();
    return result;
}

} // namespace monres
