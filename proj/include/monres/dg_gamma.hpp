#pragma once

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "monres/complex.hpp"

namespace monres {

// Sign convention used by the product of a generalized (lcm-based) tensor
// construction: corrected applies the Koszul-style sign that depends on the
// degrees of the later slots, unsigned_products omits it.
enum class SignMode { corrected, unsigned_products };

enum class ConstructionKind { koszul, taylor, tensor, star };

struct DGGammaAlgebra;

struct ConstructionInfo {
    ConstructionKind kind = ConstructionKind::taylor;
    SignMode sign = SignMode::corrected;
    std::vector<Monomial> generators; // koszul and taylor
    std::vector<std::shared_ptr<const DGGammaAlgebra>> factors; // tensor and star
};

// Product table on basis elements; pairs with zero product are absent.
struct MulTable {
    BasisId unit = 0;
    std::map<std::pair<BasisId, BasisId>, ModuleElement> entries;
};

// Divided powers of basis elements of even positive degree, exponents
// 2..bound; zero entries are absent. All built-in constructions have
// identically vanishing basis divided powers, so absence is exact there.
struct GammaTable {
    int bound = 3;
    std::map<std::pair<BasisId, int>, ModuleElement> entries;
};

struct DGGammaAlgebra {
    FreeComplex cx;
    MulTable mul;
    GammaTable gamma;
    std::optional<ConstructionInfo> info;

    ModuleElement unit_element() const { return cx.basis_element(mul.unit); }

    void validate() const {
        cx.validate();
        require(cx.elem(mul.unit).hdeg == 0, "algebra: unit must have degree 0");
        require(gamma.bound >= 2, "algebra: divided power bound must be >= 2");
        for (const auto& [key, img] : mul.entries) {
            const BasisElement& a = cx.elem(key.first);
            const BasisElement& b = cx.elem(key.second);
            require(!img.is_zero(), "algebra: zero product stored for " + a.name + " * " + b.name);
            Monomial md = multiply(a.mdeg, b.mdeg);
            for (const auto& [tid, coeff] : img.terms()) {
                const BasisElement& t = cx.elem(tid);
                require(t.hdeg == a.hdeg + b.hdeg,
                        "algebra: product " + a.name + " * " + b.name + " has wrong degree");
                for (const auto& [m, c] : coeff.terms())
                    require(multiply(m, t.mdeg) == md,
                            "algebra: product " + a.name + " * " + b.name +
                                " breaks the multigrading");
            }
        }
        for (const auto& b : cx.basis) {
            auto row = mul.entries.find({mul.unit, b.id});
            auto col = mul.entries.find({b.id, mul.unit});
            require(row != mul.entries.end() && row->second == cx.basis_element(b.id),
                    "algebra: unit row is not the identity at " + b.name);
            require(col != mul.entries.end() && col->second == cx.basis_element(b.id),
                    "algebra: unit column is not the identity at " + b.name);
        }
        for (const auto& [key, img] : gamma.entries) {
            const BasisElement& e = cx.elem(key.first);
            int k = key.second;
            require(e.hdeg > 0 && e.hdeg % 2 == 0,
                    "algebra: divided power base " + e.name + " must have even positive degree");
            require(k >= 2 && k <= gamma.bound, "algebra: divided power exponent out of range");
            require(!img.is_zero(), "algebra: zero divided power stored for " + e.name);
            Monomial md = pow(e.mdeg, k);
            for (const auto& [tid, coeff] : img.terms()) {
                const BasisElement& t = cx.elem(tid);
                require(t.hdeg == k * e.hdeg, "algebra: divided power of " + e.name +
                                                  " has wrong degree");
                for (const auto& [m, c] : coeff.terms())
                    require(multiply(m, t.mdeg) == md, "algebra: divided power of " + e.name +
                                                           " breaks the multigrading");
            }
        }
    }
};

using AlgebraPtr = std::shared_ptr<const DGGammaAlgebra>;

// Bilinear extension of the basis product table.
inline ModuleElement multiply(const DGGammaAlgebra& alg, const ModuleElement& x,
                              const ModuleElement& y) {
    ModuleElement out;
    for (const auto& [i, ci] : x.terms())
        for (const auto& [j, cj] : y.terms()) {
            auto it = alg.mul.entries.find({i, j});
            if (it == alg.mul.entries.end()) continue;
            out += it->second.scaled(ci * cj);
        }
    return out;
}

// x^k by iterated multiplication; x must be homologically homogeneous.
inline ModuleElement power(const DGGammaAlgebra& alg, const ModuleElement& x, int k) {
    require(k >= 0, "power: negative exponent");
    homogeneous_hdeg(alg.cx, x);
    ModuleElement out = alg.unit_element();
    for (int i = 0; i < k; ++i) out = multiply(alg, out, x);
    return out;
}

inline std::vector<BasisId> even_positive_ids(const DGGammaAlgebra& alg) {
    std::vector<BasisId> out;
    for (const auto& b : alg.cx.basis)
        if (b.hdeg > 0 && b.hdeg % 2 == 0) out.push_back(b.id);
    return out;
}

inline std::vector<BasisId> odd_ids(const DGGammaAlgebra& alg) {
    std::vector<BasisId> out;
    for (const auto& b : alg.cx.basis)
        if (b.hdeg % 2 == 1) out.push_back(b.id);
    return out;
}

namespace detail {

// e^(k): 1, e, or a table entry; absent entries are zero.
inline ModuleElement basis_divided_power(const DGGammaAlgebra& alg, BasisId e, int k) {
    if (k == 0) return alg.unit_element();
    if (k == 1) return alg.cx.basis_element(e);
    auto it = alg.gamma.entries.find({e, k});
    return it == alg.gamma.entries.end() ? ModuleElement() : it->second;
}

struct DpTerm {
    BasisId id;
    Monomial m;
    Rational c;
};

inline std::vector<DpTerm> dp_terms(const ModuleElement& x) {
    std::vector<DpTerm> out;
    for (const auto& [id, coeff] : x.terms())
        for (const auto& [m, c] : coeff.terms()) out.push_back({id, m, c});
    return out;
}

// Divided power of a sum of terms c_t m_t e_t: sum over all compositions
// k_1 + ... + k_s = k of  prod_t (c_t m_t)^{k_t} * e_1^(k_1) * ... * e_s^(k_s),
// products taken in term order. Free-extension rule for elements that are not
// basis elements; independent of the term order whenever the table satisfies
// the divided power axioms (covered by a property test).
inline ModuleElement divided_power_terms(const DGGammaAlgebra& alg,
                                         const std::vector<DpTerm>& terms, int k) {
    ModuleElement out;
    struct Rec {
        const DGGammaAlgebra& alg;
        const std::vector<DpTerm>& terms;
        ModuleElement& out;
        void go(std::size_t t, int remaining, const ModuleElement& acc,
                const RingElement& scalar) {
            if (t == terms.size()) {
                if (remaining == 0) out += acc.scaled(scalar);
                return;
            }
            for (int kt = 0; kt <= remaining; ++kt) {
                if (kt == 0) {
                    go(t + 1, remaining, acc, scalar);
                    continue;
                }
                ModuleElement p = basis_divided_power(alg, terms[t].id, kt);
                if (p.is_zero()) continue;
                ModuleElement acc2 = multiply(alg, acc, p);
                if (acc2.is_zero()) continue;
                RingElement scalar2 =
                    scalar * RingElement::term(pow(terms[t].c, kt), pow(terms[t].m, kt));
                go(t + 1, remaining - kt, acc2, scalar2);
            }
        }
    };
    Rec rec{alg, terms, out};
    rec.go(0, k, alg.unit_element(), RingElement::term(1, Monomial::one(alg.cx.ctx)));
    return out;
}

// Internal entry point without the public exponent cap; axiom checkers need
// exponents past the stored bound (absent table entries stay zero).
inline ModuleElement divided_power_any(const DGGammaAlgebra& alg, const ModuleElement& x,
                                       int k) {
    require(k >= 0, "divided power: negative exponent");
    if (k == 0) return alg.unit_element();
    if (x.is_zero()) return ModuleElement();
    auto h = homogeneous_hdeg(alg.cx, x);
    require(*h > 0 && *h % 2 == 0,
            "divided power: element must have even positive homological degree");
    if (k == 1) return x;
    return divided_power_terms(alg, dp_terms(x), k);
}

} // namespace detail

inline ModuleElement divided_power(const DGGammaAlgebra& alg, const ModuleElement& x, int k) {
    require(k <= alg.gamma.bound, "divided power: exponent " + std::to_string(k) +
                                      " exceeds the stored bound " +
                                      std::to_string(alg.gamma.bound));
    return detail::divided_power_any(alg, x, k);
}

// ---------------------------------------------------------------------------
// Randomized element generation for the axiom checks. Uses a fixed-width
// generator with explicit modular reduction so sampled sequences are
// reproducible across standard library implementations.

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t next(std::uint64_t bound) { return rng_() % bound; }

    std::int64_t int_in(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    Rational nonzero_scalar() {
        std::int64_t v = int_in(-3, 2);
        return v >= 0 ? v + 1 : v;
    }

    Monomial monomial(const ContextPtr& ctx, std::int64_t max_exp = 2) {
        std::vector<std::int64_t> e(ctx->size());
        for (auto& x : e) x = int_in(0, max_exp);
        return Monomial(ctx, e);
    }

    // Nonzero homogeneous element of the given homological degree, up to
    // max_terms basis summands with scalar * monomial coefficients.
    ModuleElement element_at(const DGGammaAlgebra& alg, int hdeg, std::size_t max_terms = 3) {
        std::vector<BasisId> pool = alg.cx.ids_at(hdeg);
        require(!pool.empty(), "sampler: no basis in requested degree");
        ModuleElement x;
        std::size_t count = 1 + next(max_terms);
        for (std::size_t i = 0; i < count; ++i)
            x.add_term(pool[next(pool.size())], nonzero_scalar(), monomial(alg.cx.ctx));
        if (x.is_zero()) x.add_term(pool[0], 1, Monomial::one(alg.cx.ctx));
        return x;
    }

    // Nonzero element supported in degree hdeg, multihomogeneous of
    // multidegree mdeg_out (an lcm of basis multidegrees times a random
    // monomial, so integral coefficients always exist).
    ModuleElement bihomogeneous_at(const DGGammaAlgebra& alg, int hdeg, Monomial& mdeg_out) {
        std::vector<BasisId> pool = alg.cx.ids_at(hdeg);
        require(!pool.empty(), "sampler: no basis in requested degree");
        Monomial target = multiply(alg.cx.elem(pool[next(pool.size())]).mdeg,
                                   monomial(alg.cx.ctx, 1));
        for (std::size_t i = 0; i < 2; ++i)
            if (next(2) == 0) target = lcm(target, alg.cx.elem(pool[next(pool.size())]).mdeg);
        ModuleElement x;
        for (BasisId id : pool)
            if (divides(alg.cx.elem(id).mdeg, target) && next(2) == 0)
                x.add_term(id, nonzero_scalar(), quotient(target, alg.cx.elem(id).mdeg));
        if (x.is_zero()) {
            for (BasisId id : pool)
                if (divides(alg.cx.elem(id).mdeg, target)) {
                    x.add_term(id, 1, quotient(target, alg.cx.elem(id).mdeg));
                    break;
                }
        }
        mdeg_out = target;
        return x;
    }

    std::optional<int> pick_even_positive_hdeg(const DGGammaAlgebra& alg) {
        std::vector<int> degrees;
        for (int h = 2; h <= alg.cx.max_hdeg(); h += 2)
            if (!alg.cx.ids_at(h).empty()) degrees.push_back(h);
        if (degrees.empty()) return std::nullopt;
        return degrees[next(degrees.size())];
    }

    std::optional<int> pick_odd_hdeg(const DGGammaAlgebra& alg) {
        std::vector<int> degrees;
        for (int h = 1; h <= alg.cx.max_hdeg(); h += 2)
            if (!alg.cx.ids_at(h).empty()) degrees.push_back(h);
        if (degrees.empty()) return std::nullopt;
        return degrees[next(degrees.size())];
    }

private:
    std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// Axiom checks. All equalities are exact; failures carry the witnesses.

enum class DgAxiom { leibniz, graded_comm, odd_square, unit, assoc };

struct DgBudget {
    std::size_t assoc_cap = 20000; // exhaustive triple check below this count
    std::size_t assoc_samples = 500;
    std::uint64_t seed = 42;
};

inline CheckResult check_dg_axiom(const DGGammaAlgebra& alg, DgAxiom axiom,
                                  const DgBudget& budget = {}) {
    detail::Stopwatch timer;
    CheckResult result;
    const FreeComplex& cx = alg.cx;
    const std::size_t n = cx.basis.size();
    auto elem = [&](BasisId id) { return cx.basis_element(id); };
    auto name = [&](BasisId id) { return cx.elem(id).name; };

    switch (axiom) {
    case DgAxiom::leibniz: {
        result.name = "dg.leibniz";
        for (const auto& a : cx.basis)
            for (const auto& b : cx.basis) {
                ModuleElement ab = multiply(alg, elem(a.id), elem(b.id));
                ModuleElement lhs = apply_diff(cx, ab);
                ModuleElement rhs = multiply(alg, apply_diff(cx, elem(a.id)), elem(b.id));
                ModuleElement adb = multiply(alg, elem(a.id), apply_diff(cx, elem(b.id)));
                rhs += a.hdeg % 2 == 0 ? adb : -adb;
                if (lhs != rhs)
                    result.record("d(" + a.name + " * " + b.name + ")", to_string(cx, lhs),
                                  to_string(cx, rhs));
            }
        break;
    }
    case DgAxiom::graded_comm: {
        result.name = "dg.graded_comm";
        for (const auto& a : cx.basis)
            for (const auto& b : cx.basis) {
                ModuleElement ab = multiply(alg, elem(a.id), elem(b.id));
                ModuleElement ba = multiply(alg, elem(b.id), elem(a.id));
                bool flip = a.hdeg % 2 == 1 && b.hdeg % 2 == 1;
                ModuleElement rhs = flip ? -ba : ba;
                if (ab != rhs)
                    result.record(a.name + " * " + b.name + " vs " + b.name + " * " + a.name,
                                  to_string(cx, ab), to_string(cx, rhs));
            }
        break;
    }
    case DgAxiom::odd_square: {
        result.name = "dg.odd_square";
        for (BasisId id : odd_ids(alg)) {
            ModuleElement sq = multiply(alg, elem(id), elem(id));
            if (!sq.is_zero())
                result.record(name(id) + "^2", to_string(cx, sq), "0");
        }
        break;
    }
    case DgAxiom::unit: {
        result.name = "dg.unit";
        ModuleElement one = alg.unit_element();
        for (const auto& b : cx.basis) {
            if (multiply(alg, one, elem(b.id)) != elem(b.id))
                result.record("1 * " + b.name,
                              to_string(cx, multiply(alg, one, elem(b.id))), b.name);
            if (multiply(alg, elem(b.id), one) != elem(b.id))
                result.record(b.name + " * 1",
                              to_string(cx, multiply(alg, elem(b.id), one)), b.name);
        }
        break;
    }
    case DgAxiom::assoc: {
        result.name = "dg.assoc";
        auto check_triple = [&](std::size_t i, std::size_t j, std::size_t k) {
            BasisId a = static_cast<BasisId>(i), b = static_cast<BasisId>(j),
                    c = static_cast<BasisId>(k);
            ModuleElement lhs = multiply(alg, multiply(alg, elem(a), elem(b)), elem(c));
            ModuleElement rhs = multiply(alg, elem(a), multiply(alg, elem(b), elem(c)));
            if (lhs != rhs)
                result.record("(" + name(a) + " * " + name(b) + ") * " + name(c),
                              to_string(cx, lhs), to_string(cx, rhs));
        };
        if (n * n * n <= budget.assoc_cap) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t k = 0; k < n; ++k) check_triple(i, j, k);
            result.notes.push_back("exhaustive over " + std::to_string(n * n * n) +
                                   " triples");
        } else {
            Sampler sampler(budget.seed);
            for (std::size_t s = 0; s < budget.assoc_samples; ++s)
                check_triple(sampler.next(n), sampler.next(n), sampler.next(n));
            result.notes.push_back(std::to_string(budget.assoc_samples) +
                                   " sampled triples (basis too large for exhaustive)");
        }
        break;
    }
    }
    result.seconds = timer.seconds();
    return result;
}

inline std::vector<CheckResult> check_all_dg(const DGGammaAlgebra& alg,
                                             const DgBudget& budget = {}) {
    std::vector<CheckResult> out;
    for (DgAxiom a : {DgAxiom::leibniz, DgAxiom::graded_comm, DgAxiom::odd_square,
                      DgAxiom::unit, DgAxiom::assoc})
        out.push_back(check_dg_axiom(alg, a, budget));
    return out;
}

struct GammaBudget {
    int hk_max = 6;           // exponent pairs limited by h * k <= hk_max
    std::size_t samples = 200; // random elements or pairs per check
    std::uint64_t seed = 42;
};

namespace detail {

inline bool multihomogeneous_of(const FreeComplex& cx, const ModuleElement& x,
                                const Monomial& mdeg) {
    for (const auto& [id, coeff] : x.terms())
        for (const auto& [m, c] : coeff.terms())
            if (multiply(m, cx.elem(id).mdeg) != mdeg) return false;
    return true;
}

// Test inputs for the divided power axioms: every even positive basis
// element, then random even homogeneous elements.
inline std::vector<std::pair<std::string, ModuleElement>>
gamma_test_elements(const DGGammaAlgebra& alg, const GammaBudget& budget, Sampler& sampler) {
    std::vector<std::pair<std::string, ModuleElement>> out;
    for (BasisId id : even_positive_ids(alg))
        out.emplace_back(alg.cx.elem(id).name, alg.cx.basis_element(id));
    for (std::size_t s = 0; s < budget.samples; ++s) {
        auto h = sampler.pick_even_positive_hdeg(alg);
        if (!h) break;
        out.emplace_back("sample #" + std::to_string(s), sampler.element_at(alg, *h));
    }
    return out;
}

} // namespace detail

// The divided power axioms, numbered:
//   1  normalization: x^(0) = 1, x^(1) = x, and x^(k) is bihomogeneous of
//      degree (k|x|, (deg x)^k)
//   2  x^(h) x^(k) = binom(h+k, h) x^(h+k)
//   3  (x + y)^(k) = sum_{i+j=k} x^(i) y^(j) for x, y of the same bidegree
//   4  (xy)^(k) = 0 for odd |x|, |y|; (xy)^(k) = x^k y^(k) for even |x|,
//      even positive |y|, k >= 2
//   5  (x^(h))^(k) = ((hk)!/(k!(h!)^k)) x^(hk)
//   6  d(x^(k)) = x^(k-1) d(x)
inline CheckResult check_gamma_axiom(const DGGammaAlgebra& alg, int axiom,
                                     const GammaBudget& budget = {}) {
    detail::Stopwatch timer;
    CheckResult result;
    result.name = "gamma.axiom" + std::to_string(axiom);
    const FreeComplex& cx = alg.cx;
    Sampler sampler(budget.seed + static_cast<std::uint64_t>(axiom));
    auto dp = [&](const ModuleElement& x, int k) {
        return detail::divided_power_any(alg, x, k);
    };

    switch (axiom) {
    case 1: {
        for (const auto& [key, img] : alg.gamma.entries) {
            const BasisElement& e = cx.elem(key.first);
            int k = key.second;
            for (const auto& [tid, coeff] : img.terms())
                if (cx.elem(tid).hdeg != k * e.hdeg)
                    result.record("table entry " + e.name + "^(" + std::to_string(k) + ")",
                                  "degree " + std::to_string(cx.elem(tid).hdeg),
                                  std::to_string(k * e.hdeg));
            if (!detail::multihomogeneous_of(cx, img, pow(e.mdeg, k)))
                result.record("table entry " + e.name + "^(" + std::to_string(k) + ")",
                              to_string(cx, img),
                              "multidegree " + to_string(pow(e.mdeg, k)));
        }
        for (BasisId id : even_positive_ids(alg)) {
            if (dp(cx.basis_element(id), 0) != alg.unit_element())
                result.record(cx.elem(id).name + "^(0)",
                              to_string(cx, dp(cx.basis_element(id), 0)), "1");
            if (dp(cx.basis_element(id), 1) != cx.basis_element(id))
                result.record(cx.elem(id).name + "^(1)",
                              to_string(cx, dp(cx.basis_element(id), 1)), cx.elem(id).name);
        }
        for (std::size_t s = 0; s < budget.samples; ++s) {
            auto h = sampler.pick_even_positive_hdeg(alg);
            if (!h) break;
            Monomial mdeg = Monomial::one(cx.ctx);
            ModuleElement x = sampler.bihomogeneous_at(alg, *h, mdeg);
            std::string loc = "sample #" + std::to_string(s);
            if (dp(x, 0) != alg.unit_element())
                result.record(loc + ", k=0", to_string(cx, dp(x, 0)), "1");
            if (dp(x, 1) != x) result.record(loc + ", k=1", to_string(cx, dp(x, 1)),
                                             to_string(cx, x));
            for (int k = 2; k <= budget.hk_max; ++k) {
                ModuleElement xk = dp(x, k);
                auto deg = homogeneous_hdeg(cx, xk);
                if (deg && *deg != k * *h)
                    result.record(loc + ", k=" + std::to_string(k),
                                  "degree " + std::to_string(*deg), std::to_string(k * *h));
                if (!detail::multihomogeneous_of(cx, xk, pow(mdeg, k)))
                    result.record(loc + ", k=" + std::to_string(k), to_string(cx, xk),
                                  "multidegree " + to_string(pow(mdeg, k)));
            }
        }
        break;
    }
    case 2: {
        for (const auto& [loc, x] : detail::gamma_test_elements(alg, budget, sampler))
            for (int h = 1; h <= budget.hk_max; ++h)
                for (int k = 1; h * k <= budget.hk_max; ++k) {
                    ModuleElement lhs = multiply(alg, dp(x, h), dp(x, k));
                    ModuleElement rhs = dp(x, h + k).scaled(Rational(binomial(h + k, h)));
                    if (lhs != rhs)
                        result.record(loc + ", h=" + std::to_string(h) +
                                          ", k=" + std::to_string(k),
                                      to_string(cx, lhs), to_string(cx, rhs));
                }
        break;
    }
    case 3: {
        for (std::size_t s = 0; s < budget.samples; ++s) {
            auto h = sampler.pick_even_positive_hdeg(alg);
            if (!h) break;
            Monomial mdeg = Monomial::one(cx.ctx);
            ModuleElement x = sampler.bihomogeneous_at(alg, *h, mdeg);
            ModuleElement y;
            {
                // same bidegree as x: coefficients are multiples of mdeg / m_e
                std::vector<BasisId> pool;
                for (BasisId id : cx.ids_at(*h))
                    if (divides(cx.elem(id).mdeg, mdeg)) pool.push_back(id);
                for (BasisId id : pool)
                    if (sampler.next(2) == 0)
                        y.add_term(id, sampler.nonzero_scalar(),
                                   quotient(mdeg, cx.elem(id).mdeg));
            }
            for (int k = 1; k <= budget.hk_max; ++k) {
                ModuleElement lhs = dp(x + y, k);
                ModuleElement rhs;
                for (int i = 0; i <= k; ++i)
                    rhs += multiply(alg, dp(x, i), dp(y, k - i));
                if (lhs != rhs)
                    result.record("sample #" + std::to_string(s) + ", k=" + std::to_string(k),
                                  to_string(cx, lhs), to_string(cx, rhs));
            }
        }
        break;
    }
    case 4: {
        std::vector<BasisId> odd = odd_ids(alg);
        for (BasisId a : odd)
            for (BasisId b : odd) {
                ModuleElement z = multiply(alg, cx.basis_element(a), cx.basis_element(b));
                if (z.is_zero()) continue;
                for (int k = 2; k <= budget.hk_max; ++k)
                    if (!dp(z, k).is_zero())
                        result.record("(" + cx.elem(a).name + " * " + cx.elem(b).name +
                                          ")^(" + std::to_string(k) + ")",
                                      to_string(cx, dp(z, k)), "0");
            }
        for (std::size_t s = 0; s < budget.samples; ++s) {
            auto hy = sampler.pick_even_positive_hdeg(alg);
            if (!hy) break;
            ModuleElement y = sampler.element_at(alg, *hy);
            // x of even degree, degree 0 allowed
            std::vector<int> evens{0};
            for (int h = 2; h <= cx.max_hdeg(); h += 2)
                if (!cx.ids_at(h).empty()) evens.push_back(h);
            ModuleElement x = sampler.element_at(
                alg, evens[sampler.next(evens.size())], 2);
            ModuleElement z = multiply(alg, x, y);
            for (int k = 2; k <= budget.hk_max; ++k) {
                ModuleElement lhs = dp(z, k);
                ModuleElement rhs = multiply(alg, power(alg, x, k), dp(y, k));
                if (lhs != rhs)
                    result.record("sample #" + std::to_string(s) + ", k=" + std::to_string(k),
                                  to_string(cx, lhs), to_string(cx, rhs));
            }
        }
        break;
    }
    case 5: {
        for (const auto& [loc, x] : detail::gamma_test_elements(alg, budget, sampler))
            for (int h = 1; h <= budget.hk_max; ++h)
                for (int k = 1; h * k <= budget.hk_max; ++k) {
                    ModuleElement lhs = dp(dp(x, h), k);
                    ModuleElement rhs =
                        dp(x, h * k).scaled(Rational(iterated_power_coefficient(h, k)));
                    if (lhs != rhs)
                        result.record(loc + ", h=" + std::to_string(h) +
                                          ", k=" + std::to_string(k),
                                      to_string(cx, lhs), to_string(cx, rhs));
                }
        break;
    }
    case 6: {
        for (const auto& [loc, x] : detail::gamma_test_elements(alg, budget, sampler))
            for (int k = 1; k <= budget.hk_max; ++k) {
                ModuleElement lhs = apply_diff(cx, dp(x, k));
                ModuleElement rhs = multiply(alg, dp(x, k - 1), apply_diff(cx, x));
                if (lhs != rhs)
                    result.record(loc + ", k=" + std::to_string(k), to_string(cx, lhs),
                                  to_string(cx, rhs));
            }
        break;
    }
    default:
        fail("gamma axiom index must be 1..6");
    }
    result.seconds = timer.seconds();
    return result;
}

inline std::vector<CheckResult> check_all_gamma(const DGGammaAlgebra& alg,
                                                const GammaBudget& budget = {}) {
    std::vector<CheckResult> out;
    for (int a = 1; a <= 6; ++a) out.push_back(check_gamma_axiom(alg, a, budget));
    return out;
}

} // namespace monres
