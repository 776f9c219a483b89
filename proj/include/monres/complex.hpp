#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "monres/element.hpp"
#include "monres/matrix.hpp"
#include "monres/monomial.hpp"
#include "monres/report.hpp"

namespace monres {

// How a basis element arose. Indices:
//   subset - sorted 1-based generator indices (empty set is labelled unit)
//   slot   - the single exterior generator of a length-1 resolution
//   tuple  - one basis id per factor of a product construction
enum class LabelKind { unit, subset, slot, tuple };

struct BasisLabel {
    LabelKind kind = LabelKind::unit;
    std::vector<int> indices;

    static BasisLabel unit() { return {LabelKind::unit, {}}; }
    static BasisLabel subset(std::vector<int> s) { return {LabelKind::subset, std::move(s)}; }
    static BasisLabel slot() { return {LabelKind::slot, {0}}; }
    static BasisLabel tuple(std::vector<int> components) {
        return {LabelKind::tuple, std::move(components)};
    }

    friend bool operator==(const BasisLabel& a, const BasisLabel& b) {
        return a.kind == b.kind && a.indices == b.indices;
    }
};

struct BasisElement {
    BasisId id = 0;
    int hdeg = 0;
    Monomial mdeg;
    BasisLabel label;
    std::string name; // display only, derived from the label at construction
};

// Finitely generated free multigraded complex over a polynomial ring.
// basis[i].id == i; basis is grouped by homological degree in increasing
// order with exactly one degree-0 (unit) generator of multidegree 1.
// Differential coefficients are scalar * monomial with exact multigrading:
// coeff monomial * target mdeg == source mdeg.
struct FreeComplex {
    ContextPtr ctx;
    std::vector<BasisElement> basis;
    std::vector<ModuleElement> diff; // by id; empty element in degree 0
    std::vector<Monomial> augmentation;

    const BasisElement& elem(BasisId id) const {
        require(id >= 0 && static_cast<std::size_t>(id) < basis.size(),
                "complex: unknown basis id " + std::to_string(id));
        return basis[static_cast<std::size_t>(id)];
    }

    int max_hdeg() const { return basis.empty() ? 0 : basis.back().hdeg; }

    std::vector<BasisId> ids_at(int hdeg) const {
        std::vector<BasisId> out;
        for (const auto& b : basis)
            if (b.hdeg == hdeg) out.push_back(b.id);
        return out;
    }

    std::vector<std::size_t> ranks() const {
        std::vector<std::size_t> r(static_cast<std::size_t>(max_hdeg()) + 1, 0);
        for (const auto& b : basis) ++r[static_cast<std::size_t>(b.hdeg)];
        return r;
    }

    ModuleElement basis_element(BasisId id) const {
        return ModuleElement::basis(id, Monomial::one(ctx));
    }

    // Structural invariants; call after filling basis/diff/augmentation.
    void validate() const {
        require(ctx != nullptr, "complex: missing variable context");
        require(!basis.empty(), "complex: empty basis");
        require(diff.size() == basis.size(), "complex: differential size mismatch");
        int prev = 0;
        std::size_t units = 0;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const BasisElement& b = basis[i];
            require(b.id == static_cast<BasisId>(i), "complex: ids must be consecutive");
            require(b.hdeg >= 0, "complex: negative homological degree");
            require(i == 0 || b.hdeg >= prev, "complex: basis not grouped by degree");
            prev = b.hdeg;
            require(*b.mdeg.context() == *ctx, "complex: mixed variable contexts");
            if (b.hdeg == 0) {
                ++units;
                require(b.mdeg.is_one(), "complex: degree-0 generator must have multidegree 1");
            }
        }
        require(units == 1, "complex: need exactly one degree-0 generator");
        for (const auto& m : augmentation)
            require(*m.context() == *ctx, "complex: augmentation in wrong context");

        for (std::size_t i = 0; i < basis.size(); ++i) {
            const BasisElement& b = basis[i];
            const ModuleElement& img = diff[i];
            if (b.hdeg == 0) {
                require(img.is_zero(), "complex: differential must vanish in degree 0");
                continue;
            }
            for (const auto& [tid, coeff] : img.terms()) {
                const BasisElement& t = elem(tid);
                require(t.hdeg == b.hdeg - 1,
                        "complex: differential of " + b.name + " not of degree " +
                            std::to_string(b.hdeg - 1));
                auto st = coeff.single_term();
                require(st.has_value(),
                        "complex: differential coefficient of " + b.name +
                            " is not scalar * monomial");
                require(multiply(st->second, t.mdeg) == b.mdeg,
                        "complex: differential of " + b.name + " breaks the multigrading");
            }
        }
    }
};

inline std::string to_string(const FreeComplex& cx, const ModuleElement& x) {
    if (x.is_zero()) return "0";
    std::string s;
    for (const auto& [id, coeff] : x.terms()) {
        std::string cs = to_string(coeff);
        if (!s.empty()) s += " + ";
        if (cs == "1")
            s += cx.elem(id).name;
        else if (cs == "-1")
            s += "-" + cx.elem(id).name;
        else if (coeff.terms().size() > 1)
            s += "(" + cs + ")*" + cx.elem(id).name;
        else
            s += cs + "*" + cx.elem(id).name;
    }
    return s;
}

// Homological degree of a homogeneous element; nullopt for zero.
inline std::optional<int> homogeneous_hdeg(const FreeComplex& cx, const ModuleElement& x) {
    std::optional<int> h;
    for (const auto& [id, coeff] : x.terms()) {
        int d = cx.elem(id).hdeg;
        if (!h)
            h = d;
        else
            require(*h == d, "element has mixed homological degree");
    }
    return h;
}

// Linear extension of the differential to a homogeneous element.
inline ModuleElement apply_diff(const FreeComplex& cx, const ModuleElement& x) {
    homogeneous_hdeg(cx, x); // rejects mixed degrees
    ModuleElement out;
    for (const auto& [id, coeff] : x.terms()) {
        cx.elem(id);
        out += cx.diff[static_cast<std::size_t>(id)].scaled(coeff);
    }
    return out;
}

namespace detail {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace detail

inline CheckResult check_d_squared(const FreeComplex& cx) {
    detail::Stopwatch timer;
    CheckResult result;
    result.name = "d2";
    for (const auto& b : cx.basis) {
        if (b.hdeg < 2) continue;
        ModuleElement dd = apply_diff(cx, cx.diff[static_cast<std::size_t>(b.id)]);
        if (!dd.is_zero())
            result.record(b.name, "d(d(" + b.name + ")) = " + to_string(cx, dd), "0");
    }
    result.seconds = timer.seconds();
    return result;
}

// Matrices of the strand of multidegree b: component i of the result is the
// matrix of d_{i+1} restricted to basis elements whose multidegree divides b,
// rows indexed by degree-i survivors, columns by degree-(i+1) survivors,
// entries the scalar parts of the differential coefficients.
inline std::vector<DenseMatrix> strand(const FreeComplex& cx, const Monomial& b) {
    std::vector<std::vector<BasisId>> level(static_cast<std::size_t>(cx.max_hdeg()) + 1);
    std::vector<std::map<BasisId, std::size_t>> pos(level.size());
    for (const auto& e : cx.basis)
        if (divides(e.mdeg, b)) {
            auto h = static_cast<std::size_t>(e.hdeg);
            pos[h][e.id] = level[h].size();
            level[h].push_back(e.id);
        }

    std::vector<DenseMatrix> out;
    for (std::size_t i = 1; i < level.size(); ++i) {
        DenseMatrix d(level[i - 1].size(), level[i].size());
        for (std::size_t col = 0; col < level[i].size(); ++col) {
            const ModuleElement& img = cx.diff[static_cast<std::size_t>(level[i][col])];
            for (const auto& [tid, coeff] : img.terms()) {
                auto it = pos[i - 1].find(tid);
                // target divides source mdeg, so it survives whenever the source does
                require(it != pos[i - 1].end(), "strand: multigrading violation");
                d.at(it->second, col) = coeff.single_term()->first;
            }
        }
        out.push_back(std::move(d));
    }
    return out;
}

enum class StrandMode { lattice, box };

struct ResolutionOptions {
    StrandMode mode = StrandMode::lattice;
    std::int64_t box_bound = 4;
    std::size_t cell_cap = 200000;
};

// Multidegrees whose strands determine exactness everywhere: the lcm lattice
// of the basis multidegrees, plus 1 and the augmentation generators.
inline std::set<Monomial> lattice_strand_degrees(const FreeComplex& cx) {
    std::set<Monomial> seed;
    for (const auto& b : cx.basis) seed.insert(b.mdeg);
    std::set<Monomial> out = lcm_closure(seed);
    out.insert(Monomial::one(cx.ctx));
    for (const auto& g : cx.augmentation) out.insert(g);
    return out;
}

inline std::set<Monomial> box_strand_degrees(const FreeComplex& cx,
                                             const ResolutionOptions& opt) {
    require(opt.box_bound >= 0, "strand box: negative bound");
    std::size_t n = cx.ctx->size();
    double cells = 1;
    for (std::size_t i = 0; i < n; ++i) cells *= static_cast<double>(opt.box_bound + 1);
    require(cells <= static_cast<double>(opt.cell_cap),
            "strand box: " + std::to_string(static_cast<std::uint64_t>(cells)) +
                " cells exceed the cap of " + std::to_string(opt.cell_cap));
    std::set<Monomial> out;
    std::vector<std::int64_t> e(n, 0);
    while (true) {
        out.insert(Monomial(cx.ctx, e));
        std::size_t i = 0;
        while (i < n && e[i] == opt.box_bound) e[i++] = 0;
        if (i == n) break;
        ++e[i];
    }
    return out;
}

// Checks that the complex resolves R/(augmentation): for every multidegree b
// in the test set, the scalar strand must be exact in positive degrees and
// have 0-th homology of dimension 1 exactly when some generator divides b.
inline CheckResult verify_resolution(const FreeComplex& cx,
                                     const ResolutionOptions& opt = {}) {
    detail::Stopwatch timer;
    CheckResult result;
    result.name = "resolution";
    require(!cx.augmentation.empty(), "verify resolution: no augmentation");

    std::set<Monomial> degrees = opt.mode == StrandMode::lattice
                                     ? lattice_strand_degrees(cx)
                                     : box_strand_degrees(cx, opt);
    result.notes.push_back(std::to_string(degrees.size()) + " strands checked");

    for (const Monomial& b : degrees) {
        std::vector<DenseMatrix> d = strand(cx, b);
        std::vector<std::size_t> r(d.size() + 2, 0);
        for (std::size_t i = 0; i < d.size(); ++i) r[i + 1] = rank(d[i]);

        bool covered = false;
        for (const auto& g : cx.augmentation) covered = covered || divides(g, b);
        std::size_t h0 = (d.empty() ? 1 : d[0].rows()) - r[1];
        std::size_t expected_h0 = covered ? 0 : 1;
        if (h0 != expected_h0)
            result.record("multidegree " + to_string(b) + ", homological degree 0",
                          "homology dimension " + std::to_string(h0),
                          std::to_string(expected_h0));

        for (std::size_t i = 1; i <= d.size(); ++i) {
            std::size_t dim = d[i - 1].cols();
            if (r[i] + r[i + 1] != dim)
                result.record(
                    "multidegree " + to_string(b) + ", homological degree " + std::to_string(i),
                    "rank d_" + std::to_string(i) + " + rank d_" + std::to_string(i + 1) +
                        " = " + std::to_string(r[i] + r[i + 1]),
                    "strand dimension " + std::to_string(dim));
        }
    }
    result.seconds = timer.seconds();
    return result;
}

} // namespace monres
