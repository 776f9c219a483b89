#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>

#include "monres/monomial.hpp"
#include "monres/rational.hpp"

namespace monres {

using BasisId = std::int32_t;

// Polynomial with rational coefficients, canonical form: no zero terms.
class RingElement {
public:
    RingElement() = default;

    static RingElement term(Rational c, const Monomial& m) {
        RingElement r;
        r.add_term(m, std::move(c));
        return r;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    RingElement& operator+=(const RingElement& other) {
        for (const auto& [m, c] : other.terms_) add_term(m, c);
        return *this;
    }

    friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }

    RingElement operator-() const {
        RingElement r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend RingElement operator-(RingElement a, const RingElement& b) { return a += -b; }

    friend RingElement operator*(const RingElement& a, const RingElement& b) {
        RingElement r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(multiply(ma, mb), ca * cb);
        return r;
    }

    RingElement scaled(const Rational& c) const {
        RingElement r;
        if (c == 0) return r;
        for (const auto& [m, coeff] : terms_) r.terms_.emplace(m, coeff * c);
        return r;
    }

    // The unique term if there is exactly one, else nullopt.
    std::optional<std::pair<Rational, Monomial>> single_term() const {
        if (terms_.size() != 1) return std::nullopt;
        const auto& [m, c] = *terms_.begin();
        return std::make_pair(c, m);
    }

    friend bool operator==(const RingElement& a, const RingElement& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const RingElement& a, const RingElement& b) { return !(a == b); }

private:
    std::map<Monomial, Rational> terms_;
};

inline std::string to_string(const RingElement& r) {
    if (r.is_zero()) return "0";
    std::string s;
    for (const auto& [m, c] : r.terms()) {
        std::string cs = to_string(c);
        bool negative = !cs.empty() && cs[0] == '-';
        if (negative) cs = cs.substr(1);
        if (s.empty())
            s += negative ? "-" : "";
        else
            s += negative ? " - " : " + ";
        if (m.is_one())
            s += cs;
        else if (cs == "1")
            s += to_string(m);
        else
            s += cs + "*" + to_string(m);
    }
    return s;
}

// Element of a free module: finite sum of (ring coefficient) * basis element,
// keyed by basis id. Canonical form: no zero coefficients.
class ModuleElement {
public:
    ModuleElement() = default;

    static ModuleElement basis(BasisId id, const Monomial& one_monomial) {
        ModuleElement x;
        x.add(id, RingElement::term(1, one_monomial));
        return x;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<BasisId, RingElement>& terms() const { return terms_; }

    void add(BasisId id, const RingElement& coeff) {
        if (coeff.is_zero()) return;
        auto [it, inserted] = terms_.emplace(id, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void add_term(BasisId id, const Rational& c, const Monomial& m) {
        add(id, RingElement::term(c, m));
    }

    ModuleElement& operator+=(const ModuleElement& other) {
        for (const auto& [id, coeff] : other.terms_) add(id, coeff);
        return *this;
    }

    friend ModuleElement operator+(ModuleElement a, const ModuleElement& b) { return a += b; }

    ModuleElement operator-() const {
        ModuleElement r;
        for (const auto& [id, coeff] : terms_) r.terms_.emplace(id, -coeff);
        return r;
    }

    friend ModuleElement operator-(ModuleElement a, const ModuleElement& b) { return a += -b; }

    ModuleElement scaled(const RingElement& f) const {
        ModuleElement r;
        for (const auto& [id, coeff] : terms_) r.add(id, f * coeff);
        return r;
    }

    ModuleElement scaled(const Rational& c) const {
        ModuleElement r;
        if (c == 0) return r;
        for (const auto& [id, coeff] : terms_) r.terms_.emplace(id, coeff.scaled(c));
        return r;
    }

    friend bool operator==(const ModuleElement& a, const ModuleElement& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const ModuleElement& a, const ModuleElement& b) { return !(a == b); }

private:
    std::map<BasisId, RingElement> terms_;
};

} // namespace monres
