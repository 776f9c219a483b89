#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "monres/error.hpp"

namespace monres {

// Fixed, ordered list of variable names. Shared by every monomial of a
// computation; all binary operations require the same variable list.
class VarContext {
public:
    explicit VarContext(std::vector<std::string> names) : names_(std::move(names)) {
        require(!names_.empty(), "variable context: need at least one variable");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            const std::string& n = names_[i];
            require(!n.empty(), "variable context: empty variable name");
            require(n != "1", "variable context: '1' is not a valid variable name");
            require(n.find_first_of("*^ \t\n") == std::string::npos,
                    "variable context: name '" + n + "' contains a reserved character");
            require(index_.emplace(n, i).second,
                    "variable context: duplicate variable '" + n + "'");
        }
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }

    std::optional<std::size_t> index_of(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    friend bool operator==(const VarContext& a, const VarContext& b) {
        return a.names_ == b.names_;
    }

private:
    std::vector<std::string> names_;
    std::map<std::string, std::size_t> index_;
};

using ContextPtr = std::shared_ptr<const VarContext>;

inline ContextPtr make_context(std::vector<std::string> names) {
    return std::make_shared<const VarContext>(std::move(names));
}

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    require(!__builtin_add_overflow(a, b, &r), "monomial: exponent overflow in addition");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    require(!__builtin_mul_overflow(a, b, &r), "monomial: exponent overflow in multiplication");
    return r;
}

} // namespace detail

// Monomial in the variables of a context, stored as its exponent vector.
// Exponents are nonnegative; arithmetic is overflow-checked.
class Monomial {
public:
    Monomial(ContextPtr ctx, std::vector<std::int64_t> exponents)
        : ctx_(std::move(ctx)), exp_(std::move(exponents)) {
        require(ctx_ != nullptr, "monomial: null context");
        require(exp_.size() == ctx_->size(),
                "monomial: exponent vector length does not match variable count");
        for (std::int64_t e : exp_)
            require(e >= 0, "monomial: negative exponent");
    }

    static Monomial one(ContextPtr ctx) {
        std::size_t n = ctx->size();
        return Monomial(std::move(ctx), std::vector<std::int64_t>(n, 0));
    }

    static Monomial variable(ContextPtr ctx, std::size_t i) {
        std::vector<std::int64_t> e(ctx->size(), 0);
        e.at(i) = 1;
        return Monomial(std::move(ctx), std::move(e));
    }

    const ContextPtr& context() const { return ctx_; }
    const std::vector<std::int64_t>& exponents() const { return exp_; }
    std::int64_t exponent(std::size_t i) const { return exp_.at(i); }

    bool is_one() const {
        return std::all_of(exp_.begin(), exp_.end(), [](std::int64_t e) { return e == 0; });
    }

    bool is_squarefree() const {
        return std::all_of(exp_.begin(), exp_.end(), [](std::int64_t e) { return e <= 1; });
    }

    std::int64_t total_degree() const {
        std::int64_t t = 0;
        for (std::int64_t e : exp_) t = detail::checked_add(t, e);
        return t;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return *a.ctx_ == *b.ctx_ && a.exp_ == b.exp_;
    }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    // Lexicographic order on exponent vectors; total within one context.
    friend bool operator<(const Monomial& a, const Monomial& b) {
        require(*a.ctx_ == *b.ctx_, "monomial: comparing across different contexts");
        return a.exp_ < b.exp_;
    }

private:
    ContextPtr ctx_;
    std::vector<std::int64_t> exp_;
};

inline void require_same_context(const Monomial& a, const Monomial& b) {
    require(*a.context() == *b.context(), "monomial: operands from different contexts");
}

inline Monomial multiply(const Monomial& a, const Monomial& b) {
    require_same_context(a, b);
    std::vector<std::int64_t> e(a.exponents());
    for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = detail::checked_add(e[i], b.exponent(i));
    return Monomial(a.context(), std::move(e));
}

inline Monomial pow(const Monomial& a, std::int64_t k) {
    require(k >= 0, "monomial: negative power");
    std::vector<std::int64_t> e(a.exponents());
    for (auto& x : e) x = detail::checked_mul(x, k);
    return Monomial(a.context(), std::move(e));
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
    require_same_context(a, b);
    std::vector<std::int64_t> e(a.exponents());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(e[i], b.exponent(i));
    return Monomial(a.context(), std::move(e));
}

inline Monomial gcd(const Monomial& a, const Monomial& b) {
    require_same_context(a, b);
    std::vector<std::int64_t> e(a.exponents());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::min(e[i], b.exponent(i));
    return Monomial(a.context(), std::move(e));
}

inline bool divides(const Monomial& a, const Monomial& b) {
    require_same_context(a, b);
    for (std::size_t i = 0; i < a.exponents().size(); ++i)
        if (a.exponent(i) > b.exponent(i)) return false;
    return true;
}

// a / b; errors unless b | a.
inline Monomial quotient(const Monomial& a, const Monomial& b) {
    require_same_context(a, b);
    std::vector<std::int64_t> e(a.exponents());
    for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] -= b.exponent(i);
        require(e[i] >= 0, "monomial: quotient is not a monomial");
    }
    return Monomial(a.context(), std::move(e));
}

// x_1 * ... * x_n; the squarefree part of m is gcd(m, all_variables(ctx)).
inline Monomial all_variables(ContextPtr ctx) {
    std::size_t n = ctx->size();
    return Monomial(std::move(ctx), std::vector<std::int64_t>(n, 1));
}

inline std::string to_string(const Monomial& m) {
    if (m.is_one()) return "1";
    std::string s;
    for (std::size_t i = 0; i < m.exponents().size(); ++i) {
        std::int64_t e = m.exponent(i);
        if (e == 0) continue;
        if (!s.empty()) s += '*';
        s += m.context()->name(i);
        if (e > 1) s += '^' + std::to_string(e);
    }
    return s;
}

// Grammar: 1 | var(^int)?(*var(^int)?)*   with every exponent >= 1.
inline Monomial parse_monomial(std::string_view text, const ContextPtr& ctx) {
    auto strip = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    text = strip(text);
    require(!text.empty(), "monomial parse: empty input");
    if (text == "1") return Monomial::one(ctx);

    std::vector<std::int64_t> e(ctx->size(), 0);
    std::size_t pos = 0;
    while (true) {
        std::size_t star = text.find('*', pos);
        std::string_view factor = strip(text.substr(pos, star == std::string_view::npos
                                                             ? std::string_view::npos
                                                             : star - pos));
        require(!factor.empty(), "monomial parse: empty factor in '" + std::string(text) + "'");

        std::size_t caret = factor.find('^');
        std::string_view name = factor.substr(0, caret);
        std::int64_t exp = 1;
        if (caret != std::string_view::npos) {
            std::string_view digits = factor.substr(caret + 1);
            require(!digits.empty(), "monomial parse: missing exponent after '^'");
            require(digits.front() != '-', "monomial parse: exponent must be >= 1, got '" +
                                               std::string(digits) + "'");
            exp = 0;
            for (char c : digits) {
                require(c >= '0' && c <= '9',
                        "monomial parse: malformed exponent '" + std::string(digits) + "'");
                exp = detail::checked_add(detail::checked_mul(exp, 10), c - '0');
            }
            require(exp >= 1, "monomial parse: exponent must be >= 1");
        }
        auto idx = ctx->index_of(name);
        require(idx.has_value(), "monomial parse: unknown variable '" + std::string(name) + "'");
        e[*idx] = detail::checked_add(e[*idx], exp);

        if (star == std::string_view::npos) break;
        pos = star + 1;
    }
    return Monomial(ctx, std::move(e));
}

// Smallest set containing the input and closed under pairwise lcm.
inline std::set<Monomial> lcm_closure(const std::set<Monomial>& ms) {
    require(!ms.empty(), "lcm closure: empty input");
    std::set<Monomial> out(ms);
    std::vector<Monomial> work(ms.begin(), ms.end());
    while (!work.empty()) {
        Monomial m = work.back();
        work.pop_back();
        for (const Monomial& other : std::vector<Monomial>(out.begin(), out.end())) {
            Monomial l = lcm(m, other);
            if (out.insert(l).second) work.push_back(l);
        }
    }
    return out;
}

} // namespace monres
