#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace monres {

struct Violation {
    std::string location; // which object / which indices
    std::string lhs;
    std::string rhs;
};

// Outcome of one named check. Fails exactly when a violation was recorded;
// at most kMaxStored violations are kept (total count is still tracked).
struct CheckResult {
    static constexpr std::size_t kMaxStored = 100;

    std::string name;
    std::vector<Violation> violations;
    std::size_t violation_count = 0;
    std::vector<std::string> notes; // informational, shown in text output only
    double seconds = 0.0;

    bool passed() const { return violation_count == 0; }

    void record(std::string location, std::string lhs, std::string rhs) {
        ++violation_count;
        if (violations.size() < kMaxStored)
            violations.push_back({std::move(location), std::move(lhs), std::move(rhs)});
    }
};

struct Report {
    std::string command;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed()) return false;
        return true;
    }

    std::string summary() const {
        std::size_t ok = 0;
        for (const auto& c : checks) ok += c.passed() ? 1 : 0;
        return std::to_string(ok) + "/" + std::to_string(checks.size()) + " checks passed";
    }
};

inline void print_report(const Report& r, std::ostream& out) {
    for (const auto& c : r.checks) {
        out << (c.passed() ? "PASS" : "FAIL") << "  " << c.name << "  ("
            << c.seconds << "s)\n";
        for (const auto& n : c.notes) out << "      note: " << n << "\n";
        for (const auto& v : c.violations)
            out << "      at " << v.location << ": " << v.lhs << "  !=  " << v.rhs << "\n";
        if (c.violation_count > c.violations.size())
            out << "      ... " << (c.violation_count - c.violations.size())
                << " more violations\n";
    }
    out << r.summary() << "\n";
}

} // namespace monres
