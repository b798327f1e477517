#pragma once

// Line-oriented verification reports: `PASS|FAIL|WARN <check> <location>
// <details>`, stable ordering, suitable for golden-file comparison.

#include <ostream>
#include <string>
#include <vector>

namespace ctk {

enum class Verdict { Pass, Fail, Warn, Info };

struct ReportLine {
    Verdict verdict = Verdict::Info;
    std::string check;
    std::string location;
    std::string details;
};

struct Report {
    std::vector<ReportLine> lines;

    void pass(const std::string& check, const std::string& location, const std::string& details = "ok") {
        lines.push_back({Verdict::Pass, check, location, details});
    }
    void fail(const std::string& check, const std::string& location, const std::string& details) {
        lines.push_back({Verdict::Fail, check, location, details});
    }
    void warn(const std::string& check, const std::string& location, const std::string& details) {
        lines.push_back({Verdict::Warn, check, location, details});
    }
    void info(const std::string& check, const std::string& location, const std::string& details) {
        lines.push_back({Verdict::Info, check, location, details});
    }

    void append(const Report& other) { lines.insert(lines.end(), other.lines.begin(), other.lines.end()); }

    bool all_pass(bool strict = false) const {
        for (const auto& l : lines) {
            if (l.verdict == Verdict::Fail) return false;
            if (strict && l.verdict == Verdict::Warn) return false;
        }
        return true;
    }

    long fail_count() const {
        long n = 0;
        for (const auto& l : lines)
            if (l.verdict == Verdict::Fail) ++n;
        return n;
    }

    void print(std::ostream& os) const {
        for (const auto& l : lines) {
            switch (l.verdict) {
                case Verdict::Pass: os << "PASS"; break;
                case Verdict::Fail: os << "FAIL"; break;
                case Verdict::Warn: os << "WARN"; break;
                case Verdict::Info: os << "INFO"; break;
            }
            os << " " << l.check << " " << l.location << " " << l.details << "\n";
        }
    }
};

}  // namespace ctk
