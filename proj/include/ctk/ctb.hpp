#pragma once

// The CTB text format: UTF-8, line based, '#' starts a comment.
//
// Core stanzas:
//   TABLE <id> ... END with GROUPORDER / NCLASSES / CLASS / POWERMAP /
//   CHARACTER / SUBORBIT lines, and FUSION lines between tables.
// Sidecar stanzas for search jobs: DECOMP, FUSIONPROBLEM, SYLOW, LEDGER.
//
// Entry syntax shared by POWERMAP, FUSION and SEED lines:
//   <index> | ? | {i,j,...}
// A CHARACTER value of '?' makes the line a partial character.
//
// Serialization is byte-deterministic: fixed stanza order, single spaces,
// integers in full decimal, cyclotomic values in canonical literal form.

#include "cyclotomic.hpp"
#include "numeric.hpp"
#include "problems.hpp"
#include "tables.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

namespace ctk {

struct SuborbitLine {
    std::string stabilizer_id;
    BigInt orbit_length;
};

struct TableBundle {
    TableHead head;
    std::vector<Character> characters;
    std::vector<PartialCharacter> partial_characters;
    std::vector<SuborbitLine> suborbits;
    std::string index_in;  // table id this one is a point stabilizer in, or empty
};

struct CtbFile {
    std::vector<TableBundle> tables;
    std::vector<FusionMap> fusions;
    std::vector<PartialCharacter> partials;  // top-level PARTIAL stanzas
    std::vector<DecompositionProblem> decomps;
    std::vector<FusionProblem> fusion_problems;
    std::vector<SylowProblem> sylow_problems;
    std::vector<ClassLedger> ledgers;

    const TableBundle* find_table(const std::string& id) const {
        for (const auto& t : tables)
            if (t.head.id == id) return &t;
        return nullptr;
    }

    const FusionMap* find_fusion(const std::string& from, const std::string& to) const {
        for (const auto& f : fusions)
            if (f.from_head == from && f.to_head == to) return &f;
        return nullptr;
    }
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

inline MapEntry parse_map_entry(const std::string& tok, long line_no) {
    if (tok == "?") return MapEntry::unknown();
    if (tok.front() == '{') {
        if (tok.back() != '}') throw ParseError("unterminated candidate set '" + tok + "'", line_no);
        std::vector<int> cs;
        std::string inner = tok.substr(1, tok.size() - 2);
        std::istringstream is(inner);
        std::string part;
        while (std::getline(is, part, ','))
            cs.push_back(static_cast<int>(parse_bigint(part).convert_to<long>()));
        if (cs.empty()) throw ParseError("empty candidate set", line_no);
        return MapEntry::candidates(std::move(cs));
    }
    return MapEntry::resolved(static_cast<int>(parse_bigint(tok).convert_to<long>()));
}

inline std::string format_map_entry(const MapEntry& e) {
    if (e.is_unknown()) return "?";
    if (e.is_resolved()) return std::to_string(e.value());
    std::string s = "{";
    const auto& cs = e.candidate_set();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(cs[i]);
    }
    return s + "}";
}

class CtbParser {
public:
    explicit CtbParser(std::istream& in) : in_(in) {}

    CtbFile parse() {
        CtbFile file;
        std::string raw;
        while (next_line(raw)) {
            auto toks = split_ws(raw);
            if (toks.empty()) continue;
            const std::string& kw = toks[0];
            if (kw == "TABLE") {
                parse_table(file, toks);
            } else if (kw == "FUSION") {
                parse_fusion(file, toks);
            } else if (kw == "PARTIAL") {
                parse_partial(file, toks);
            } else if (kw == "DECOMP") {
                parse_decomp(file, toks);
            } else if (kw == "FUSIONPROBLEM") {
                parse_fusion_problem(file, toks);
            } else if (kw == "SYLOW") {
                parse_sylow(file, toks);
            } else if (kw == "LEDGER") {
                parse_ledger(file, toks);
            } else {
                throw ParseError("unexpected keyword '" + kw + "' at top level", line_no_);
            }
        }
        // fusions are checked once both endpoints are available in the file
        for (const auto& fus : file.fusions) {
            const TableBundle* sub = file.find_table(fus.from_head);
            const TableBundle* big = file.find_table(fus.to_head);
            if (sub && big && !sub->head.is_stub() && !big->head.is_stub()) fus.validate(sub->head, big->head);
        }
        return file;
    }

private:
    std::istream& in_;
    long line_no_ = 0;

    bool next_line(std::string& out) {
        std::string raw;
        while (std::getline(in_, raw)) {
            ++line_no_;
            auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            if (raw.find_first_not_of(" \t\r\n") == std::string::npos) continue;
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            out = raw;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line_no_); }

    std::vector<std::string> expect_line() {
        std::string raw;
        if (!next_line(raw)) fail("unexpected end of input");
        return split_ws(raw);
    }

    void parse_table(CtbFile& file, const std::vector<std::string>& header) {
        if (header.size() != 2) fail("TABLE expects exactly one id");
        TableBundle bundle;
        bundle.head.id = header[1];
        long n_classes = -1;
        bool have_order = false;
        std::vector<bool> have_class;
        while (true) {
            auto toks = expect_line();
            const std::string& kw = toks[0];
            if (kw == "END") break;
            if (kw == "GROUPORDER") {
                if (toks.size() != 2) fail("GROUPORDER expects one value");
                bundle.head.group_order = parse_bigint(toks[1]);
                have_order = true;
            } else if (kw == "NCLASSES") {
                if (toks.size() != 2) fail("NCLASSES expects one value");
                n_classes = parse_bigint(toks[1]).convert_to<long>();
                if (n_classes < 0) fail("NCLASSES must be nonnegative");
                bundle.head.classes.resize(static_cast<std::size_t>(n_classes));
                have_class.assign(static_cast<std::size_t>(n_classes), false);
            } else if (kw == "CLASS") {
                if (n_classes < 0) fail("CLASS before NCLASSES");
                if (toks.size() != 5) fail("CLASS expects: index name order centralizer");
                long idx = parse_bigint(toks[1]).convert_to<long>();
                if (idx < 0 || idx >= n_classes) fail("class index " + toks[1] + " out of range");
                if (have_class[static_cast<std::size_t>(idx)]) fail("duplicate CLASS " + toks[1]);
                have_class[static_cast<std::size_t>(idx)] = true;
                ClassRecord& rec = bundle.head.classes[static_cast<std::size_t>(idx)];
                rec.name = toks[2];
                rec.element_order = parse_bigint(toks[3]).convert_to<long>();
                rec.centralizer_order = parse_bigint(toks[4]);
            } else if (kw == "POWERMAP") {
                if (n_classes < 0) fail("POWERMAP before NCLASSES");
                if (static_cast<long>(toks.size()) != 2 + n_classes)
                    fail("POWERMAP expects prime followed by " + std::to_string(n_classes) + " entries");
                long p = parse_bigint(toks[1]).convert_to<long>();
                PartialClassMap pm;
                pm.reserve(static_cast<std::size_t>(n_classes));
                for (long i = 0; i < n_classes; ++i) pm.push_back(parse_map_entry(toks[2 + i], line_no_));
                if (!bundle.head.power_maps.emplace(p, std::move(pm)).second) fail("duplicate POWERMAP " + toks[1]);
            } else if (kw == "CHARACTER") {
                if (n_classes < 0) fail("CHARACTER before NCLASSES");
                if (static_cast<long>(toks.size()) != 2 + n_classes)
                    fail("CHARACTER expects name followed by " + std::to_string(n_classes) + " values");
                bool partial = false;
                for (long i = 0; i < n_classes; ++i)
                    if (toks[2 + i] == "?") partial = true;
                if (partial) {
                    PartialCharacter pc;
                    pc.name = toks[1];
                    pc.head_id = bundle.head.id;
                    for (long i = 0; i < n_classes; ++i) {
                        if (toks[2 + i] == "?")
                            pc.values.emplace_back(std::nullopt);
                        else
                            pc.values.emplace_back(parse_value(toks[2 + i]));
                    }
                    bundle.partial_characters.push_back(std::move(pc));
                } else {
                    Character ch;
                    ch.name = toks[1];
                    ch.fn.head_id = bundle.head.id;
                    ch.claimed_irreducible = true;
                    for (long i = 0; i < n_classes; ++i) ch.fn.values.push_back(parse_value(toks[2 + i]));
                    bundle.characters.push_back(std::move(ch));
                }
            } else if (kw == "SUBORBIT") {
                if (toks.size() != 3) fail("SUBORBIT expects: stabilizer-id orbit-length");
                bundle.suborbits.push_back({toks[1], parse_bigint(toks[2])});
            } else if (kw == "INDEXIN") {
                if (toks.size() != 2) fail("INDEXIN expects one table id");
                bundle.index_in = toks[1];
            } else {
                fail("unexpected keyword '" + kw + "' inside TABLE");
            }
        }
        if (!have_order) fail("TABLE " + bundle.head.id + " lacks GROUPORDER");
        if (n_classes < 0) fail("TABLE " + bundle.head.id + " lacks NCLASSES");
        for (long i = 0; i < n_classes; ++i)
            if (!have_class[static_cast<std::size_t>(i)])
                fail("TABLE " + bundle.head.id + " lacks CLASS " + std::to_string(i));
        try {
            bundle.head.validate();
            for (const auto& ch : bundle.characters) ch.validate(bundle.head);
            for (const auto& pc : bundle.partial_characters) pc.validate(bundle.head);
        } catch (const Error& e) {
            fail(e.what());
        }
        if (file.find_table(bundle.head.id)) fail("duplicate TABLE " + bundle.head.id);
        file.tables.push_back(std::move(bundle));
    }

    Cyclotomic parse_value(const std::string& tok) {
        try {
            return parse_cyclotomic(tok);
        } catch (const Error& e) {
            fail(e.what());
        }
    }

    void parse_fusion(CtbFile& file, const std::vector<std::string>& toks) {
        // FUSION <from> -> <to> <entries...>
        if (toks.size() < 4 || toks[2] != "->") fail("FUSION expects: <from> -> <to> entries...");
        FusionMap fus;
        fus.from_head = toks[1];
        fus.to_head = toks[3];
        for (std::size_t i = 4; i < toks.size(); ++i) fus.entries.push_back(parse_map_entry(toks[i], line_no_));
        const TableBundle* sub = file.find_table(fus.from_head);
        if (sub && !sub->head.is_stub() && static_cast<int>(fus.entries.size()) != sub->head.n_classes())
            fail("FUSION " + fus.from_head + " -> " + fus.to_head + " has " + std::to_string(fus.entries.size()) +
                 " entries, table has " + std::to_string(sub->head.n_classes()) + " classes");
        file.fusions.push_back(std::move(fus));
    }

    void parse_partial(CtbFile& file, const std::vector<std::string>& toks) {
        // PARTIAL <name> ON <head-id> <value-or-?...>
        if (toks.size() < 5 || toks[2] != "ON") fail("PARTIAL expects: <name> ON <head-id> values...");
        PartialCharacter pc;
        pc.name = toks[1];
        pc.head_id = toks[3];
        for (std::size_t i = 4; i < toks.size(); ++i) {
            if (toks[i] == "?")
                pc.values.emplace_back(std::nullopt);
            else
                pc.values.emplace_back(parse_value(toks[i]));
        }
        file.partials.push_back(std::move(pc));
    }

    void parse_decomp(CtbFile& file, const std::vector<std::string>& header) {
        if (header.size() != 2) fail("DECOMP expects exactly one id");
        DecompositionProblem prob;
        prob.id = header[1];
        while (true) {
            auto toks = expect_line();
            const std::string& kw = toks[0];
            if (kw == "END") break;
            if (kw == "TARGET") {
                if (toks.size() != 2) fail("TARGET expects one value");
                prob.target_degree = parse_bigint(toks[1]);
            } else if (kw == "CLASSES") {
                prob.classes.assign(toks.begin() + 1, toks.end());
            } else if (kw == "CANDIDATE") {
                if (toks.size() < 3) fail("CANDIDATE expects: name degree values...");
                if (toks.size() != 3 + prob.classes.size())
                    fail("CANDIDATE " + toks[1] + " expects " + std::to_string(prob.classes.size()) + " values");
                DecompCandidate cand;
                cand.name = toks[1];
                cand.degree = parse_bigint(toks[2]);
                for (std::size_t i = 0; i < prob.classes.size(); ++i) {
                    const std::string& tok = toks[3 + i];
                    if (tok == "?") continue;
                    cand.values[prob.classes[i]] = parse_value(tok);
                }
                prob.candidates.push_back(std::move(cand));
            } else if (kw == "MAXDISTINCT") {
                if (toks.size() < 4 || toks[2] != "ON") fail("MAXDISTINCT expects: k ON classes...");
                Constraint con;
                con.kind = Constraint::Kind::MaxDistinctValues;
                con.max_distinct = parse_bigint(toks[1]).convert_to<long>();
                con.classes.assign(toks.begin() + 3, toks.end());
                prob.constraints.push_back(std::move(con));
            } else if (kw == "FIXEDVALUE") {
                if (toks.size() != 3) fail("FIXEDVALUE expects: class value");
                Constraint con;
                con.kind = Constraint::Kind::FixedValue;
                con.cls = toks[1];
                con.value = parse_value(toks[2]);
                prob.constraints.push_back(std::move(con));
            } else if (kw == "MULTBOUND") {
                if (toks.size() != 3) fail("MULTBOUND expects: candidate max");
                Constraint con;
                con.kind = Constraint::Kind::MultiplicityBound;
                con.candidate = toks[1];
                con.bound = parse_bigint(toks[2]);
                prob.constraints.push_back(std::move(con));
            } else if (kw == "EXCLUDE") {
                Constraint con;
                con.kind = Constraint::Kind::ExcludeSolution;
                for (std::size_t i = 1; i < toks.size(); ++i) con.excluded.push_back(parse_bigint(toks[i]));
                prob.constraints.push_back(std::move(con));
            } else if (kw == "PAIR") {
                if (toks.size() != 3) fail("PAIR expects two candidate names");
                prob.conjugate_pairs.emplace_back(toks[1], toks[2]);
            } else {
                fail("unexpected keyword '" + kw + "' inside DECOMP");
            }
        }
        try {
            prob.validate();
        } catch (const Error& e) {
            fail(e.what());
        }
        file.decomps.push_back(std::move(prob));
    }

    void parse_fusion_problem(CtbFile& file, const std::vector<std::string>& header) {
        if (header.size() != 2) fail("FUSIONPROBLEM expects exactly one id");
        FusionProblem prob;
        prob.id = header[1];
        while (true) {
            auto toks = expect_line();
            const std::string& kw = toks[0];
            if (kw == "END") break;
            if (kw == "FROM") {
                if (toks.size() != 2) fail("FROM expects one table id");
                prob.from = toks[1];
            } else if (kw == "TO") {
                if (toks.size() != 2) fail("TO expects one table id");
                prob.to = toks[1];
            } else if (kw == "SEED") {
                for (std::size_t i = 1; i < toks.size(); ++i) prob.seed.push_back(parse_map_entry(toks[i], line_no_));
            } else {
                fail("unexpected keyword '" + kw + "' inside FUSIONPROBLEM");
            }
        }
        if (prob.from.empty() || prob.to.empty()) fail("FUSIONPROBLEM needs FROM and TO");
        file.fusion_problems.push_back(std::move(prob));
    }

    void parse_sylow(CtbFile& file, const std::vector<std::string>& header) {
        if (header.size() != 2) fail("SYLOW expects exactly one id");
        SylowProblem prob;
        prob.id = header[1];
        while (true) {
            auto toks = expect_line();
            const std::string& kw = toks[0];
            if (kw == "END") break;
            if (kw == "GROUPORDER") {
                prob.group_order = parse_bigint(toks.at(1));
            } else if (kw == "PRIME") {
                prob.p = parse_bigint(toks.at(1)).convert_to<long>();
            } else if (kw == "SYLOWORDER") {
                prob.sylow_order = parse_bigint(toks.at(1));
            } else if (kw == "MUSTDIVIDE") {
                prob.must_divide = parse_bigint(toks.at(1));
            } else if (kw == "DIVISIBLEBY") {
                prob.must_be_divisible_by = parse_bigint(toks.at(1));
            } else if (kw == "LOWERBOUND") {
                prob.strict_lower_bound = parse_bigint(toks.at(1));
            } else if (kw == "PROPER") {
                prob.require_proper = true;
            } else if (kw == "EXPECTPRE") {
                prob.expect_precongruence = parse_bigint(toks.at(1)).convert_to<long>();
            } else {
                fail("unexpected keyword '" + kw + "' inside SYLOW");
            }
        }
        try {
            prob.validate();
        } catch (const Error& e) {
            fail(e.what());
        }
        file.sylow_problems.push_back(std::move(prob));
    }

    void parse_ledger(CtbFile& file, const std::vector<std::string>& header) {
        if (header.size() != 2) fail("LEDGER expects exactly one id");
        ClassLedger ledger;
        ledger.id = header[1];
        while (true) {
            auto toks = expect_line();
            const std::string& kw = toks[0];
            if (kw == "END") break;
            if (kw == "TARGET") {
                ledger.target = parse_bigint(toks.at(1));
            } else if (kw == "ADD") {
                if (toks.size() != 3) fail("ADD expects: label count");
                ledger.entries.push_back({toks[1], parse_bigint(toks[2])});
            } else {
                fail("unexpected keyword '" + kw + "' inside LEDGER");
            }
        }
        file.ledgers.push_back(std::move(ledger));
    }
};

}  // namespace detail

inline CtbFile parse_ctb(std::istream& in) {
    detail::CtbParser parser(in);
    return parser.parse();
}

inline CtbFile parse_ctb(const std::string& text) {
    std::istringstream is(text);
    return parse_ctb(is);
}

inline CtbFile parse_ctb_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return parse_ctb(in);
}

inline std::string serialize_ctb(const CtbFile& file) {
    std::ostringstream os;
    for (const auto& bundle : file.tables) {
        const TableHead& head = bundle.head;
        os << "TABLE " << head.id << "\n";
        os << "GROUPORDER " << head.group_order.str() << "\n";
        os << "NCLASSES " << head.n_classes() << "\n";
        for (int c = 0; c < head.n_classes(); ++c) {
            const ClassRecord& rec = head.classes[c];
            os << "CLASS " << c << " " << rec.name << " " << rec.element_order << " " << rec.centralizer_order.str()
               << "\n";
        }
        for (const auto& [p, pm] : head.power_maps) {
            os << "POWERMAP " << p;
            for (const auto& e : pm) os << " " << detail::format_map_entry(e);
            os << "\n";
        }
        for (const auto& ch : bundle.characters) {
            os << "CHARACTER " << ch.name;
            for (const auto& v : ch.fn.values) os << " " << v.str();
            os << "\n";
        }
        for (const auto& pc : bundle.partial_characters) {
            os << "CHARACTER " << pc.name;
            for (const auto& v : pc.values) os << " " << (v ? v->str() : std::string("?"));
            os << "\n";
        }
        for (const auto& sub : bundle.suborbits)
            os << "SUBORBIT " << sub.stabilizer_id << " " << sub.orbit_length.str() << "\n";
        if (!bundle.index_in.empty()) os << "INDEXIN " << bundle.index_in << "\n";
        os << "END\n";
    }
    for (const auto& fus : file.fusions) {
        os << "FUSION " << fus.from_head << " -> " << fus.to_head;
        for (const auto& e : fus.entries) os << " " << detail::format_map_entry(e);
        os << "\n";
    }
    for (const auto& pc : file.partials) {
        os << "PARTIAL " << pc.name << " ON " << pc.head_id;
        for (const auto& v : pc.values) os << " " << (v ? v->str() : std::string("?"));
        os << "\n";
    }
    for (const auto& prob : file.decomps) {
        os << "DECOMP " << prob.id << "\n";
        os << "TARGET " << prob.target_degree.str() << "\n";
        os << "CLASSES";
        for (const auto& c : prob.classes) os << " " << c;
        os << "\n";
        for (const auto& cand : prob.candidates) {
            os << "CANDIDATE " << cand.name << " " << cand.degree.str();
            for (const auto& label : prob.classes) {
                auto it = cand.values.find(label);
                os << " " << (it == cand.values.end() ? std::string("?") : it->second.str());
            }
            os << "\n";
        }
        for (const auto& con : prob.constraints) {
            switch (con.kind) {
                case Constraint::Kind::MaxDistinctValues:
                    os << "MAXDISTINCT " << con.max_distinct << " ON";
                    for (const auto& c : con.classes) os << " " << c;
                    os << "\n";
                    break;
                case Constraint::Kind::FixedValue:
                    os << "FIXEDVALUE " << con.cls << " " << con.value.str() << "\n";
                    break;
                case Constraint::Kind::MultiplicityBound:
                    os << "MULTBOUND " << con.candidate << " " << con.bound.str() << "\n";
                    break;
                case Constraint::Kind::ExcludeSolution:
                    os << "EXCLUDE";
                    for (const auto& m : con.excluded) os << " " << m.str();
                    os << "\n";
                    break;
            }
        }
        for (const auto& [a, b] : prob.conjugate_pairs) os << "PAIR " << a << " " << b << "\n";
        os << "END\n";
    }
    for (const auto& prob : file.fusion_problems) {
        os << "FUSIONPROBLEM " << prob.id << "\n";
        os << "FROM " << prob.from << "\n";
        os << "TO " << prob.to << "\n";
        if (!prob.seed.empty()) {
            os << "SEED";
            for (const auto& e : prob.seed) os << " " << detail::format_map_entry(e);
            os << "\n";
        }
        os << "END\n";
    }
    for (const auto& prob : file.sylow_problems) {
        os << "SYLOW " << prob.id << "\n";
        os << "GROUPORDER " << prob.group_order.str() << "\n";
        os << "PRIME " << prob.p << "\n";
        os << "SYLOWORDER " << prob.sylow_order.str() << "\n";
        if (prob.must_divide != 0) os << "MUSTDIVIDE " << prob.must_divide.str() << "\n";
        if (prob.must_be_divisible_by != 1) os << "DIVISIBLEBY " << prob.must_be_divisible_by.str() << "\n";
        if (prob.strict_lower_bound != 0) os << "LOWERBOUND " << prob.strict_lower_bound.str() << "\n";
        if (prob.require_proper) os << "PROPER\n";
        if (prob.expect_precongruence >= 0) os << "EXPECTPRE " << prob.expect_precongruence << "\n";
        os << "END\n";
    }
    for (const auto& ledger : file.ledgers) {
        os << "LEDGER " << ledger.id << "\n";
        os << "TARGET " << ledger.target.str() << "\n";
        for (const auto& e : ledger.entries) os << "ADD " << e.label << " " << e.count.str() << "\n";
        os << "END\n";
    }
    return os.str();
}

}  // namespace ctk
