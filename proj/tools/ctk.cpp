// ctk: batch verification tool for character table data in CTB files.
//
// Subcommands:
//   validate  head invariants + orthogonality when the table is square
//   decompose constrained integer decompositions (DECOMP stanzas)
//   fuse      possible class fusions between two tables
//   powermaps power-map refinement with an ambiguity report
//   permchar  permutation characters from suborbit data + centralizers
//   complete  value-completion pipeline with per-rule attribution
//   sylow     Sylow-normalizer feasibility (SYLOW stanzas)
//   verify    orthogonality + norm-one + ledger checks
//   lattice   membership in the lattice spanned by cyclic inductions
//
// Exit codes: 0 all checks pass, 1 verification failure, 2 input error.

#include "ctk/charfun.hpp"
#include "ctk/completion.hpp"
#include "ctk/ctb.hpp"
#include "ctk/cyclotomic.hpp"
#include "ctk/report.hpp"
#include "ctk/solvers.hpp"
#include "ctk/tables.hpp"
#include "ctk/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace ctk;

struct Session {
    std::vector<std::string> fixture_dirs;
    std::string report_path;
    int jobs = 1;
    bool strict = false;

    CtbFile pool;  // merged fixture tables and fusions
    Report report;

    void load_fixture_dirs() {
        std::vector<std::string> paths;
        for (const auto& dir : fixture_dirs) {
            if (!std::filesystem::is_directory(dir)) throw Error("fixture directory '" + dir + "' does not exist");
            for (const auto& entry : std::filesystem::directory_iterator(dir))
                if (entry.path().extension() == ".ctb") paths.push_back(entry.path().string());
        }
        std::sort(paths.begin(), paths.end());
        for (const auto& p : paths) merge(parse_ctb_file(p));
    }

    void merge(CtbFile file) {
        for (auto& t : file.tables)
            if (!pool.find_table(t.head.id)) pool.tables.push_back(std::move(t));
        for (auto& f : file.fusions)
            if (!pool.find_fusion(f.from_head, f.to_head)) pool.fusions.push_back(std::move(f));
        for (auto& p : file.partials) pool.partials.push_back(std::move(p));
        for (auto& d : file.decomps) pool.decomps.push_back(std::move(d));
        for (auto& fp : file.fusion_problems) pool.fusion_problems.push_back(std::move(fp));
        for (auto& s : file.sylow_problems) pool.sylow_problems.push_back(std::move(s));
        for (auto& l : file.ledgers) pool.ledgers.push_back(std::move(l));
    }

    // argument is either a path to a .ctb file (merged into the pool) or a
    // table id already present in the pool; returns the table id
    std::string resolve_table(const std::string& arg) {
        if (std::filesystem::exists(arg)) {
            CtbFile f = parse_ctb_file(arg);
            if (f.tables.empty()) throw Error("'" + arg + "' contains no TABLE");
            std::string id = f.tables[0].head.id;
            merge(std::move(f));
            return id;
        }
        if (!pool.find_table(arg)) throw Error("no table '" + arg + "' in the fixture pool");
        return arg;
    }

    const TableBundle& table(const std::string& id) const {
        const TableBundle* t = pool.find_table(id);
        if (!t) throw Error("no table '" + id + "' in the fixture pool");
        return *t;
    }

    int finish() {
        std::ostringstream os;
        report.print(os);
        if (report_path.empty()) {
            std::cout << os.str();
        } else {
            std::ofstream out(report_path);
            if (!out) throw Error("cannot write report to '" + report_path + "'");
            out << os.str();
        }
        return report.all_pass(strict) ? 0 : 1;
    }
};

std::string join_mults(const MultiplicityVector& m) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += ",";
        s += m[i].str();
    }
    return s;
}

void validate_bundle(Session& session, const TableBundle& bundle, int jobs) {
    const TableHead& head = bundle.head;
    head.validate();
    session.report.pass("head-invariants", head.id,
                        bundle.head.is_stub() ? "order-only stub" : std::to_string(head.n_classes()) + " classes");
    if (head.is_stub()) return;
    BigInt sum = 0;
    for (int c = 0; c < head.n_classes(); ++c) sum += head.class_size(c);
    if (sum == head.group_order)
        session.report.pass("class-equation", head.id, "class sizes sum to the group order");
    else
        session.report.fail("class-equation", head.id, "sum " + sum.str() + " != " + head.group_order.str());
    for (const auto& ch : bundle.characters) ch.validate(head);
    if (!bundle.characters.empty()) {
        if (static_cast<int>(bundle.characters.size()) == head.n_classes())
            session.report.append(check_orthogonality(head, bundle.characters, jobs));
        else
            session.report.info("orthogonality", head.id,
                                "skipped: " + std::to_string(bundle.characters.size()) + " characters for " +
                                    std::to_string(head.n_classes()) + " classes (not square)");
    }
}

int cmd_validate(Session& session, const std::vector<std::string>& files) {
    for (const auto& path : files) {
        CtbFile file = parse_ctb_file(path);
        for (const auto& bundle : file.tables) validate_bundle(session, bundle, session.jobs);
        for (const auto& fus : file.fusions) {
            const TableBundle* sub = file.find_table(fus.from_head);
            const TableBundle* big = file.find_table(fus.to_head);
            if (!sub) sub = session.pool.find_table(fus.from_head);
            if (!big) big = session.pool.find_table(fus.to_head);
            if (sub && big && !sub->head.is_stub() && !big->head.is_stub()) {
                fus.validate(sub->head, big->head);
                session.report.pass("fusion", fus.from_head + "->" + fus.to_head, "well formed");
            } else {
                session.report.info("fusion", fus.from_head + "->" + fus.to_head, "endpoint tables not available");
            }
        }
        session.merge(std::move(file));
    }
    return session.finish();
}

int cmd_decompose(Session& session, const std::string& path) {
    CtbFile file = parse_ctb_file(path);
    if (file.decomps.empty()) throw Error("'" + path + "' contains no DECOMP stanza");
    for (const auto& prob : file.decomps) {
        auto solutions = solve_decomposition(prob);
        session.report.info("decompose", prob.id, std::to_string(solutions.size()) + " solutions");
        for (const auto& m : solutions) session.report.info("solution", prob.id, join_mults(m));
        auto grouped = group_solutions_by_value_pattern(prob, solutions);
        session.report.info("solution-classes", prob.id,
                            std::to_string(grouped.size()) + " value-pattern classes");
        for (const auto& cls : grouped) {
            std::string s;
            for (std::size_t i = 0; i < cls.size(); ++i) {
                if (i) s += " ";
                s += join_mults(solutions[cls[i]]);
            }
            session.report.info("solution-class", prob.id, s);
        }
    }
    return session.finish();
}

int cmd_fuse(Session& session, const std::vector<std::string>& args) {
    session.load_fixture_dirs();
    std::vector<std::pair<std::string, FusionMap>> jobs;  // (job id, seed)
    if (args.size() == 1 && std::filesystem::exists(args[0])) {
        CtbFile file = parse_ctb_file(args[0]);
        if (file.fusion_problems.empty()) throw Error("'" + args[0] + "' contains no FUSIONPROBLEM stanza");
        std::vector<FusionProblem> probs = file.fusion_problems;
        session.merge(std::move(file));
        for (const auto& prob : probs) {
            FusionMap seed;
            seed.from_head = prob.from;
            seed.to_head = prob.to;
            seed.entries = prob.seed;
            jobs.emplace_back(prob.id, std::move(seed));
        }
    } else if (args.size() >= 2) {
        std::string sub_id = session.resolve_table(args[0]);
        std::string big_id = session.resolve_table(args[1]);
        FusionMap seed;
        seed.from_head = sub_id;
        seed.to_head = big_id;
        if (args.size() == 3) {
            CtbFile sf = parse_ctb_file(args[2]);
            const FusionMap* s = sf.find_fusion(sub_id, big_id);
            if (!s) throw Error("seed file has no FUSION " + sub_id + " -> " + big_id);
            seed = *s;
        }
        jobs.emplace_back(sub_id + "->" + big_id, std::move(seed));
    } else {
        throw Error("fuse expects a problem file or: <sub> <big> [seed-file]");
    }
    for (const auto& [id, seed] : jobs) {
        const TableBundle* sub = session.pool.find_table(seed.from_head);
        const TableBundle* big = session.pool.find_table(seed.to_head);
        if (!sub || !big) throw Error("fuse " + id + ": tables not found in pool");
        auto fusions = possible_fusions(sub->head, big->head, seed);
        session.report.info("fuse", id, std::to_string(fusions.size()) + " fusions");
        for (const auto& f : fusions) {
            std::string s;
            for (std::size_t h = 0; h < f.entries.size(); ++h) {
                if (h) s += " ";
                s += detail::format_map_entry(f.entries[h]);
            }
            session.report.info("fusion-map", id, s);
        }
    }
    return session.finish();
}

int cmd_powermaps(Session& session, const std::string& table) {
    session.load_fixture_dirs();
    const TableBundle& bundle = session.table(session.resolve_table(table));
    RefineResult refined = refine_power_maps(bundle.head);
    for (const auto& [p, pm] : refined.head.power_maps) {
        std::string s;
        for (std::size_t c = 0; c < pm.size(); ++c) {
            if (c) s += " ";
            s += detail::format_map_entry(pm[c]);
        }
        session.report.info("powermap", bundle.head.id + ":" + std::to_string(p), s);
    }
    for (const auto& amb : refined.ambiguities) {
        std::string s = "{";
        for (std::size_t i = 0; i < amb.candidates.size(); ++i) {
            if (i) s += ",";
            s += refined.head.classes[amb.candidates[i]].name;
        }
        s += "}";
        session.report.info("ambiguity", bundle.head.id + ":" + std::to_string(amb.p),
                            refined.head.classes[amb.cls].name + " -> " + s);
    }
    session.report.pass("powermaps", bundle.head.id,
                        std::to_string(refined.ambiguities.size()) + " ambiguous entries remain");
    return session.finish();
}

int cmd_permchar(Session& session, const std::string& path) {
    session.load_fixture_dirs();
    CtbFile file = parse_ctb_file(path);
    session.merge(CtbFile(file));  // make tables in the job file resolvable
    bool any = false;
    for (const auto& bundle : file.tables) {
        if (bundle.suborbits.empty()) continue;
        any = true;
        const TableHead& H = bundle.head;
        BigInt degree = 0;
        bool lengths_ok = true;
        for (const auto& line : bundle.suborbits) {
            degree += line.orbit_length;
            const TableBundle* stab = session.pool.find_table(line.stabilizer_id);
            if (!stab) {
                session.report.fail("suborbit", H.id + ":" + line.stabilizer_id, "stabilizer table not found");
                lengths_ok = false;
                continue;
            }
            BigInt expected = exact_div(H.group_order, stab->head.group_order, "suborbit length");
            if (expected == line.orbit_length)
                session.report.pass("suborbit-length", H.id + ":" + line.stabilizer_id,
                                    line.orbit_length.str() + " = |H|/|stabilizer|");
            else {
                session.report.fail("suborbit-length", H.id + ":" + line.stabilizer_id,
                                    "length " + line.orbit_length.str() + " != |H|/|stabilizer| = " + expected.str());
                lengths_ok = false;
            }
        }
        session.report.info("permchar-degree", H.id, degree.str());
        if (!bundle.index_in.empty()) {
            const TableBundle* big = session.pool.find_table(bundle.index_in);
            if (!big) {
                session.report.fail("permchar-index", H.id, "overgroup table " + bundle.index_in + " not found");
            } else {
                BigInt index = exact_div(big->head.group_order, H.group_order, "index");
                if (index == degree)
                    session.report.pass("permchar-index", H.id,
                                        "suborbit lengths sum to [" + bundle.index_in + ":" + H.id + "] = " + index.str());
                else
                    session.report.fail("permchar-index", H.id,
                                        "suborbit lengths sum to " + degree.str() + ", index is " + index.str());
            }
        }
        // full computation when every stabilizer has class data and a fusion
        std::vector<SuborbitDatum> data;
        bool computable = lengths_ok && !H.is_stub();
        for (const auto& line : bundle.suborbits) {
            const TableBundle* stab = session.pool.find_table(line.stabilizer_id);
            const FusionMap* fus = session.pool.find_fusion(line.stabilizer_id, H.id);
            if (!stab || stab->head.is_stub() || !fus || !fus->is_total()) {
                computable = false;
                break;
            }
            data.push_back({&stab->head, *fus, line.orbit_length});
        }
        if (!computable) {
            session.report.info("permchar", H.id, "restricted character not computed (stub stabilizers or missing fusions)");
            continue;
        }
        ClassFunction pc = perm_char_restricted(data, H);
        std::string vals;
        for (std::size_t c = 0; c < pc.values.size(); ++c) {
            if (c) vals += " ";
            vals += pc.values[c].str();
        }
        session.report.info("permchar", H.id, vals);
        // centralizer derivations along a fusion into the overgroup
        if (bundle.index_in.empty()) continue;
        const TableBundle* big = session.pool.find_table(bundle.index_in);
        const FusionMap* fus = big ? session.pool.find_fusion(H.id, big->head.id) : nullptr;
        if (!big || big->head.is_stub() || !fus || !fus->is_total()) continue;
        for (int g = 0; g < big->head.n_classes(); ++g) {
            std::vector<std::pair<int, BigInt>> fused;
            for (int h = 0; h < H.n_classes(); ++h)
                if (fus->image(h) == g) fused.emplace_back(h, H.classes[h].centralizer_order);
            if (fused.empty()) continue;
            const Cyclotomic& v = pc.values[fused[0].first];
            if (!v.is_integer() || v.integer_value() < 1) {
                session.report.fail("centralizer", big->head.id + ":" + big->head.classes[g].name,
                                    "permutation character value " + v.str() + " unusable");
                continue;
            }
            BigInt cg = centralizer_from_perm_char(v.integer_value(), fused);
            if (cg == big->head.classes[g].centralizer_order)
                session.report.pass("centralizer", big->head.id + ":" + big->head.classes[g].name, cg.str());
            else
                session.report.fail("centralizer", big->head.id + ":" + big->head.classes[g].name,
                                    "derived " + cg.str() + ", bundled " +
                                        big->head.classes[g].centralizer_order.str());
        }
    }
    if (!any) throw Error("'" + path + "' contains no SUBORBIT data");
    return session.finish();
}

int cmd_complete(Session& session, const std::string& char_path, const std::string& table_path) {
    session.load_fixture_dirs();
    CtbFile cf = parse_ctb_file(char_path);
    session.merge(CtbFile(cf));
    session.resolve_table(table_path);
    std::vector<PartialCharacter> partials = cf.partials;
    for (const auto& bundle : cf.tables)
        for (const auto& pc : bundle.partial_characters) partials.push_back(pc);
    if (partials.empty()) throw Error("'" + char_path + "' contains no partial character");
    for (const auto& pc : partials) {
        const TableBundle* t = session.pool.find_table(pc.head_id);
        if (!t) throw Error("partial character " + pc.name + ": table " + pc.head_id + " not available");
        const TableHead& head = t->head;
        FillReport fills;
        PartialCharacter done = run_fill_pipeline(pc, head, fills);
        for (const auto& ev : fills.events) {
            if (ev.detail.rfind("candidates", 0) == 0 || ev.warning)
                session.report.warn("fill-" + ev.rule, pc.name + ":" + ev.cls, ev.detail);
            else if (ev.detail.rfind("skipped", 0) == 0 || ev.detail.rfind("no-op", 0) == 0 ||
                     ev.detail.rfind("no usable", 0) == 0)
                session.report.info("fill-" + ev.rule, pc.name + ":" + ev.cls, ev.detail);
            else
                session.report.pass("fill-" + ev.rule, pc.name + ":" + ev.cls, ev.detail);
        }
        if (done.unknown_count() != 0) {
            session.report.fail("complete", pc.name, std::to_string(done.unknown_count()) + " values remain unknown");
            continue;
        }
        ClassFunction fn = done.to_class_function();
        std::string vals;
        for (std::size_t c = 0; c < fn.values.size(); ++c) {
            if (c) vals += " ";
            vals += fn.values[c].str();
        }
        session.report.info("completed", pc.name, vals);
        Cyclotomic norm = scalar_product(head, fn, fn);
        Cyclotomic with_trivial = scalar_product(head, fn, trivial_character(head));
        if (norm == Cyclotomic(1))
            session.report.pass("norm", pc.name, "scalar product with itself is 1");
        else
            session.report.fail("norm", pc.name, "scalar product with itself is " + norm.str());
        if (with_trivial == Cyclotomic(0))
            session.report.pass("trivial-product", pc.name, "scalar product with the trivial character is 0");
        else
            session.report.fail("trivial-product", pc.name,
                                "scalar product with the trivial character is " + with_trivial.str());
    }
    return session.finish();
}

int cmd_sylow(Session& session, const std::string& path) {
    CtbFile file = parse_ctb_file(path);
    if (file.sylow_problems.empty()) throw Error("'" + path + "' contains no SYLOW stanza");
    for (const auto& prob : file.sylow_problems) {
        SylowResult result = sylow_feasible(prob);
        std::string pre;
        for (std::size_t i = 0; i < result.precongruence.size(); ++i) {
            if (i) pre += " ";
            pre += result.precongruence[i].str();
        }
        session.report.info("sylow-precongruence", prob.id, pre.empty() ? "(none)" : pre);
        session.report.info("sylow-precongruence-count", prob.id, std::to_string(result.precongruence.size()));
        if (prob.expect_precongruence >= 0) {
            if (static_cast<long>(result.precongruence.size()) == prob.expect_precongruence)
                session.report.pass("sylow-expectation", prob.id,
                                    "pre-congruence count matches the stated " +
                                        std::to_string(prob.expect_precongruence));
            else
                session.report.warn("sylow-expectation", prob.id,
                                    "DISCREPANCY: stated pre-congruence count " +
                                        std::to_string(prob.expect_precongruence) + ", enumeration finds " +
                                        std::to_string(result.precongruence.size()));
        }
        std::string sur;
        for (std::size_t i = 0; i < result.survivors.size(); ++i) {
            if (i) sur += " ";
            sur += result.survivors[i].str();
        }
        session.report.info("sylow-survivors", prob.id, sur.empty() ? "(none)" : sur);
        if (result.survivors.size() == 1)
            session.report.pass("sylow-unique", prob.id, "normalizer order " + result.survivors[0].str());
        else
            session.report.fail("sylow-unique", prob.id,
                                std::to_string(result.survivors.size()) + " candidates compatible with the congruence");
    }
    return session.finish();
}

int cmd_verify(Session& session, const std::string& path) {
    CtbFile file = parse_ctb_file(path);
    for (const auto& bundle : file.tables) validate_bundle(session, bundle, session.jobs);
    for (const auto& bundle : file.tables) {
        for (const auto& ch : bundle.characters) {
            if (!ch.claimed_irreducible) continue;
            if (check_norm_one(bundle.head, ch))
                session.report.pass("norm-one", bundle.head.id + ":" + ch.name, "irreducible");
            else
                session.report.fail("norm-one", bundle.head.id + ":" + ch.name,
                                    "norm differs from 1 or degree not positive");
        }
    }
    for (const auto& ledger : file.ledgers) {
        const TableBundle* head_bundle = nullptr;
        for (const auto& bundle : file.tables)
            if (!bundle.head.is_stub() && BigInt(bundle.head.n_classes()) == ledger.target) head_bundle = &bundle;
        session.report.append(ledger_check(ledger, head_bundle ? &head_bundle->head : nullptr));
    }
    return session.finish();
}

int cmd_lattice(Session& session, const std::string& table, const std::string& char_name) {
    session.load_fixture_dirs();
    const TableBundle& bundle = session.table(session.resolve_table(table));
    const TableHead& head = bundle.head;
    std::vector<ClassFunction> generators;
    generators.push_back(trivial_character(head));
    for (int c = 0; c < head.n_classes(); ++c)
        for (auto& f : induce_from_cyclic(head, c)) generators.push_back(std::move(f));
    CharacterLattice lat = CharacterLattice::build(head, std::move(generators));
    const Character* target = nullptr;
    for (const auto& ch : bundle.characters)
        if (ch.name == char_name) target = &ch;
    if (!target) throw Error("table " + head.id + " has no character named '" + char_name + "'");
    auto coords = lat.membership(target->fn);
    if (coords) {
        std::string s;
        for (std::size_t i = 0; i < coords->size(); ++i) {
            if (i) s += " ";
            s += (*coords)[i].str();
        }
        session.report.pass("lattice", head.id + ":" + char_name, "coordinates " + s);
    } else {
        session.report.fail("lattice", head.id + ":" + char_name, "NotInLattice");
    }
    return session.finish();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact character-table verification toolkit"};
    app.require_subcommand(1);

    Session session;
    app.add_option("--fixtures", session.fixture_dirs, "fixture directory (repeatable)")->expected(-1);
    app.add_option("--report", session.report_path, "write the report to this file instead of stdout");
    app.add_option("--jobs", session.jobs, "worker threads for pairwise checks");
    app.add_flag("--strict", session.strict, "treat warnings as failures");

    std::vector<std::string> validate_files;
    auto* validate = app.add_subcommand("validate", "check head invariants and orthogonality");
    validate->add_option("files", validate_files, "CTB files")->required()->expected(-1);

    std::string decompose_file;
    auto* decompose = app.add_subcommand("decompose", "solve DECOMP stanzas");
    decompose->add_option("file", decompose_file, "CTB problem file")->required();

    std::vector<std::string> fuse_args;
    auto* fuse = app.add_subcommand("fuse", "enumerate possible class fusions");
    fuse->add_option("args", fuse_args, "problem file, or: <sub> <big> [seed-file]")->required()->expected(-1);

    std::string powermaps_table;
    auto* powermaps = app.add_subcommand("powermaps", "refine power maps and report ambiguities");
    powermaps->add_option("table", powermaps_table, "CTB file or table id")->required();

    std::string permchar_file;
    auto* permchar = app.add_subcommand("permchar", "assemble permutation characters from suborbit data");
    permchar->add_option("file", permchar_file, "CTB file with SUBORBIT lines")->required();

    std::string complete_char, complete_table;
    auto* complete = app.add_subcommand("complete", "run the value-completion pipeline");
    complete->add_option("char", complete_char, "CTB file with a partial character")->required();
    complete->add_option("table", complete_table, "CTB file or id of the table head")->required();

    std::string sylow_file;
    auto* sylow = app.add_subcommand("sylow", "Sylow-normalizer feasibility");
    sylow->add_option("file", sylow_file, "CTB problem file")->required();

    std::string verify_file;
    auto* verify = app.add_subcommand("verify", "full verification report");
    verify->add_option("table", verify_file, "CTB file")->required();

    std::string lattice_table, lattice_char;
    auto* lattice = app.add_subcommand("lattice", "lattice membership for a bundled character");
    lattice->add_option("table", lattice_table, "CTB file or table id")->required();
    lattice->add_option("character", lattice_char, "character name")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) {
            session.load_fixture_dirs();
            return cmd_validate(session, validate_files);
        }
        if (*decompose) return cmd_decompose(session, decompose_file);
        if (*fuse) return cmd_fuse(session, fuse_args);
        if (*powermaps) return cmd_powermaps(session, powermaps_table);
        if (*permchar) return cmd_permchar(session, permchar_file);
        if (*complete) return cmd_complete(session, complete_char, complete_table);
        if (*sylow) return cmd_sylow(session, sylow_file);
        if (*verify) {
            session.load_fixture_dirs();
            return cmd_verify(session, verify_file);
        }
        if (*lattice) return cmd_lattice(session, lattice_table, lattice_char);
    } catch (const ctk::Error& e) {
        std::cerr << "ERROR " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "ERROR " << e.what() << "\n";
        return 2;
    }
    return 2;
}
