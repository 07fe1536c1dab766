// Copyright 2026 The revcox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "revcox/boolfn.hpp"
#include "revcox/coxeter.hpp"
#include "revcox/lifting.hpp"
#include "revcox/permgroup.hpp"
#include "revcox/quantum.hpp"

namespace revcox::cli {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;
inline constexpr int kReportVersion = 1;
inline constexpr const char *kToolkitVersion = "1.0.0";

enum ExitStatus : int { kOk = 0, kInvalid = 1, kBound = 2 };

/// Malformed pipeline document (bad syntax, wrong types, unknown fields).
struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Pipeline documents ---------------------------------------------------------------------------

inline uint64_t parse_hex(const std::string &text, const std::string &where) {
    if (text.empty() || text.size() > 16) {
        throw ParseError(where + ": expected 1-16 hex digits, got \"" + text + "\"");
    }
    uint64_t v = 0;
    for (char c : text) {
        int d;
        if (c >= '0' && c <= '9') {
            d = c - '0';
        } else if (c >= 'a' && c <= 'f') {
            d = c - 'a' + 10;
        } else if (c >= 'A' && c <= 'F') {
            d = c - 'A' + 10;
        } else {
            throw ParseError(where + ": \"" + text + "\" is not a hex string");
        }
        v = (v << 4) | static_cast<uint64_t>(d);
    }
    return v;
}

inline std::string to_hex(uint64_t v) {
    std::ostringstream out;
    out << std::hex << v;
    return out.str();
}

namespace detail {

inline void reject_unknown(const json &obj, std::initializer_list<const char *> allowed, const std::string &where) {
    for (const auto &item : obj.items()) {
        bool ok = false;
        for (const char *name : allowed) {
            ok = ok || item.key() == name;
        }
        if (!ok) {
            throw ParseError(where + ": unknown field \"" + item.key() + "\"");
        }
    }
}

inline const json &require(const json &obj, const char *field, const std::string &where) {
    auto it = obj.find(field);
    if (it == obj.end()) {
        throw ParseError(where + ": missing field \"" + field + "\"");
    }
    return *it;
}

}  // namespace detail

struct PipelineDocument {
    PipelineSpec spec;
    std::optional<std::string> name;
};

/// Strict parse of a pipeline document. Syntax and schema problems raise ParseError; documents
/// that are well-formed but describe an invalid pipeline raise ValidationError.
inline PipelineDocument parse_pipeline(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("pipeline: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("pipeline: top level must be an object");
    }
    detail::reject_unknown(doc, {"format_version", "registers", "functions", "name"}, "pipeline");

    const json &version = detail::require(doc, "format_version", "pipeline");
    if (!version.is_number_integer()) {
        throw ParseError("pipeline.format_version: must be an integer");
    }
    if (version.get<int64_t>() != kFormatVersion) {
        throw ValidationError(
            "pipeline.format_version: unsupported version " + version.dump() + " (expected " +
            std::to_string(kFormatVersion) + ")");
    }

    const json &regs = detail::require(doc, "registers", "pipeline");
    if (!regs.is_array()) {
        throw ParseError("pipeline.registers: must be a list of widths");
    }
    std::vector<unsigned> widths;
    for (size_t r = 0; r < regs.size(); r++) {
        std::string where = "pipeline.registers[" + std::to_string(r) + "]";
        if (!regs[r].is_number_integer()) {
            throw ParseError(where + ": must be an integer");
        }
        int64_t w = regs[r].get<int64_t>();
        if (w < 1 || w > static_cast<int64_t>(kMaxArity)) {
            throw ValidationError(where + ": width " + std::to_string(w) + " outside [1, " + std::to_string(kMaxArity) + "]");
        }
        widths.push_back(static_cast<unsigned>(w));
    }

    const json &funcs = detail::require(doc, "functions", "pipeline");
    if (!funcs.is_array()) {
        throw ParseError("pipeline.functions: must be a list");
    }
    if (funcs.size() + 1 != widths.size()) {
        throw ValidationError(
            "pipeline: " + std::to_string(widths.size()) + " registers need " +
            std::to_string(widths.empty() ? 0 : widths.size() - 1) + " functions, got " + std::to_string(funcs.size()));
    }
    std::vector<BoolFunc> steps;
    for (size_t i = 0; i < funcs.size(); i++) {
        std::string where = "pipeline.functions[" + std::to_string(i) + "]";
        if (!funcs[i].is_object()) {
            throw ParseError(where + ": must be an object");
        }
        detail::reject_unknown(funcs[i], {"table"}, where);
        const json &table = detail::require(funcs[i], "table", where);
        if (!table.is_array()) {
            throw ParseError(where + ".table: must be a list of hex strings");
        }
        std::vector<uint64_t> entries;
        for (size_t x = 0; x < table.size(); x++) {
            std::string at = where + ".table[" + std::to_string(x) + "]";
            if (!table[x].is_string()) {
                throw ParseError(at + ": must be a hex string");
            }
            entries.push_back(parse_hex(table[x].get<std::string>(), at));
        }
        uint64_t rows = uint64_t{1} << widths[i];
        if (entries.size() != rows) {
            throw ValidationError(
                where + ".table: has " + std::to_string(entries.size()) + " entries, expected " + std::to_string(rows));
        }
        try {
            steps.emplace_back(widths[i], widths[i + 1], std::move(entries));
        } catch (const ValidationError &e) {
            throw ValidationError(where + ": " + e.what());
        }
    }

    PipelineDocument out{PipelineSpec(std::move(widths), std::move(steps)), std::nullopt};
    if (auto it = doc.find("name"); it != doc.end()) {
        if (!it->is_string()) {
            throw ParseError("pipeline.name: must be a string");
        }
        out.name = it->get<std::string>();
    }
    return out;
}

inline PipelineDocument parse_pipeline_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open pipeline file \"" + path + "\"");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_pipeline(buf.str());
}

inline json pipeline_to_json(const PipelineSpec &spec, const std::optional<std::string> &name = std::nullopt) {
    json doc;
    doc["format_version"] = kFormatVersion;
    doc["registers"] = spec.widths();
    json funcs = json::array();
    for (const BoolFunc &f : spec.steps()) {
        json table = json::array();
        for (uint64_t v : f.table()) {
            table.push_back(to_hex(v));
        }
        funcs.push_back({{"table", table}});
    }
    doc["functions"] = funcs;
    if (name) {
        doc["name"] = *name;
    }
    return doc;
}

inline std::string emit_pipeline(const PipelineSpec &spec, const std::optional<std::string> &name = std::nullopt) {
    return pipeline_to_json(spec, name).dump(2) + "\n";
}

/// FNV-1a 64-bit digest, rendered as "fnv1a64:<16 hex digits>".
inline std::string digest(const std::string &bytes) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

// Generator words ------------------------------------------------------------------------------

/// Parses `f1`..`fn`, or the aliases f, g, h, r for steps 1-4.
inline size_t parse_symbol(const std::string &sym, size_t step_count) {
    static const std::string aliases = "fghr";
    size_t step = 0;
    if (sym.size() == 1 && aliases.find(sym[0]) != std::string::npos) {
        step = aliases.find(sym[0]) + 1;
    } else if (sym.size() >= 2 && sym[0] == 'f' && sym.find_first_not_of("0123456789", 1) == std::string::npos &&
               sym.size() <= 4) {
        step = std::stoul(sym.substr(1));
    }
    if (step < 1 || step > step_count) {
        throw ValidationError(
            "unknown generator symbol \"" + sym + "\" for a " + std::to_string(step_count) + "-step pipeline");
    }
    return step - 1;
}

inline std::string symbol_name(size_t g) {
    return "f" + std::to_string(g + 1);
}

inline std::string word_text(const Word &w) {
    if (w.empty()) {
        return "e";
    }
    std::string s;
    for (size_t k = 0; k < w.size(); k++) {
        s += (k ? " " : "") + symbol_name(w[k]);
    }
    return s;
}

inline json word_json(const Word &w) {
    json out = json::array();
    for (size_t g : w) {
        out.push_back(symbol_name(g));
    }
    return out;
}

// Reports --------------------------------------------------------------------------------------

inline json matrix_json(const std::vector<std::vector<uint64_t>> &m) {
    json out = json::array();
    for (const auto &row : m) {
        out.push_back(row);
    }
    return out;
}

inline std::string matrix_text(const std::vector<std::vector<uint64_t>> &m) {
    std::string s = "[";
    for (size_t i = 0; i < m.size(); i++) {
        s += i ? ", [" : "[";
        for (size_t j = 0; j < m[i].size(); j++) {
            s += (j ? "," : "") + std::to_string(m[i][j]);
        }
        s += "]";
    }
    return s + "]";
}

inline std::string trace_text(const std::vector<uint64_t> &values) {
    std::string s = "(";
    for (size_t k = 0; k < values.size(); k++) {
        s += (k ? "," : "") + to_hex(values[k]);
    }
    return s + ")";
}

inline json hex_list(const std::vector<uint64_t> &values) {
    json out = json::array();
    for (uint64_t v : values) {
        out.push_back(to_hex(v));
    }
    return out;
}

inline json degeneracy_json(const DegeneracyReport &d) {
    json ids = json::array();
    for (size_t i : d.identity_generators) {
        ids.push_back(symbol_name(i));
    }
    json dups = json::array();
    for (auto [i, j] : d.duplicate_pairs) {
        dups.push_back({symbol_name(i), symbol_name(j)});
    }
    json non_inv = json::array();
    for (size_t i : d.non_involutions) {
        non_inv.push_back(symbol_name(i));
    }
    json adj = json::array();
    for (auto [k, ord] : d.adjacent_orders) {
        adj.push_back({{"pair", {symbol_name(k), symbol_name(k + 1)}}, {"order", ord}});
    }
    return {
        {"nondegenerate", d.nondegenerate()},
        {"identity_generators", ids},
        {"duplicate_generators", dups},
        {"non_involutions", non_inv},
        {"adjacent_orders_not_4", adj},
        {"summary", d.describe()},
    };
}

inline json relations_json(const std::vector<RelationCheck> &checks) {
    json out = json::array();
    for (const auto &c : checks) {
        out.push_back({{"family", c.relation.family}, {"relation", c.relation.to_string()}, {"holds", c.holds}});
    }
    return out;
}

inline json verification_json(const VerificationReport &r) {
    json j;
    j["verdict"] = verdict_name(r.verdict);
    j["relations_hold"] = r.relations_hold;
    j["concrete_order"] = r.concrete_order;
    j["abstract_order"] = r.abstract.order ? json(*r.abstract.order) : json(nullptr);
    j["coset_cap"] = r.abstract.cap;
    j["cosets_defined"] = r.abstract.cosets_defined;
    j["relations"] = relations_json(r.relations);
    j["product_orders"] = matrix_json(r.product_orders);
    j["claimed_matrix"] = matrix_json(r.claimed.m);
    j["empirical_matrix"] = r.empirical ? matrix_json(r.empirical->m) : json(nullptr);
    j["empirical_matches_claim"] = r.empirical_matches_claim();
    j["degeneracy"] = degeneracy_json(r.degeneracy);
    j["conclusion"] = r.conclusion;
    return j;
}

/// Wraps command results in the versioned report envelope.
inline json make_report(const std::vector<std::string> &command, const std::string &input_digest, json results) {
    return {
        {"report_version", kReportVersion},
        {"toolkit_version", kToolkitVersion},
        {"command", command},
        {"input_digest", input_digest},
        {"results", std::move(results)},
    };
}

inline std::string serialize_report(const json &report) {
    return report.dump(2) + "\n";
}

// Commands -------------------------------------------------------------------------------------

struct CommandOutput {
    int status = kOk;
    json results = json::object();
};

inline CommandOutput cmd_lift(const PipelineSpec &p, std::ostream &out) {
    CommandOutput res;
    RegisterLayout lay = layout(p);
    out << "registers: " << p.widths().size() << ", total width W = " << lay.total_width << "\n";
    for (size_t r = 0; r < lay.register_count(); r++) {
        out << "  r" << r << ": bits [" << lay.offsets[r] << ", " << lay.offsets[r] + lay.widths[r] << ")\n";
    }
    json steps = json::array();
    for (size_t i = 1; i <= p.step_count(); i++) {
        Perm g = extend(p, i);
        size_t moved = 0;
        for (size_t s = 0; s < g.size(); s++) {
            moved += g(s) != s;
        }
        uint64_t ord = perm_order(g);
        out << "  " << symbol_name(i - 1) << ": r" << i << " ^= f" << i << "(r" << i - 1 << "), order " << ord
            << ", moves " << moved << " of " << g.size() << " basis states\n";
        steps.push_back({
            {"symbol", symbol_name(i - 1)},
            {"reads_register", i - 1},
            {"writes_register", i},
            {"order", ord},
            {"involution", ord <= 2},
            {"identity", ord == 1},
            {"moved_points", moved},
        });
    }
    res.results = {
        {"offsets", lay.offsets},
        {"widths", lay.widths},
        {"total_width", lay.total_width},
        {"steps", steps},
    };
    return res;
}

inline json histogram_json(const std::map<uint64_t, size_t> &hist) {
    json out = json::object();
    for (const auto &[k, v] : hist) {
        out[std::to_string(k)] = v;
    }
    return out;
}

inline CommandOutput cmd_group(const PipelineSpec &p, size_t element_cap, bool with_cayley, std::ostream &out) {
    CommandOutput res;
    std::vector<Perm> gens = generators(p);
    GroupClosure g = closure(gens, element_cap);
    auto hist = element_order_histogram(g);
    DegeneracyReport deg = check_degeneracy(gens);
    DihedralCheck d8 = is_dihedral_8(g);

    out << "group order: " << g.order() << "\n";
    out << "element orders:";
    for (const auto &[k, v] : hist) {
        out << " " << k << ":" << v;
    }
    out << "\n";
    out << "generators: " << deg.describe() << "\n";
    out << "dihedral of order 8: " << (d8.is_dihedral ? "yes" : "no");
    if (d8.is_dihedral) {
        out << " (A = " << word_text(g.words[d8.a]) << ", B = " << word_text(g.words[d8.b]) << ")";
    }
    out << "\n";

    json words = json::array();
    for (const Word &w : g.words) {
        words.push_back(word_json(w));
    }
    res.results = {
        {"order", g.order()},
        {"histogram", histogram_json(hist)},
        {"degeneracy", degeneracy_json(deg)},
        {"words", words},
    };
    json dj = {{"is_dihedral_8", d8.is_dihedral}};
    if (d8.is_dihedral) {
        dj["witness_a"] = word_json(g.words[d8.a]);
        dj["witness_b"] = word_json(g.words[d8.b]);
        dj["matches_lifted_identification"] = d8.matches_lifted_identification;
    }
    res.results["dihedral"] = dj;
    if (with_cayley) {
        if (!g.has_cayley()) {
            throw ValidationError(
                "group: Cayley export limited to groups of order <= " + std::to_string(kCayleyLimit));
        }
        json table = json::array();
        for (const auto &row : g.cayley) {
            table.push_back(row);
        }
        res.results["cayley"] = table;
    }
    return res;
}

inline CommandOutput cmd_coxeter(const PipelineSpec &p, std::ostream &out) {
    CommandOutput res;
    std::vector<Perm> gens = generators(p);
    CoxeterMatrixResult cm = coxeter_matrix(gens);
    CoxeterMatrix claimed = claimed_matrix(p.step_count());
    auto orders = product_orders(gens);

    if (cm.matrix) {
        out << "empirical Coxeter matrix: " << matrix_text(cm.matrix->m) << "\n";
    } else {
        out << "no Coxeter matrix: " << cm.degeneracy.describe() << "\n";
        out << "pairwise product orders: " << matrix_text(orders) << "\n";
    }
    out << "claimed Coxeter matrix:   " << matrix_text(claimed.m) << "\n";
    bool matches = cm.matrix && *cm.matrix == claimed;
    out << "matches claim: " << (matches ? "yes" : "no") << "\n";

    res.results = {
        {"empirical_matrix", cm.matrix ? matrix_json(cm.matrix->m) : json(nullptr)},
        {"product_orders", matrix_json(orders)},
        {"claimed_matrix", matrix_json(claimed.m)},
        {"matches_claim", matches},
        {"degeneracy", degeneracy_json(cm.degeneracy)},
    };
    if (p.step_count() >= 2) {
        Presentation pres = pipeline_presentation(p.step_count());
        auto checks = relations_hold(gens, pres);
        out << "presentation relations:";
        for (const auto &c : checks) {
            out << " " << c.relation.to_string() << (c.holds ? "=e" : "!=e");
        }
        out << "\n";
        res.results["relations"] = relations_json(checks);
    }
    return res;
}

inline CommandOutput cmd_verify(const PipelineSpec &p, size_t coset_cap, size_t element_cap, std::ostream &out) {
    CommandOutput res;
    VerificationReport r = verify_pipeline(p, coset_cap, element_cap);
    out << "verdict: " << verdict_name(r.verdict) << "\n";
    out << "concrete order: " << r.concrete_order << "\n";
    out << "abstract order: "
        << (r.abstract.order ? std::to_string(*r.abstract.order) : "> " + std::to_string(r.abstract.cap) + " cosets")
        << "\n";
    out << "relations hold: " << (r.relations_hold ? "yes" : "no") << "\n";
    out << r.conclusion << "\n";
    res.results = verification_json(r);
    if (r.verdict == Verdict::BOUND_EXCEEDED) {
        res.status = kBound;
    }
    return res;
}

inline CommandOutput cmd_run(const PipelineSpec &p, const std::string &input_hex, std::ostream &out) {
    CommandOutput res;
    uint64_t x = parse_hex(input_hex, "--input");
    RegisterTrace trace = run_classical(p, x);
    RegisterLayout lay = layout(p);
    std::vector<Perm> gens = generators(p);
    Word fwd = forward_word(p.step_count());
    Word back = reversed_word(fwd);
    uint64_t start = lay.pack(std::vector<uint64_t>(lay.register_count(), 0)) | x;
    uint64_t end = evaluate_word(gens, fwd, lay.total_width)(start);
    uint64_t restored = evaluate_word(gens, back, lay.total_width)(end);
    bool ok = restored == start;

    out << "forward word: " << word_text(fwd) << "\n";
    out << "trace: " << trace_text(trace.invertible) << "\n";
    out << "direct evaluation: " << trace_text(trace.direct) << "\n";
    out << "inverse word " << word_text(back) << " restores " << trace_text(lay.unpack(restored))
        << (ok ? " (ok)" : " (MISMATCH)") << "\n";
    res.results = {
        {"input", to_hex(x)},
        {"forward_word", word_json(fwd)},
        {"trace", hex_list(trace.invertible)},
        {"direct_trace", hex_list(trace.direct)},
        {"inverse_word", word_json(back)},
        {"restored", hex_list(lay.unpack(restored))},
        {"restored_ok", ok},
    };
    if (!ok) {
        throw std::logic_error("run: inverse word did not restore the initial state");
    }
    return res;
}

struct QrunOptions {
    std::vector<std::string> word;
    std::vector<std::string> input;
    std::optional<size_t> superpose;
    size_t measure = 0;
    uint64_t seed = 0;
    uint64_t shots = 1000;
};

inline CommandOutput cmd_qrun(const PipelineSpec &p, const QrunOptions &opt, std::ostream &out) {
    CommandOutput res;
    RegisterLayout lay = layout(p);
    if (opt.word.empty()) {
        throw ValidationError("qrun: --word needs at least one generator symbol");
    }
    Word word;
    for (const auto &s : opt.word) {
        word.push_back(parse_symbol(s, p.step_count()));
    }
    if (opt.input.size() != lay.register_count()) {
        throw ValidationError(
            "qrun: --input needs " + std::to_string(lay.register_count()) + " register values, got " +
            std::to_string(opt.input.size()));
    }
    std::vector<uint64_t> values;
    for (size_t r = 0; r < opt.input.size(); r++) {
        values.push_back(parse_hex(opt.input[r], "--input[" + std::to_string(r) + "]"));
    }
    if (opt.measure >= lay.register_count()) {
        throw ValidationError("qrun: --measure register " + std::to_string(opt.measure) + " out of range");
    }
    QState state = basis_state(lay, values);
    if (opt.superpose) {
        state = uniform_superposition(lay, *opt.superpose, state);
    }
    PermUnitary u(evaluate_word(generators(p), word, lay.total_width));
    QState final_state = apply(u, state);
    MeasurementResult m = measure(final_state, lay, opt.measure, opt.seed, opt.shots);

    out << "word: " << word_text(word) << " (rightmost acts first)\n";
    out << "final state:";
    json amps = json::array();
    for (const auto &[k, a] : final_state.amplitudes()) {
        out << " " << std::setprecision(6) << a.real();
        if (a.imag() != 0) {
            out << (a.imag() < 0 ? "-" : "+") << std::abs(a.imag()) << "i";
        }
        out << "|" << trace_text(lay.unpack(k)) << ">";
        amps.push_back({{"registers", hex_list(lay.unpack(k))}, {"re", a.real()}, {"im", a.imag()}});
    }
    out << "\n";
    out << "measure r" << opt.measure << ", seed " << opt.seed << ", " << opt.shots << " shots:";
    json counts = json::object();
    json probs = json::object();
    for (const auto &[v, c] : m.counts) {
        out << " " << to_hex(v) << ":" << c;
        counts[to_hex(v)] = c;
    }
    for (const auto &[v, pr] : m.probabilities) {
        probs[to_hex(v)] = pr;
    }
    out << "\n";
    res.results = {
        {"word", word_json(word)},
        {"input", hex_list(values)},
        {"superpose", opt.superpose ? json(*opt.superpose) : json(nullptr)},
        {"final_state", amps},
        {"measure_register", opt.measure},
        {"seed", opt.seed},
        {"shots", opt.shots},
        {"counts", counts},
        {"probabilities", probs},
    };
    return res;
}

// Dispatch -------------------------------------------------------------------------------------

/// Runs one command line (without the program name). Returns the process exit status:
/// 0 on success, 1 for usage or validation errors, 2 when a configured cap or bound was hit.
inline int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Lift Boolean pipelines to involutions and study the groups they generate", "revcox"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolkitVersion);

    std::string path;
    std::string json_path;
    size_t coset_cap = kDefaultCosetCap;
    size_t element_cap = kDefaultElementCap;
    bool cayley = false;
    std::string run_input;
    QrunOptions q;
    size_t superpose = 0;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("pipeline", path, "Pipeline document (JSON)")->required();
        sub->add_option("--json", json_path, "Write a JSON report to this path");
    };
    CLI::App *lift = app.add_subcommand("lift", "Register layout and per-step involution summary");
    add_common(lift);
    CLI::App *group = app.add_subcommand("group", "Closure order, element-order histogram, D8 check");
    add_common(group);
    group->add_option("--element-cap", element_cap, "Maximum number of group elements");
    group->add_flag("--cayley", cayley, "Include the Cayley table in the JSON report");
    CLI::App *cox = app.add_subcommand("coxeter", "Empirical Coxeter matrix and claimed presentation");
    add_common(cox);
    CLI::App *verify = app.add_subcommand("verify", "Compare the concrete group with the claimed presentation");
    add_common(verify);
    verify->add_option("--coset-cap", coset_cap, "Coset enumeration bound");
    verify->add_option("--element-cap", element_cap, "Maximum number of group elements");
    CLI::App *run = app.add_subcommand("run", "Classical trace and inverse-run restoration check");
    add_common(run);
    run->add_option("--input", run_input, "Value of register 0 (hex)")->required();
    CLI::App *qrun = app.add_subcommand("qrun", "Apply a generator word to a qubit register and measure");
    add_common(qrun);
    qrun->add_option("--word", q.word, "Generator symbols, applied right to left")->required();
    qrun->add_option("--input", q.input, "Initial value of every register (hex)")->required();
    CLI::Option *sup = qrun->add_option("--superpose", superpose, "Register to put in uniform superposition");
    qrun->add_option("--measure", q.measure, "Register to measure")->required();
    qrun->add_option("--seed", q.seed, "Sampling seed");
    qrun->add_option("--shots", q.shots, "Number of shots");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion &) {
        out << kToolkitVersion << "\n";
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return kInvalid;
    }
    if (*sup) {
        q.superpose = superpose;
    }

    std::string bytes;
    CommandOutput result;
    try {
        {
            std::ifstream in(path, std::ios::binary);
            if (!in) {
                throw ParseError("cannot open pipeline file \"" + path + "\"");
            }
            std::ostringstream buf;
            buf << in.rdbuf();
            bytes = buf.str();
        }
        PipelineSpec p = parse_pipeline(bytes).spec;
        if (*lift) {
            result = cmd_lift(p, out);
        } else if (*group) {
            result = cmd_group(p, element_cap, cayley, out);
        } else if (*cox) {
            result = cmd_coxeter(p, out);
        } else if (*verify) {
            result = cmd_verify(p, coset_cap, element_cap, out);
        } else if (*run) {
            result = cmd_run(p, run_input, out);
        } else {
            result = cmd_qrun(p, q, out);
        }
    } catch (const EnumerationOverflow &e) {
        err << "bound reached: " << e.what() << "\n";
        return kBound;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::out_of_range &e) {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    }

    if (!json_path.empty()) {
        std::ofstream f(json_path, std::ios::binary);
        if (!f) {
            err << "error: cannot write report to \"" << json_path << "\"\n";
            return kInvalid;
        }
        f << serialize_report(make_report(args, digest(bytes), result.results));
    }
    return result.status;
}

}  // namespace revcox::cli
