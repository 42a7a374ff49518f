#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "safeseq/digraph.hpp"
#include "safeseq/error.hpp"
#include "safeseq/graph_io.hpp"
#include "safeseq/ilp.hpp"
#include "safeseq/minflow.hpp"
#include "safeseq/safety.hpp"
#include "safeseq/safety_arcs.hpp"
#include "safeseq/safety_subset.hpp"
#include "safeseq/seq_format.hpp"
#include "safeseq/tiny_solver.hpp"

namespace {

using namespace safeseq;

std::size_t env_path_limit() {
    const char* s = std::getenv("SAFESEQ_PATH_LIMIT");
    if (!s || !*s) return kDefaultPathLimit;
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end == s || *end != '\0' || v == 0) return kDefaultPathLimit;
    return static_cast<std::size_t>(v);
}

// Inputs that already are s-t DAGs are taken as-is; anything else gets a
// synthetic source and sink wired to its degree-0 fringes.
StDag to_st_dag(const DiGraph& g) {
    std::vector<std::size_t> indeg(g.node_count(), 0), outdeg(g.node_count(), 0);
    for (const Arc& a : g.arcs()) {
        ++outdeg[a.tail];
        ++indeg[a.head];
    }
    std::vector<NodeId> sources, sinks;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (indeg[v] == 0) sources.push_back(v);
        if (outdeg[v] == 0) sinks.push_back(v);
    }
    if (sources.size() == 1 && sinks.size() == 1) return validate_st_dag(g, sources[0], sinks[0]);
    return normalize_to_st_dag(g);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_fixed(double v, int digits) {
    std::ostringstream os;
    os.setf(std::ios::fixed, std::ios::floatfield);
    os.precision(digits);
    os << v;
    return os.str();
}

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                        c == '.' || c == '-' || c == '_';
        out += ok ? c : '_';
    }
    if (out.empty()) out = "graph";
    return out;
}

void run_parallel(unsigned jobs, std::size_t count, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const unsigned threads = std::min<unsigned>(jobs, static_cast<unsigned>(count));
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

struct Row {
    bool ok = false;
    std::string error; // per-graph failure, batch continues
    std::string note;  // non-fatal remark (solve-tiny skips)
    std::exception_ptr internal;

    std::string name;
    std::size_t n = 0, m = 0;
    std::uint32_t width = 0;
    double prep = 0.0;
    std::size_t sequences = 0, total_len = 0;
    double fixed_pct = 0.0;
    std::string obj_free, obj_fixed;

    std::string seq_text;
    std::string model_text;
};

std::string report_header(bool with_tiny) {
    std::string h = "graph\tn\tm\twidth\tprep_s\tsequences\ttotal_len\tfixed_pct";
    if (with_tiny) h += "\tobj_free\tobj_fixed";
    h += '\n';
    return h;
}

std::string report_row(const Row& r, bool with_tiny) {
    std::string line = r.name;
    line += '\t' + std::to_string(r.n);
    line += '\t' + std::to_string(r.m);
    line += '\t' + std::to_string(r.width);
    line += '\t' + fmt_fixed(r.prep, 6);
    line += '\t' + std::to_string(r.sequences);
    line += '\t' + std::to_string(r.total_len);
    line += '\t' + fmt_fixed(r.fixed_pct, 2);
    if (with_tiny) {
        line += '\t' + (r.obj_free.empty() ? std::string("-") : r.obj_free);
        line += '\t' + (r.obj_fixed.empty() ? std::string("-") : r.obj_fixed);
    }
    line += '\n';
    return line;
}

void write_text(const std::string& target, const std::string& text, std::ostream& dash_stream) {
    if (target.empty() || target == "-") {
        dash_stream << text;
        dash_stream.flush();
        return;
    }
    std::ofstream out(target, std::ios::binary);
    if (!out) fail(ErrorKind::ParseError, "cannot open output file: " + target);
    out << text;
}

void drain_rows(std::vector<Row>& rows) {
    for (auto& r : rows)
        if (r.internal) std::rethrow_exception(r.internal);
    for (const auto& r : rows) {
        if (!r.ok) std::cerr << "graph " << r.name << ": " << r.error << "\n";
        if (!r.note.empty()) std::cerr << "graph " << r.name << ": " << r.note << "\n";
    }
}

// ---- safety subcommand ----

struct SafetyArgs {
    std::string input;
    std::string mode = "nodes";
    double subset_percentile = -1.0;
    std::string subset_file;
    std::string format = "tsv";
    std::string out = "-";
    std::string report = "-";
    unsigned jobs = 1;
};

std::vector<std::uint32_t> read_id_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ParseError, "cannot open subset file: " + path);
    std::vector<std::uint32_t> ids;
    std::uint32_t id = 0;
    while (in >> id) ids.push_back(id);
    if (!in.eof()) fail(ErrorKind::ParseError, "subset file holds a non-numeric token: " + path);
    return ids;
}

int run_safety(const SafetyArgs& args) {
    auto records = read_graph_file(args.input);
    std::vector<std::uint32_t> file_ids;
    const bool from_file = !args.subset_file.empty();
    if (from_file) file_ids = read_id_file(args.subset_file);
    const bool from_pct = args.subset_percentile >= 0.0;
    const bool subsetting = from_file || from_pct;
    const bool arcs_mode = args.mode == "arcs";
    const bool json = args.format == "json";

    std::vector<Row> rows(records.size());
    run_parallel(args.jobs, records.size(), [&](std::size_t i) {
        Row& row = rows[i];
        row.name = records[i].name;
        try {
            StDag dag = to_st_dag(records[i].graph);
            row.n = dag.node_count();
            row.m = dag.arc_count();

            std::vector<ArcId> c_arcs;
            std::vector<NodeId> c_nodes;
            if (subsetting && arcs_mode) {
                c_arcs = from_file ? std::vector<ArcId>(file_ids.begin(), file_ids.end())
                                   : percentile_subset(dag, args.subset_percentile);
                for (ArcId a : c_arcs)
                    if (a >= dag.arc_count())
                        fail(ErrorKind::ParseError, "subset arc id out of range", a);
            } else if (subsetting) {
                if (from_file) {
                    c_nodes.assign(file_ids.begin(), file_ids.end());
                } else {
                    // percentile rule names arcs; in node mode take their endpoints
                    std::vector<char> mark(dag.node_count(), 0);
                    for (ArcId a : percentile_subset(dag, args.subset_percentile))
                        mark[dag.arc(a).tail] = mark[dag.arc(a).head] = 1;
                    for (NodeId v = 0; v < dag.node_count(); ++v)
                        if (mark[v]) c_nodes.push_back(v);
                }
                for (NodeId v : c_nodes)
                    if (v >= dag.node_count())
                        fail(ErrorKind::ParseError, "subset node id out of range", v);
            }

            std::vector<std::vector<NodeId>> node_seqs;
            std::vector<ArcSequence> arc_seqs;
            const auto t0 = std::chrono::steady_clock::now();
            if (arcs_mode)
                arc_seqs = subsetting ? maximal_safe_arc_sequences_subset(dag, c_arcs)
                                      : maximal_safe_arc_sequences(dag);
            else
                node_seqs = (subsetting ? maximal_safe_sequences_subset(dag, c_nodes)
                                        : maximal_safe_sequences(dag))
                                .sequences;
            row.prep = seconds_since(t0);
            row.width = arc_width(dag);

            if (arcs_mode) {
                row.sequences = arc_seqs.size();
                for (const auto& s : arc_seqs) row.total_len += s.size();
                row.seq_text = json ? arc_sequences_json(row.name, dag.graph, arc_seqs)
                                    : arc_sequences_tsv(row.name, dag.graph, arc_seqs);
            } else {
                row.sequences = node_seqs.size();
                for (const auto& s : node_seqs) row.total_len += s.size();
                row.seq_text = json ? node_sequences_json(row.name, node_seqs)
                                    : node_sequences_tsv(row.name, node_seqs);
            }
            row.ok = true;
        } catch (const Error& e) {
            if (e.kind == ErrorKind::Internal)
                row.internal = std::current_exception();
            else
                row.error = e.what();
        } catch (...) {
            row.internal = std::current_exception();
        }
    });
    drain_rows(rows);

    std::string seq_out;
    if (json) {
        std::vector<std::string> frags;
        for (const auto& r : rows)
            if (r.ok) frags.push_back(r.seq_text);
        seq_out = json_document(frags);
    } else {
        for (const auto& r : rows)
            if (r.ok) seq_out += r.seq_text;
    }
    std::string report = report_header(false);
    for (const auto& r : rows)
        if (r.ok) report += report_row(r, false);

    write_text(args.out, seq_out, std::cout);
    write_text(args.report, report, std::cerr);
    return 0;
}

// ---- ilp subcommand ----

struct IlpArgs {
    std::string input;
    std::string problem = "mpe";
    std::string safety = "full";
    std::string k = "auto";
    std::string export_fmt = "lp";
    bool solve_tiny = false;
    std::string out_dir = ".";
    std::string report = "-";
    unsigned jobs = 1;
};

int run_ilp(const IlpArgs& args) {
    auto records = read_graph_file(args.input);
    const Problem prob = args.problem == "lsq" ? Problem::LeastSquares : Problem::MinPathError;
    const ModelFormat fmt = args.export_fmt == "mps" ? ModelFormat::MPS : ModelFormat::LP;
    const bool fixing = args.safety != "none";
    const bool subset = args.safety.rfind("subset:", 0) == 0;
    const double subset_q = subset ? std::stod(args.safety.substr(7)) : 0.0;
    const bool k_auto = args.k == "auto";
    const std::size_t k_given = k_auto ? 0 : static_cast<std::size_t>(std::stoull(args.k));
    const std::size_t tiny_limit = env_path_limit();

    std::vector<Row> rows(records.size());
    run_parallel(args.jobs, records.size(), [&](std::size_t i) {
        Row& row = rows[i];
        row.name = records[i].name;
        try {
            StDag dag = to_st_dag(records[i].graph);
            row.n = dag.node_count();
            row.m = dag.arc_count();
            row.width = arc_width(dag);
            const std::size_t k = k_auto ? row.width : k_given;

            AntichainSelection sel;
            std::vector<ArcId> c_arcs;
            if (subset) c_arcs = percentile_subset(dag, subset_q);
            const auto t0 = std::chrono::steady_clock::now();
            if (fixing)
                sel = subset ? select_fixing_sequences(dag, SafetyMode::ArcSubset, c_arcs)
                             : select_fixing_sequences(dag, SafetyMode::Arcs);
            row.prep = seconds_since(t0);
            row.sequences = sel.set_size;
            row.total_len = sel.set_total_length;

            IlpModel model = build_model(dag, k, prob, sanitize(row.name));
            if (fixing) model = apply_safety_fixing(std::move(model), sel);
            row.fixed_pct = fixing_statistics(model).percentage;
            row.model_text = export_model(model, fmt);

            if (args.solve_tiny) {
                try {
                    row.obj_free = format_weight(solve_tiny(dag, k, prob, tiny_limit).objective);
                    row.obj_fixed =
                        fixing ? format_weight(solve_tiny_fixed(dag, k, prob, sel, tiny_limit).objective)
                               : std::string("-");
                } catch (const Error& e) {
                    if (e.kind == ErrorKind::PathExplosion) {
                        row.obj_free = row.obj_fixed = "skipped";
                        row.note = std::string("solve-tiny skipped: ") + e.what();
                    } else if (e.kind == ErrorKind::Infeasible) {
                        row.obj_free = row.obj_fixed = "infeasible";
                        row.note = std::string("solve-tiny: ") + e.what();
                    } else {
                        throw;
                    }
                }
            }
            row.ok = true;
        } catch (const Error& e) {
            if (e.kind == ErrorKind::Internal)
                row.internal = std::current_exception();
            else
                row.error = e.what();
        } catch (...) {
            row.internal = std::current_exception();
        }
    });
    drain_rows(rows);

    std::filesystem::create_directories(args.out_dir);
    std::map<std::string, int> used;
    for (const auto& r : rows) {
        if (!r.ok) continue;
        std::string base = sanitize(r.name);
        int copy = ++used[base];
        while (copy > 1 && ++used[base + "_" + std::to_string(copy)] > 1) ++copy;
        if (copy > 1) base += "_" + std::to_string(copy);
        const std::string path =
            (std::filesystem::path(args.out_dir) / (base + (fmt == ModelFormat::MPS ? ".mps" : ".lp"))).string();
        std::ofstream out(path, std::ios::binary);
        if (!out) fail(ErrorKind::ParseError, "cannot open output file: " + path);
        out << r.model_text;
    }

    std::string report = report_header(args.solve_tiny);
    for (const auto& r : rows)
        if (r.ok) report += report_row(r, args.solve_tiny);
    write_text(args.report, report, std::cout);
    return 0;
}

// ---- stats subcommand ----

struct StatsArgs {
    std::vector<std::string> reports;
    std::string buckets = "1-3,4-6,7-9,10+";
    bool markdown = false;
};

struct Bucket {
    std::uint64_t lo = 0, hi = 0;
    std::string label;
    std::size_t count = 0;
    double sum_m = 0.0, max_m = 0.0, sum_prep = 0.0, sum_pct = 0.0;
};

std::vector<Bucket> parse_buckets(const std::string& text) {
    std::vector<Bucket> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        Bucket b;
        b.label = item;
        try {
            if (item.back() == '+') {
                b.lo = std::stoull(item.substr(0, item.size() - 1));
                b.hi = std::numeric_limits<std::uint64_t>::max();
            } else {
                const auto dash = item.find('-');
                if (dash == std::string::npos) {
                    b.lo = b.hi = std::stoull(item);
                } else {
                    b.lo = std::stoull(item.substr(0, dash));
                    b.hi = std::stoull(item.substr(dash + 1));
                }
            }
        } catch (const std::exception&) {
            fail(ErrorKind::ParseError, "bad width bucket: " + item);
        }
        out.push_back(std::move(b));
    }
    if (out.empty()) fail(ErrorKind::ParseError, "no width buckets given");
    return out;
}

int run_stats(const StatsArgs& args) {
    auto buckets = parse_buckets(args.buckets);

    for (const auto& file : args.reports) {
        std::ifstream in(file);
        if (!in) fail(ErrorKind::ParseError, "cannot open report file: " + file);
        std::string line;
        std::vector<std::string> header;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            std::vector<std::string> fields;
            std::istringstream ls(line);
            std::string f;
            while (std::getline(ls, f, '\t')) fields.push_back(f);
            if (fields.empty()) continue;
            if (fields[0] == "graph") {
                header = fields;
                continue;
            }
            if (header.empty())
                fail(ErrorKind::ParseError, "report file lacks a header line: " + file,
                     static_cast<std::int64_t>(line_no));
            auto col = [&](const std::string& name) -> std::size_t {
                for (std::size_t c = 0; c < header.size(); ++c)
                    if (header[c] == name) return c;
                fail(ErrorKind::ParseError, "report file misses column " + name + ": " + file);
            };
            try {
                const double m = std::stod(fields.at(col("m")));
                const std::uint64_t width = std::stoull(fields.at(col("width")));
                const double prep = std::stod(fields.at(col("prep_s")));
                const double pct = std::stod(fields.at(col("fixed_pct")));
                for (auto& b : buckets) {
                    if (width < b.lo || width > b.hi) continue;
                    ++b.count;
                    b.sum_m += m;
                    b.max_m = std::max(b.max_m, m);
                    b.sum_prep += prep;
                    b.sum_pct += pct;
                    break;
                }
            } catch (const Error&) {
                throw;
            } catch (const std::exception&) {
                fail(ErrorKind::ParseError, "bad report row: " + file,
                     static_cast<std::int64_t>(line_no));
            }
        }
    }

    std::string out;
    if (args.markdown) {
        out += "| width | graphs | avg m | max m | avg prep s | avg fixed % |\n";
        out += "|---|---|---|---|---|---|\n";
        for (const auto& b : buckets) {
            if (b.count == 0) continue;
            const double c = static_cast<double>(b.count);
            out += "| " + b.label + " | " + std::to_string(b.count) + " | " + fmt_fixed(b.sum_m / c, 1) +
                   " | " + fmt_fixed(b.max_m, 0) + " | " + fmt_fixed(b.sum_prep / c, 6) + " | " +
                   fmt_fixed(b.sum_pct / c, 2) + " |\n";
        }
    } else {
        out += "width\tgraphs\tavg_m\tmax_m\tavg_prep_s\tavg_fixed_pct\n";
        for (const auto& b : buckets) {
            if (b.count == 0) continue;
            const double c = static_cast<double>(b.count);
            out += b.label + '\t' + std::to_string(b.count) + '\t' + fmt_fixed(b.sum_m / c, 1) + '\t' +
                   fmt_fixed(b.max_m, 0) + '\t' + fmt_fixed(b.sum_prep / c, 6) + '\t' +
                   fmt_fixed(b.sum_pct / c, 2) + '\n';
        }
    }
    std::cout << out;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"maximal safe sequences and reduced path-cover models for weighted s-t DAGs"};
    app.require_subcommand(1);

    SafetyArgs sargs;
    CLI::App* safety_cmd = app.add_subcommand("safety", "enumerate maximal safe node or arc sequences");
    safety_cmd->add_option("input", sargs.input, ".graph input file")->required();
    safety_cmd->add_option("--mode", sargs.mode, "sequence kind (default nodes)")
        ->check(CLI::IsMember({"nodes", "arcs"}));
    auto* pct_opt = safety_cmd
                        ->add_option("--subset-percentile", sargs.subset_percentile,
                                     "restrict coverage to arcs at or above this weight percentile")
                        ->check(CLI::Range(0.0, 100.0));
    safety_cmd
        ->add_option("--subset-file", sargs.subset_file,
                     "restrict coverage to the ids listed in this file (nodes or arcs per --mode)")
        ->excludes(pct_opt);
    safety_cmd->add_option("--format", sargs.format, "sequence output format (default tsv)")
        ->check(CLI::IsMember({"tsv", "json"}));
    safety_cmd->add_option("--out", sargs.out, "sequence output file, - for stdout (default)");
    safety_cmd->add_option("--report", sargs.report, "timing report file, - for stderr (default)");
    safety_cmd->add_option("--jobs", sargs.jobs, "worker threads across graphs")->check(CLI::Range(1u, 512u));

    IlpArgs iargs;
    CLI::App* ilp_cmd = app.add_subcommand("ilp", "export reduced path-cover models");
    ilp_cmd->add_option("input", iargs.input, ".graph input file")->required();
    ilp_cmd->add_option("--problem", iargs.problem, "objective (default mpe)")
        ->check(CLI::IsMember({"mpe", "lsq"}));
    ilp_cmd->add_option("--safety", iargs.safety, "variable fixing: none, full or subset:<percentile>")
        ->check(CLI::Validator(
            [](std::string& s) -> std::string {
                if (s == "none" || s == "full") return {};
                if (s.rfind("subset:", 0) == 0) {
                    const std::string q = s.substr(7);
                    try {
                        std::size_t used = 0;
                        const double v = std::stod(q, &used);
                        if (used == q.size() && v >= 0.0 && v <= 100.0) return {};
                    } catch (const std::exception&) {
                    }
                    return "subset percentile must be a number in [0, 100]";
                }
                return "expected none, full or subset:<percentile>";
            },
            "SAFETY"));
    ilp_cmd->add_option("--k", iargs.k, "path count: auto (arc width) or a positive integer")
        ->check(CLI::Validator(
            [](std::string& s) -> std::string {
                if (s == "auto") return {};
                if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos && s != "0" &&
                    s.size() <= 9)
                    return {};
                return "expected auto or a positive integer";
            },
            "K"));
    ilp_cmd->add_option("--export", iargs.export_fmt, "model format (default lp)")
        ->check(CLI::IsMember({"lp", "mps"}));
    ilp_cmd->add_flag("--solve-tiny", iargs.solve_tiny,
                      "also solve instances exactly by path enumeration and report objectives");
    ilp_cmd->add_option("--out", iargs.out_dir, "directory for model files (default .)");
    ilp_cmd->add_option("--report", iargs.report, "report file, - for stdout (default)");
    ilp_cmd->add_option("--jobs", iargs.jobs, "worker threads across graphs")->check(CLI::Range(1u, 512u));

    StatsArgs stargs;
    CLI::App* stats_cmd = app.add_subcommand("stats", "aggregate report files into a width-bucketed table");
    stats_cmd->add_option("reports", stargs.reports, "report files produced by safety or ilp");
    stats_cmd->add_option("--buckets", stargs.buckets, "width buckets (default 1-3,4-6,7-9,10+)");
    stats_cmd->add_flag("--markdown", stargs.markdown, "emit a markdown table instead of TSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (safety_cmd->parsed()) return run_safety(sargs);
        if (ilp_cmd->parsed()) return run_ilp(iargs);
        return run_stats(stargs);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind == ErrorKind::Internal ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
