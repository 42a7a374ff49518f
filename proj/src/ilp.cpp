#include "safeseq/ilp.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "safeseq/error.hpp"
#include "safeseq/graph_io.hpp"

namespace safeseq {

namespace {

std::string num(double v) { return format_weight(v); }

std::string x_name(ArcId a, std::size_t i) {
    return "x_" + std::to_string(a) + "_" + std::to_string(i);
}
std::string w_name(std::size_t i) { return "w_" + std::to_string(i); }
std::string rho_name(std::size_t i) { return "rho_" + std::to_string(i); }
std::string p_name(ArcId a, std::size_t i) {
    return "p_" + std::to_string(a) + "_" + std::to_string(i);
}
std::string q_name(ArcId a, std::size_t i) {
    return "q_" + std::to_string(a) + "_" + std::to_string(i);
}
std::string r_name(ArcId a) { return "r_" + std::to_string(a); }

} // namespace

std::size_t IlpModel::x_index(ArcId a, std::size_t i) const {
    require(a < arc_count && i >= 1 && i <= path_count, "x index out of range");
    return std::size_t{a} * path_count + (i - 1);
}

std::size_t IlpModel::w_index(std::size_t i) const {
    require(i >= 1 && i <= path_count, "w index out of range");
    return arc_count * path_count + (i - 1);
}

std::size_t IlpModel::rho_index(std::size_t i) const {
    require(problem == Problem::MinPathError, "slack variables need the min path error model");
    require(i >= 1 && i <= path_count, "rho index out of range");
    return arc_count * path_count + path_count + (i - 1);
}

std::size_t IlpModel::p_index(ArcId a, std::size_t i) const {
    require(a < arc_count && i >= 1 && i <= path_count, "p index out of range");
    std::size_t base = arc_count * path_count + path_count;
    if (problem == Problem::MinPathError) base += path_count;
    return base + std::size_t{a} * path_count + (i - 1);
}

std::size_t IlpModel::q_index(ArcId a, std::size_t i) const {
    require(problem == Problem::MinPathError, "product slack needs the min path error model");
    require(a < arc_count && i >= 1 && i <= path_count, "q index out of range");
    std::size_t base = arc_count * path_count + 2 * path_count + arc_count * path_count;
    return base + std::size_t{a} * path_count + (i - 1);
}

std::size_t IlpModel::r_index(ArcId a) const {
    require(problem == Problem::LeastSquares, "residuals need the least squares model");
    require(a < arc_count, "r index out of range");
    return arc_count * path_count + path_count + arc_count * path_count + a;
}

std::size_t IlpModel::count_kind(VarKind kind) const {
    std::size_t n = 0;
    for (const auto& v : vars)
        if (v.kind == kind) ++n;
    return n;
}

IlpModel build_model(const StDag& g, std::size_t k, Problem problem, std::string name) {
    if (k < 1) fail(ErrorKind::InvalidK, "path count must be at least 1", static_cast<std::int64_t>(k));

    const std::size_t m = g.graph.arc_count();
    IlpModel model;
    model.problem = problem;
    model.name = std::move(name);
    model.path_count = k;
    model.arc_count = m;

    double total = 0.0;
    for (ArcId a = 0; a < m; ++a) total += g.graph.arc(a).weight;
    model.big_m = std::max(1.0, total);
    const double M = model.big_m;

    // Variables, in the index order the helpers assume.
    for (ArcId a = 0; a < m; ++a)
        for (std::size_t i = 1; i <= k; ++i)
            model.vars.push_back({x_name(a, i), VarKind::Binary, 0.0, 1.0, true});
    for (std::size_t i = 1; i <= k; ++i)
        model.vars.push_back({w_name(i), VarKind::PathWeight, 0.0, M, false});
    if (problem == Problem::MinPathError)
        for (std::size_t i = 1; i <= k; ++i)
            model.vars.push_back({rho_name(i), VarKind::Slack, 0.0, M, false});
    for (ArcId a = 0; a < m; ++a)
        for (std::size_t i = 1; i <= k; ++i)
            model.vars.push_back({p_name(a, i), VarKind::ProductWeight, 0.0, kNoUpperBound, false});
    if (problem == Problem::MinPathError) {
        for (ArcId a = 0; a < m; ++a)
            for (std::size_t i = 1; i <= k; ++i)
                model.vars.push_back({q_name(a, i), VarKind::ProductSlack, 0.0, kNoUpperBound, false});
    } else {
        for (ArcId a = 0; a < m; ++a)
            model.vars.push_back({r_name(a), VarKind::Residual, kNoLowerBound, kNoUpperBound, false});
    }

    // Path shape: each decoded path leaves the source once and conserves flow
    // at interior nodes. A single-node graph has no arcs and no such rows.
    if (m > 0) {
        for (std::size_t i = 1; i <= k; ++i) {
            LinearConstraint src;
            src.name = "src_" + std::to_string(i);
            for (ArcId a : g.out_arcs[g.source]) src.terms.emplace_back(model.x_index(a, i), 1.0);
            src.sense = Sense::Equal;
            src.rhs = 1.0;
            model.constraints.push_back(std::move(src));

            for (NodeId v : g.topo_order) {
                if (v == g.source || v == g.sink) continue;
                LinearConstraint c;
                c.name = "flw_" + std::to_string(v) + "_" + std::to_string(i);
                for (ArcId a : g.in_arcs[v]) c.terms.emplace_back(model.x_index(a, i), 1.0);
                for (ArcId a : g.out_arcs[v]) c.terms.emplace_back(model.x_index(a, i), -1.0);
                c.sense = Sense::Equal;
                c.rhs = 0.0;
                model.constraints.push_back(std::move(c));
            }
        }
    }

    // Big-M linearization of p = x * w (and q = x * rho for the slack model).
    for (ArcId a = 0; a < m; ++a) {
        for (std::size_t i = 1; i <= k; ++i) {
            const std::string tag = std::to_string(a) + "_" + std::to_string(i);
            LinearConstraint pxu;
            pxu.name = "pxu_" + tag;
            pxu.terms = {{model.p_index(a, i), 1.0}, {model.x_index(a, i), -M}};
            pxu.sense = Sense::LessEq;
            pxu.rhs = 0.0;
            model.constraints.push_back(std::move(pxu));

            LinearConstraint pwu;
            pwu.name = "pwu_" + tag;
            pwu.terms = {{model.p_index(a, i), 1.0}, {model.w_index(i), -1.0}};
            pwu.sense = Sense::LessEq;
            pwu.rhs = 0.0;
            model.constraints.push_back(std::move(pwu));

            LinearConstraint pwl;
            pwl.name = "pwl_" + tag;
            pwl.terms = {{model.p_index(a, i), 1.0},
                         {model.w_index(i), -1.0},
                         {model.x_index(a, i), -M}};
            pwl.sense = Sense::GreaterEq;
            pwl.rhs = -M;
            model.constraints.push_back(std::move(pwl));

            if (problem == Problem::MinPathError) {
                LinearConstraint qxu;
                qxu.name = "qxu_" + tag;
                qxu.terms = {{model.q_index(a, i), 1.0}, {model.x_index(a, i), -M}};
                qxu.sense = Sense::LessEq;
                qxu.rhs = 0.0;
                model.constraints.push_back(std::move(qxu));

                LinearConstraint qru;
                qru.name = "qru_" + tag;
                qru.terms = {{model.q_index(a, i), 1.0}, {model.rho_index(i), -1.0}};
                qru.sense = Sense::LessEq;
                qru.rhs = 0.0;
                model.constraints.push_back(std::move(qru));

                LinearConstraint qrl;
                qrl.name = "qrl_" + tag;
                qrl.terms = {{model.q_index(a, i), 1.0},
                             {model.rho_index(i), -1.0},
                             {model.x_index(a, i), -M}};
                qrl.sense = Sense::GreaterEq;
                qrl.rhs = -M;
                model.constraints.push_back(std::move(qrl));
            }
        }
    }

    // Per-arc scoring rows.
    for (ArcId a = 0; a < m; ++a) {
        const double wa = g.graph.arc(a).weight;
        if (problem == Problem::MinPathError) {
            // |w(a) - sum_i p| <= sum of the slacks of the paths through a.
            LinearConstraint lo;
            lo.name = "elb_" + std::to_string(a);
            for (std::size_t i = 1; i <= k; ++i) lo.terms.emplace_back(model.p_index(a, i), 1.0);
            for (std::size_t i = 1; i <= k; ++i) lo.terms.emplace_back(model.q_index(a, i), -1.0);
            lo.sense = Sense::LessEq;
            lo.rhs = wa;
            model.constraints.push_back(std::move(lo));

            LinearConstraint hi;
            hi.name = "eub_" + std::to_string(a);
            for (std::size_t i = 1; i <= k; ++i) hi.terms.emplace_back(model.p_index(a, i), 1.0);
            for (std::size_t i = 1; i <= k; ++i) hi.terms.emplace_back(model.q_index(a, i), 1.0);
            hi.sense = Sense::GreaterEq;
            hi.rhs = wa;
            model.constraints.push_back(std::move(hi));
        } else {
            LinearConstraint res;
            res.name = "res_" + std::to_string(a);
            for (std::size_t i = 1; i <= k; ++i) res.terms.emplace_back(model.p_index(a, i), 1.0);
            res.terms.emplace_back(model.r_index(a), 1.0);
            res.sense = Sense::Equal;
            res.rhs = wa;
            model.constraints.push_back(std::move(res));
        }
    }

    if (problem == Problem::MinPathError) {
        for (std::size_t i = 1; i <= k; ++i)
            model.objective_linear.emplace_back(model.rho_index(i), 1.0);
    } else {
        for (ArcId a = 0; a < m; ++a)
            model.objective_quadratic.emplace_back(model.r_index(a), 1.0);
    }
    return model;
}

IlpModel apply_safety_fixing(IlpModel model, const AntichainSelection& selection) {
    if (selection.sequences.size() > model.path_count)
        fail(ErrorKind::TooManySequences, "more pairwise independent sequences than paths",
             static_cast<std::int64_t>(selection.sequences.size()));
    for (std::size_t j = 0; j < selection.sequences.size(); ++j) {
        const auto& seq = selection.sequences[j];
        for (ArcId a : seq.fix_arcs) {
            require(a < model.arc_count, "fixed arc outside the model");
            model.fixed.emplace_back(model.x_index(a, j + 1), 1.0);
        }
    }
    return model;
}

FixingStats fixing_statistics(const IlpModel& model) {
    FixingStats st;
    st.fixed_count = model.fixed.size();
    st.binary_count = model.count_kind(VarKind::Binary);
    st.percentage =
        st.binary_count == 0 ? 0.0 : 100.0 * static_cast<double>(st.fixed_count) / static_cast<double>(st.binary_count);
    return st;
}

std::vector<ArcId> percentile_subset(const StDag& g, double q) {
    std::vector<ArcId> out;
    if (g.data_arc_count == 0) return out;
    if (q <= 0.0) {
        for (ArcId a = 0; a < g.data_arc_count; ++a) out.push_back(a);
        return out;
    }
    std::vector<double> weights;
    for (ArcId a = 0; a < g.data_arc_count; ++a) weights.push_back(g.graph.arc(a).weight);
    std::sort(weights.begin(), weights.end());
    // Nearest-rank percentile: the smallest weight with at least q percent of
    // the sample at or below it.
    auto rank = static_cast<std::size_t>(std::ceil(q / 100.0 * static_cast<double>(weights.size())));
    rank = std::clamp<std::size_t>(rank, 1, weights.size());
    const double threshold = weights[rank - 1];
    for (ArcId a = 0; a < g.data_arc_count; ++a)
        if (g.graph.arc(a).weight >= threshold) out.push_back(a);
    return out;
}

namespace {

std::string pad(std::string s, std::size_t width) {
    if (s.size() + 2 <= width)
        s.append(width - s.size(), ' ');
    else
        s.append(2, ' ');
    return s;
}

void append_term(std::string& line, bool first, double coef, const std::string& var) {
    if (first) {
        line += ' ';
        if (coef < 0.0) line += "- ";
    } else {
        line += coef < 0.0 ? " - " : " + ";
    }
    const double mag = std::fabs(coef);
    if (mag != 1.0) {
        line += num(mag);
        line += ' ';
    }
    line += var;
}

void flush_wrapped(std::string& out, std::string& line) {
    out += line;
    out += '\n';
    line.clear();
}

std::string export_lp(const IlpModel& model) {
    std::map<std::size_t, double> fixed;
    for (const auto& [idx, val] : model.fixed) fixed[idx] = val;

    std::string out;
    out += "\\ " + model.name + "\n";
    out += "Minimize\n";
    std::string line = " obj:";
    bool first = true;
    for (const auto& [idx, coef] : model.objective_linear) {
        append_term(line, first, coef, model.vars[idx].name);
        first = false;
        if (line.size() > 200) {
            flush_wrapped(out, line);
            line = "     ";
        }
    }
    if (!model.objective_quadratic.empty()) {
        line += first ? " [" : " + [";
        bool qfirst = true;
        for (const auto& [idx, coef] : model.objective_quadratic) {
            append_term(line, qfirst, 2.0 * coef, model.vars[idx].name + " ^2");
            qfirst = false;
            if (line.size() > 200) {
                flush_wrapped(out, line);
                line = "     ";
            }
        }
        line += " ] / 2";
        first = false;
    }
    if (first) line += " 0 w_1"; // degenerate constant objective, keep a valid expression
    flush_wrapped(out, line);

    out += "Subject To\n";
    for (const auto& c : model.constraints) {
        line = " " + c.name + ":";
        bool cfirst = true;
        for (const auto& [idx, coef] : c.terms) {
            append_term(line, cfirst, coef, model.vars[idx].name);
            cfirst = false;
            if (line.size() > 200) {
                flush_wrapped(out, line);
                line = "     ";
            }
        }
        switch (c.sense) {
        case Sense::LessEq: line += " <= "; break;
        case Sense::GreaterEq: line += " >= "; break;
        case Sense::Equal: line += " = "; break;
        }
        line += num(c.rhs);
        flush_wrapped(out, line);
    }

    out += "Bounds\n";
    for (std::size_t idx = 0; idx < model.vars.size(); ++idx) {
        const Variable& v = model.vars[idx];
        auto it = fixed.find(idx);
        if (it != fixed.end()) {
            out += " " + v.name + " = " + num(it->second) + "\n";
            continue;
        }
        if (v.integral) continue; // binary section supplies [0, 1]
        if (v.lb == kNoLowerBound && v.ub == kNoUpperBound) {
            out += " " + v.name + " free\n";
        } else if (v.lb == 0.0 && v.ub != kNoUpperBound) {
            out += " " + v.name + " <= " + num(v.ub) + "\n";
        } else if (v.lb != 0.0 || v.ub != kNoUpperBound) {
            out += " " + num(v.lb) + " <= " + v.name;
            if (v.ub != kNoUpperBound) out += " <= " + num(v.ub);
            out += "\n";
        }
    }

    bool any_binary = false;
    for (const auto& v : model.vars) any_binary = any_binary || v.integral;
    if (any_binary) {
        out += "Binaries\n";
        line.clear();
        for (const auto& v : model.vars) {
            if (!v.integral) continue;
            line += ' ';
            line += v.name;
            if (line.size() > 200) flush_wrapped(out, line);
        }
        if (!line.empty()) flush_wrapped(out, line);
    }
    out += "End\n";
    return out;
}

std::string export_mps(const IlpModel& model) {
    std::map<std::size_t, double> fixed;
    for (const auto& [idx, val] : model.fixed) fixed[idx] = val;

    std::string out;
    out += "NAME          " + model.name + "\n";
    out += "ROWS\n";
    out += " N  obj\n";
    for (const auto& c : model.constraints) {
        char sense = c.sense == Sense::LessEq ? 'L' : c.sense == Sense::GreaterEq ? 'G' : 'E';
        out += ' ';
        out += sense;
        out += "  " + c.name + "\n";
    }

    // Column entries grouped per variable, objective first then rows in order.
    std::vector<std::vector<std::pair<std::string, double>>> cols(model.vars.size());
    for (const auto& [idx, coef] : model.objective_linear) cols[idx].emplace_back("obj", coef);
    for (const auto& c : model.constraints)
        for (const auto& [idx, coef] : c.terms) cols[idx].emplace_back(c.name, coef);

    out += "COLUMNS\n";
    bool in_int = false;
    for (std::size_t idx = 0; idx < model.vars.size(); ++idx) {
        const Variable& v = model.vars[idx];
        if (v.integral != in_int) {
            out += "    MARKER                 'MARKER'                 ";
            out += v.integral ? "'INTORG'\n" : "'INTEND'\n";
            in_int = v.integral;
        }
        if (cols[idx].empty()) cols[idx].emplace_back("obj", 0.0); // keep the column present
        for (const auto& [row, coef] : cols[idx])
            out += "    " + pad(v.name, 10) + pad(row, 10) + num(coef) + "\n";
    }
    if (in_int) out += "    MARKER                 'MARKER'                 'INTEND'\n";

    out += "RHS\n";
    for (const auto& c : model.constraints)
        if (c.rhs != 0.0) out += "    " + pad("RHS", 10) + pad(c.name, 10) + num(c.rhs) + "\n";

    out += "BOUNDS\n";
    for (std::size_t idx = 0; idx < model.vars.size(); ++idx) {
        const Variable& v = model.vars[idx];
        auto it = fixed.find(idx);
        if (it != fixed.end()) {
            out += " FX " + pad("BND", 10) + pad(v.name, 10) + num(it->second) + "\n";
        } else if (v.integral) {
            out += " BV " + pad("BND", 10) + v.name + "\n";
        } else if (v.lb == kNoLowerBound && v.ub == kNoUpperBound) {
            out += " FR " + pad("BND", 10) + v.name + "\n";
        } else if (v.lb == 0.0 && v.ub != kNoUpperBound) {
            out += " UP " + pad("BND", 10) + pad(v.name, 10) + num(v.ub) + "\n";
        } else if (v.lb != 0.0 || v.ub != kNoUpperBound) {
            if (v.lb != 0.0) out += " LO " + pad("BND", 10) + pad(v.name, 10) + num(v.lb) + "\n";
            if (v.ub != kNoUpperBound) out += " UP " + pad("BND", 10) + pad(v.name, 10) + num(v.ub) + "\n";
        }
    }

    if (!model.objective_quadratic.empty()) {
        out += "QUADOBJ\n";
        for (const auto& [idx, coef] : model.objective_quadratic) {
            const std::string& name = model.vars[idx].name;
            out += "    " + pad(name, 10) + pad(name, 10) + num(2.0 * coef) + "\n";
        }
    }
    out += "ENDATA\n";
    return out;
}

} // namespace

std::string export_model(const IlpModel& model, ModelFormat format) {
    return format == ModelFormat::LP ? export_lp(model) : export_mps(model);
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

double parse_num(const std::string& s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        fail(ErrorKind::ParseError, "bad number in MPS data: " + s);
    return v;
}

} // namespace

ParsedMps parse_mps(const std::string& text) {
    ParsedMps mps;
    enum class Section { None, Rows, Columns, Rhs, Bounds, Quad, Done };
    Section section = Section::None;
    bool in_int = false;

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '*') continue;
        const bool header = line[0] != ' ' && line[0] != '\t';
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (header) {
            const std::string& kw = toks[0];
            if (kw == "NAME") {
                if (toks.size() > 1) mps.name = toks[1];
            } else if (kw == "ROWS") {
                section = Section::Rows;
            } else if (kw == "COLUMNS") {
                section = Section::Columns;
            } else if (kw == "RHS") {
                section = Section::Rhs;
            } else if (kw == "BOUNDS") {
                section = Section::Bounds;
            } else if (kw == "QUADOBJ") {
                section = Section::Quad;
            } else if (kw == "ENDATA") {
                section = Section::Done;
                break;
            } else {
                fail(ErrorKind::ParseError, "unknown MPS section: " + kw);
            }
            continue;
        }
        switch (section) {
        case Section::Rows: {
            if (toks.size() != 2 || toks[0].size() != 1)
                fail(ErrorKind::ParseError, "bad MPS row line: " + line);
            const char sense = toks[0][0];
            mps.row_sense[toks[1]] = sense;
            if (sense == 'N' && mps.objective_row.empty()) mps.objective_row = toks[1];
            break;
        }
        case Section::Columns: {
            if (toks.size() >= 3 && toks[1] == "'MARKER'") {
                if (toks[2] == "'INTORG'")
                    in_int = true;
                else if (toks[2] == "'INTEND'")
                    in_int = false;
                else
                    fail(ErrorKind::ParseError, "bad MPS marker: " + line);
                break;
            }
            if (toks.size() != 3 && toks.size() != 5)
                fail(ErrorKind::ParseError, "bad MPS column line: " + line);
            const std::string& var = toks[0];
            if (in_int) mps.integral[var] = true;
            for (std::size_t f = 1; f + 1 < toks.size(); f += 2)
                mps.columns[var][toks[f]] += parse_num(toks[f + 1]);
            break;
        }
        case Section::Rhs: {
            if (toks.size() != 3 && toks.size() != 5)
                fail(ErrorKind::ParseError, "bad MPS rhs line: " + line);
            for (std::size_t f = 1; f + 1 < toks.size(); f += 2)
                mps.rhs[toks[f]] += parse_num(toks[f + 1]);
            break;
        }
        case Section::Bounds: {
            if (toks.size() < 3) fail(ErrorKind::ParseError, "bad MPS bound line: " + line);
            const std::string& type = toks[0];
            const std::string& var = toks[2];
            auto& b = mps.bounds.try_emplace(var, 0.0, kNoUpperBound).first->second;
            if (type == "UP") {
                b.second = parse_num(toks.at(3));
            } else if (type == "LO") {
                b.first = parse_num(toks.at(3));
            } else if (type == "FX") {
                b.first = b.second = parse_num(toks.at(3));
            } else if (type == "FR") {
                b = {kNoLowerBound, kNoUpperBound};
            } else if (type == "MI") {
                b.first = kNoLowerBound;
            } else if (type == "PL") {
                b.second = kNoUpperBound;
            } else if (type == "BV") {
                b = {0.0, 1.0};
                mps.integral[var] = true;
            } else {
                fail(ErrorKind::ParseError, "unsupported MPS bound type: " + type);
            }
            break;
        }
        case Section::Quad: {
            if (toks.size() != 3) fail(ErrorKind::ParseError, "bad MPS quadobj line: " + line);
            if (toks[0] != toks[1])
                fail(ErrorKind::ParseError, "off diagonal quadratic term: " + line);
            mps.quad_diag[toks[0]] += parse_num(toks[2]);
            break;
        }
        case Section::None:
        case Section::Done:
            fail(ErrorKind::ParseError, "MPS data outside any section: " + line);
        }
    }
    if (section != Section::Done) fail(ErrorKind::ParseError, "MPS file missing ENDATA");
    return mps;
}

bool structurally_equal(const IlpModel& model, const ParsedMps& mps) {
    if (mps.name != model.name || mps.objective_row != "obj") return false;

    std::map<std::string, char> senses;
    senses["obj"] = 'N';
    for (const auto& c : model.constraints)
        senses[c.name] = c.sense == Sense::LessEq ? 'L' : c.sense == Sense::GreaterEq ? 'G' : 'E';
    if (senses != mps.row_sense) return false;

    std::map<std::string, std::map<std::string, double>> cols;
    for (const auto& [idx, coef] : model.objective_linear) cols[model.vars[idx].name]["obj"] += coef;
    for (const auto& c : model.constraints)
        for (const auto& [idx, coef] : c.terms) cols[model.vars[idx].name][c.name] += coef;
    for (const auto& v : model.vars)
        cols.try_emplace(v.name).first->second.try_emplace("obj", 0.0);
    // Exported columns only carry the zero objective entry when otherwise
    // empty, so mirror that: drop zero obj entries from columns that have
    // real rows.
    for (auto& [var, rows] : cols) {
        if (rows.size() > 1) {
            auto it = rows.find("obj");
            if (it != rows.end() && it->second == 0.0) rows.erase(it);
        }
    }
    if (cols != mps.columns) return false;

    std::map<std::string, double> rhs;
    for (const auto& c : model.constraints)
        if (c.rhs != 0.0) rhs[c.name] += c.rhs;
    if (rhs != mps.rhs) return false;

    std::map<std::size_t, double> fixed;
    for (const auto& [idx, val] : model.fixed) fixed[idx] = val;
    std::map<std::string, std::pair<double, double>> bounds;
    std::map<std::string, bool> integral;
    for (std::size_t idx = 0; idx < model.vars.size(); ++idx) {
        const Variable& v = model.vars[idx];
        if (v.integral) integral[v.name] = true;
        auto it = fixed.find(idx);
        if (it != fixed.end())
            bounds[v.name] = {it->second, it->second};
        else if (v.integral)
            bounds[v.name] = {0.0, 1.0};
        else if (v.lb != 0.0 || v.ub != kNoUpperBound)
            bounds[v.name] = {v.lb, v.ub};
    }
    if (bounds != mps.bounds || integral != mps.integral) return false;

    std::map<std::string, double> quad;
    for (const auto& [idx, coef] : model.objective_quadratic)
        quad[model.vars[idx].name] += 2.0 * coef;
    return quad == mps.quad_diag;
}

} // namespace safeseq
