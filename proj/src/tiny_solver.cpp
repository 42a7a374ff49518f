#include "safeseq/tiny_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "safeseq/error.hpp"

namespace safeseq {

namespace {

constexpr double kEps = 1e-9;

// Dense two-phase simplex for min c.x, rows a.x (sense) b, x >= 0.
// sense: -1 for <=, 0 for =, +1 for >=. Bland's rule, so it terminates.
struct DenseLp {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    std::vector<int> sense;
    std::vector<double> c;
};

struct LpResult {
    bool feasible = false;
    double value = 0.0;
    std::vector<double> x;
};

class Simplex {
public:
    explicit Simplex(const DenseLp& lp) : n_(lp.c.size()), rows_(lp.b.size()) {
        std::size_t slacks = 0, artificials = 0;
        for (std::size_t i = 0; i < rows_; ++i) {
            int s = lp.sense[i];
            if (lp.b[i] < 0.0) s = -s;
            if (s != 0) ++slacks;
            if (s >= 0) ++artificials;
        }
        cols_ = n_ + slacks + artificials;
        tab_.assign(rows_, std::vector<double>(cols_ + 1, 0.0));
        basis_.assign(rows_, 0);
        artificial_.assign(cols_, false);

        std::size_t next = n_;
        for (std::size_t i = 0; i < rows_; ++i) {
            double sign = lp.b[i] < 0.0 ? -1.0 : 1.0;
            for (std::size_t j = 0; j < n_; ++j) tab_[i][j] = sign * lp.a[i][j];
            tab_[i][cols_] = sign * lp.b[i];
            int s = lp.sense[i] * (sign < 0.0 ? -1 : 1);
            if (s < 0) {
                tab_[i][next] = 1.0;
                basis_[i] = next++;
            } else if (s > 0) {
                tab_[i][next++] = -1.0;
                tab_[i][next] = 1.0;
                artificial_[next] = true;
                basis_[i] = next++;
            } else {
                tab_[i][next] = 1.0;
                artificial_[next] = true;
                basis_[i] = next++;
            }
        }
        cost_.assign(cols_, 0.0);
        for (std::size_t j = 0; j < n_; ++j) cost_[j] = lp.c[j];
    }

    LpResult solve() {
        std::vector<double> phase1(cols_, 0.0);
        for (std::size_t j = 0; j < cols_; ++j)
            if (artificial_[j]) phase1[j] = 1.0;
        iterate(phase1, false);
        if (objective(phase1) > 1e-7) return {};

        // Kick leftover artificials out of the basis where a real pivot
        // exists; an all-zero row can only ever keep them at zero.
        for (std::size_t i = 0; i < rows_; ++i) {
            if (!artificial_[basis_[i]]) continue;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (artificial_[j]) continue;
                if (std::fabs(tab_[i][j]) > kEps) {
                    pivot(i, j);
                    break;
                }
            }
        }

        iterate(cost_, true);
        LpResult res;
        res.feasible = true;
        res.x.assign(n_, 0.0);
        for (std::size_t i = 0; i < rows_; ++i)
            if (basis_[i] < n_) res.x[basis_[i]] = tab_[i][cols_];
        res.value = objective(cost_);
        return res;
    }

private:
    double objective(const std::vector<double>& c) const {
        double v = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) v += c[basis_[i]] * tab_[i][cols_];
        return v;
    }

    void iterate(const std::vector<double>& c, bool skip_artificial) {
        for (;;) {
            // Reduced costs recomputed from scratch; everything here is tiny.
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (skip_artificial && artificial_[j]) continue;
                double r = c[j];
                for (std::size_t i = 0; i < rows_; ++i) r -= c[basis_[i]] * tab_[i][j];
                if (r < -kEps) {
                    enter = j;
                    break; // Bland: first improving column
                }
            }
            if (enter == cols_) return;

            std::size_t leave = rows_;
            double best = 0.0;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (tab_[i][enter] <= kEps) continue;
                double ratio = tab_[i][cols_] / tab_[i][enter];
                if (leave == rows_ || ratio < best - kEps ||
                    (ratio < best + kEps && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            require(leave != rows_, "bounded objective expected");
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        double p = tab_[row][col];
        for (auto& v : tab_[row]) v /= p;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == row) continue;
            double f = tab_[i][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) tab_[i][j] -= f * tab_[row][j];
        }
        basis_[row] = col;
    }

    std::size_t n_, rows_, cols_ = 0;
    std::vector<std::vector<double>> tab_;
    std::vector<std::size_t> basis_;
    std::vector<bool> artificial_;
    std::vector<double> cost_;
};

bool gauss_solve(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::fabs(a[i][col]) > std::fabs(a[piv][col])) piv = i;
        if (std::fabs(a[piv][col]) < kEps) return false;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t i = col + 1; i < n; ++i) {
            double f = a[i][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
            b[i] -= f * b[col];
        }
    }
    x.assign(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double v = b[i];
        for (std::size_t j = i + 1; j < n; ++j) v -= a[i][j] * x[j];
        x[i] = v / a[i][i];
    }
    return true;
}

struct Inner {
    bool feasible = false;
    double objective = 0.0;
    std::vector<double> weights; // per distinct path
};

// Nonnegative least squares over the distinct paths by support enumeration.
// The optimum restricted to its support solves the unconstrained normal
// equations there, and a linearly independent support with the same fit
// always exists, so skipping singular subsets loses nothing.
Inner solve_lsq(const std::vector<const std::vector<char>*>& cover,
                const std::vector<double>& arc_weight) {
    const std::size_t kPaths = cover.size();
    const std::size_t m = arc_weight.size();

    double base = 0.0;
    for (double w : arc_weight) base += w * w;

    Inner best;
    best.feasible = true;
    best.objective = base;
    best.weights.assign(kPaths, 0.0);

    for (std::size_t mask = 1; mask < (std::size_t{1} << kPaths); ++mask) {
        std::vector<std::size_t> sel;
        for (std::size_t p = 0; p < kPaths; ++p)
            if (mask >> p & 1) sel.push_back(p);
        const std::size_t s = sel.size();
        std::vector<std::vector<double>> gram(s, std::vector<double>(s, 0.0));
        std::vector<double> rhs(s, 0.0);
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t i = 0; i < s; ++i) {
                if (!(*cover[sel[i]])[a]) continue;
                rhs[i] += arc_weight[a];
                for (std::size_t j = 0; j < s; ++j)
                    if ((*cover[sel[j]])[a]) gram[i][j] += 1.0;
            }
        }
        std::vector<double> x;
        if (!gauss_solve(gram, rhs, x)) continue;
        bool ok = true;
        for (double v : x) ok = ok && v >= -kEps;
        if (!ok) continue;

        double obj = 0.0;
        for (std::size_t a = 0; a < m; ++a) {
            double fit = 0.0;
            for (std::size_t i = 0; i < s; ++i)
                if ((*cover[sel[i]])[a]) fit += x[i];
            double r = arc_weight[a] - fit;
            obj += r * r;
        }
        if (obj < best.objective) {
            best.objective = obj;
            best.weights.assign(kPaths, 0.0);
            for (std::size_t i = 0; i < s; ++i) best.weights[sel[i]] = std::max(0.0, x[i]);
        }
    }
    return best;
}

// Min total path slack: per covered arc,
//   sum(w_p + rho_p) >= weight and sum(w_p - rho_p) <= weight over paths
// through it. An uncovered arc with positive weight sinks the combination.
Inner solve_mpe(const std::vector<const std::vector<char>*>& cover,
                const std::vector<double>& arc_weight) {
    const std::size_t kPaths = cover.size();
    const std::size_t m = arc_weight.size();

    DenseLp lp;
    lp.c.assign(2 * kPaths, 0.0);
    for (std::size_t p = 0; p < kPaths; ++p) lp.c[kPaths + p] = 1.0;
    for (std::size_t a = 0; a < m; ++a) {
        std::vector<std::size_t> through;
        for (std::size_t p = 0; p < kPaths; ++p)
            if ((*cover[p])[a]) through.push_back(p);
        if (through.empty()) {
            if (arc_weight[a] > 0.0) return {};
            continue;
        }
        std::vector<double> hi(2 * kPaths, 0.0), lo(2 * kPaths, 0.0);
        for (std::size_t p : through) {
            hi[p] = 1.0;
            hi[kPaths + p] = 1.0;
            lo[p] = 1.0;
            lo[kPaths + p] = -1.0;
        }
        lp.a.push_back(std::move(hi));
        lp.b.push_back(arc_weight[a]);
        lp.sense.push_back(+1);
        lp.a.push_back(std::move(lo));
        lp.b.push_back(arc_weight[a]);
        lp.sense.push_back(-1);
    }

    Inner out;
    if (lp.a.empty()) {
        out.feasible = true;
        out.weights.assign(kPaths, 0.0);
        return out;
    }
    LpResult res = Simplex(lp).solve();
    if (!res.feasible) return {};
    out.feasible = true;
    out.objective = res.value;
    out.weights.assign(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(kPaths));
    return out;
}

bool kuhn_match(std::size_t seq, const std::vector<std::vector<char>>& compat,
                std::vector<char>& visited, std::vector<std::size_t>& slot_owner) {
    for (std::size_t slot = 0; slot < compat[seq].size(); ++slot) {
        if (!compat[seq][slot] || visited[slot]) continue;
        visited[slot] = 1;
        if (slot_owner[slot] == SIZE_MAX || kuhn_match(slot_owner[slot], compat, visited, slot_owner)) {
            slot_owner[slot] = seq;
            return true;
        }
    }
    return false;
}

PathSolution solve_impl(const StDag& g, std::size_t k, Problem problem,
                        const std::vector<AttachedSequence>* seqs, std::size_t path_limit) {
    if (k < 1) fail(ErrorKind::InvalidK, "path count must be at least 1", static_cast<std::int64_t>(k));
    const std::size_t m = g.graph.arc_count();
    if (m == 0) return {};

    auto paths = all_st_arc_paths(g, path_limit);
    const std::size_t count = paths.size();
    require(count > 0, "an s-t dag has at least one path");

    double combos = 1.0;
    for (std::size_t i = 1; i <= k; ++i)
        combos *= static_cast<double>(count - 1 + i) / static_cast<double>(i);
    if (combos > 1e5)
        fail(ErrorKind::PathExplosion, "too many path combinations to enumerate",
             static_cast<std::int64_t>(count));

    std::vector<std::vector<char>> cover(count, std::vector<char>(m, 0));
    for (std::size_t p = 0; p < count; ++p)
        for (ArcId a : paths[p]) cover[p][a] = 1;
    std::vector<double> arc_weight(m);
    for (ArcId a = 0; a < m; ++a) arc_weight[a] = g.graph.arc(a).weight;

    std::vector<std::vector<char>> seq_compat; // sequence x path
    if (seqs) {
        if (seqs->size() > k)
            fail(ErrorKind::TooManySequences, "more pairwise independent sequences than paths",
                 static_cast<std::int64_t>(seqs->size()));
        seq_compat.assign(seqs->size(), std::vector<char>(count, 0));
        for (std::size_t j = 0; j < seqs->size(); ++j)
            for (std::size_t p = 0; p < count; ++p) {
                bool ok = true;
                for (ArcId a : (*seqs)[j].fix_arcs) ok = ok && cover[p][a];
                seq_compat[j][p] = ok;
            }
    }

    bool found = false;
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> best_distinct;
    std::vector<double> best_weights;

    std::vector<std::size_t> combo(k, 0);
    for (;;) {
        bool admissible = true;
        if (seqs && !seqs->empty()) {
            std::vector<std::vector<char>> compat(seqs->size(), std::vector<char>(k, 0));
            for (std::size_t j = 0; j < seqs->size(); ++j)
                for (std::size_t slot = 0; slot < k; ++slot)
                    compat[j][slot] = seq_compat[j][combo[slot]];
            std::vector<std::size_t> slot_owner(k, SIZE_MAX);
            for (std::size_t j = 0; j < seqs->size() && admissible; ++j) {
                std::vector<char> visited(k, 0);
                admissible = kuhn_match(j, compat, visited, slot_owner);
            }
        }
        if (admissible) {
            std::vector<std::size_t> distinct(combo.begin(), combo.end());
            distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
            std::vector<const std::vector<char>*> sel;
            for (std::size_t p : distinct) sel.push_back(&cover[p]);
            Inner inner = problem == Problem::LeastSquares ? solve_lsq(sel, arc_weight)
                                                           : solve_mpe(sel, arc_weight);
            if (inner.feasible && inner.objective < best - 1e-12) {
                found = true;
                best = inner.objective;
                best_distinct = distinct;
                best_weights = inner.weights;
            } else if (inner.feasible && !found) {
                found = true;
                best = inner.objective;
                best_distinct = distinct;
                best_weights = inner.weights;
            }
        }

        // next multiset: rightmost slot that can still grow
        std::size_t pos = k;
        while (pos > 0 && combo[pos - 1] == count - 1) --pos;
        if (pos == 0) break;
        const std::size_t v = combo[pos - 1] + 1;
        for (std::size_t i = pos - 1; i < k; ++i) combo[i] = v;
    }

    if (!found)
        fail(ErrorKind::Infeasible, "no path combination covers every weighted arc",
             static_cast<std::int64_t>(k));

    PathSolution out;
    out.objective = best;
    for (std::size_t i = 0; i < best_distinct.size(); ++i) {
        out.arc_paths.push_back(paths[best_distinct[i]]);
        out.weights.push_back(best_weights[i]);
    }
    return out;
}

} // namespace

PathSolution solve_tiny(const StDag& g, std::size_t k, Problem problem, std::size_t path_limit) {
    return solve_impl(g, k, problem, nullptr, path_limit);
}

PathSolution solve_tiny_fixed(const StDag& g, std::size_t k, Problem problem,
                              const AntichainSelection& selection, std::size_t path_limit) {
    return solve_impl(g, k, problem, &selection.sequences, path_limit);
}

} // namespace safeseq
