#pragma once

#include <map>
#include <string>
#include <vector>

#include "safeseq/digraph.hpp"
#include "safeseq/minflow.hpp"

namespace safeseq {

// The two weighted path-cover objectives the model builder knows. Both decode
// k paths from binary arc indicators x[arc][path] with a per-path weight w_i;
// MinPathError adds per-path slacks rho_i bounding each arc's weight mismatch,
// LeastSquares scores the squared per-arc residuals instead.
enum class Problem { MinPathError, LeastSquares };

enum class VarKind { Binary, PathWeight, Slack, ProductWeight, ProductSlack, Residual };

struct Variable {
    std::string name;
    VarKind kind = VarKind::Binary;
    double lb = 0.0;
    double ub = 0.0; // +inf encoded as kNoUpperBound
    bool integral = false;
};

inline constexpr double kNoUpperBound = 1e30;
inline constexpr double kNoLowerBound = -1e30;

enum class Sense { LessEq, GreaterEq, Equal };

struct LinearConstraint {
    std::string name;
    std::vector<std::pair<std::size_t, double>> terms; // (variable index, coefficient)
    Sense sense = Sense::Equal;
    double rhs = 0.0;
};

struct IlpModel {
    Problem problem = Problem::MinPathError;
    std::string name = "model";
    std::size_t path_count = 0;
    std::size_t arc_count = 0;
    double big_m = 1.0;

    std::vector<Variable> vars;
    std::vector<LinearConstraint> constraints;
    std::vector<std::pair<std::size_t, double>> objective_linear;
    std::vector<std::pair<std::size_t, double>> objective_quadratic; // coefficient times var^2
    std::vector<std::pair<std::size_t, double>> fixed;               // exported as equal bounds

    // Variable index helpers; path indices run 1..k.
    std::size_t x_index(ArcId a, std::size_t i) const;
    std::size_t w_index(std::size_t i) const;
    std::size_t rho_index(std::size_t i) const;
    std::size_t p_index(ArcId a, std::size_t i) const;
    std::size_t q_index(ArcId a, std::size_t i) const;
    std::size_t r_index(ArcId a) const;

    std::size_t count_kind(VarKind kind) const;
};

// Builds the k-path model for g. Path-shape constraints per path: the arcs out
// of the source sum to one and flow is conserved at interior nodes, which pins
// each x[.][i] to exactly one s-t path. Products x*w and (MinPathError) x*rho
// are linearized with big-M set to the total arc weight. Throws InvalidK for
// k < 1.
IlpModel build_model(const StDag& g, std::size_t k, Problem problem, std::string name = "model");

// Pins x[arc][i] = 1 for every arc the i-th attached sequence fixes.
// Throws TooManySequences when the selection carries more sequences than k.
IlpModel apply_safety_fixing(IlpModel model, const AntichainSelection& selection);

struct FixingStats {
    std::size_t fixed_count = 0;
    std::size_t binary_count = 0;
    double percentage = 0.0;
};

FixingStats fixing_statistics(const IlpModel& model);

// Data arcs whose weight reaches the q-th percentile of data-arc weights
// (nearest-rank: the ceil(q/100 * count)-th smallest). q = 0 keeps every data
// arc. Arcs appended by normalization are never included.
std::vector<ArcId> percentile_subset(const StDag& g, double q);

enum class ModelFormat { LP, MPS };

// Deterministic text export. LP is the CPLEX dialect with the quadratic
// objective in a [ ... ] / 2 block; MPS is fixed-format with integrality
// markers and a QUADOBJ section. Fixed binaries become equal bounds.
std::string export_model(const IlpModel& model, ModelFormat format);

// Minimal MPS reader able to load what export_model emits, for round-trips.
struct ParsedMps {
    std::string name;
    std::map<std::string, char> row_sense; // N/L/G/E by row name
    std::string objective_row;
    std::map<std::string, std::map<std::string, double>> columns; // var -> row -> coef
    std::map<std::string, double> rhs;
    std::map<std::string, std::pair<double, double>> bounds; // var -> (lb, ub)
    std::map<std::string, bool> integral;
    std::map<std::string, double> quad_diag; // var -> coefficient of var^2
};

ParsedMps parse_mps(const std::string& text);

// Same rows, columns, senses, bounds, objective and quadratic terms.
bool structurally_equal(const IlpModel& model, const ParsedMps& parsed);

} // namespace safeseq
