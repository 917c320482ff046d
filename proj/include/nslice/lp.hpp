#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace nslice {

enum class Relation { LessEqual, Equal, GreaterEqual };

// Bounded-variable LP in minimization form. Rows are kept sparse; the
// objective is indexed like `variables`.
struct LPModel {
    struct Variable {
        std::string name;
        double lower = 0.0;
        double upper = std::numeric_limits<double>::infinity();
    };
    struct Row {
        std::vector<std::pair<int, double>> coeffs;  // (variable, coefficient)
        Relation relation = Relation::LessEqual;
        double rhs = 0.0;
        std::string name;
    };

    std::vector<Variable> variables;
    std::vector<double> objective;
    std::vector<Row> constraints;

    int add_variable(const std::string& name, double lower, double upper) {
        variables.push_back({name, lower, upper});
        objective.push_back(0.0);
        return static_cast<int>(variables.size()) - 1;
    }
    void add_constraint(std::vector<std::pair<int, double>> coeffs, Relation rel,
                        double rhs, std::string name = "") {
        constraints.push_back({std::move(coeffs), rel, rhs, std::move(name)});
    }
    int num_vars() const { return static_cast<int>(variables.size()); }
    int num_rows() const { return static_cast<int>(constraints.size()); }
};

enum class LPStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

// Opaque basis snapshot; feeding the basis of a previous solve of a related
// model (same shape, different bounds or objective) warm-starts the next one.
struct SimplexBasis {
    std::vector<int> basic;
    std::vector<signed char> state;
    bool empty() const { return basic.empty(); }
};

struct LPSolution {
    LPStatus status = LPStatus::NumericalFailure;
    std::vector<double> values;
    double objective_value = 0.0;
    // Row prices. On Optimal these are the duals (dual_objective <= primal
    // within tolerance); on Infeasible they are the phase-1 prices, i.e. a
    // Farkas-style infeasibility certificate.
    std::vector<double> duals;
    double dual_objective = 0.0;
    int pivots = 0;
    SimplexBasis basis;
};

inline constexpr double kFeasTol = 1e-7;  // absolute, on rows scaled to max-abs 1
inline constexpr double kOptTol = 1e-7;   // reduced-cost tolerance

LPSolution solve_lp(const LPModel& model, const SimplexBasis* warm = nullptr);

}  // namespace nslice
