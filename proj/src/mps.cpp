#include "nslice/mps.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace nslice {

namespace {

std::string mps_value(double v) {
    char buf[32];
    for (int prec = 10; prec >= 4; prec -= 2) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::string_view(buf).size() <= 12) return buf;
    }
    return buf;
}

std::string row_name(int i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "R%07d", i + 1);
    return buf;
}

std::string col_name(int j) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "C%07d", j + 1);
    return buf;
}

void field(int start, const std::string& text, std::string& line) {
    while (static_cast<int>(line.size()) < start - 1) line.push_back(' ');
    line += text;
}

std::string record(const std::string& f1, const std::string& f2,
                   const std::string& f3 = "", const std::string& f4 = "") {
    // Classic fixed positions: fields at columns 2, 5, 15 and 25.
    std::string line;
    field(2, f1, line);
    field(5, f2, line);
    if (!f3.empty()) field(15, f3, line);
    if (!f4.empty()) field(25, f4, line);
    return line + "\n";
}

}  // namespace

MpsExport export_mps(const LPModel& model, const std::string& problem_name) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::ostringstream os;
    os << "NAME          " << problem_name << "\n";
    os << "ROWS\n";
    os << record("N", "COST");
    for (int i = 0; i < model.num_rows(); ++i) {
        const char* type = "L";
        switch (model.constraints[i].relation) {
            case Relation::LessEqual: type = "L"; break;
            case Relation::Equal: type = "E"; break;
            case Relation::GreaterEqual: type = "G"; break;
        }
        os << record(type, row_name(i));
    }

    // Column-major nonzeros, one entry per record.
    std::vector<std::vector<std::pair<int, double>>> cols(model.num_vars());
    for (int i = 0; i < model.num_rows(); ++i)
        for (const auto& [j, a] : model.constraints[i].coeffs)
            if (a != 0.0) cols[j].push_back({i, a});

    os << "COLUMNS\n";
    for (int j = 0; j < model.num_vars(); ++j) {
        if (model.objective[j] != 0.0)
            os << record("", col_name(j), "COST", mps_value(model.objective[j]));
        for (const auto& [i, a] : cols[j])
            os << record("", col_name(j), row_name(i), mps_value(a));
    }

    os << "RHS\n";
    for (int i = 0; i < model.num_rows(); ++i) {
        if (model.constraints[i].rhs != 0.0)
            os << record("", "RHS", row_name(i), mps_value(model.constraints[i].rhs));
    }

    os << "BOUNDS\n";
    for (int j = 0; j < model.num_vars(); ++j) {
        const auto& v = model.variables[j];
        if (v.lower == v.upper) {
            os << record("FX", "BND", col_name(j), mps_value(v.lower));
            continue;
        }
        if (v.lower == -kInf)
            os << record("MI", "BND", col_name(j));
        else if (v.lower != 0.0)
            os << record("LO", "BND", col_name(j), mps_value(v.lower));
        if (v.upper != kInf)
            os << record("UP", "BND", col_name(j), mps_value(v.upper));
    }
    os << "ENDATA\n";

    nlohmann::ordered_json table;
    table["objective"] = "COST";
    auto& rows = table["rows"] = nlohmann::ordered_json::object();
    for (int i = 0; i < model.num_rows(); ++i) rows[row_name(i)] = model.constraints[i].name;
    auto& jcols = table["cols"] = nlohmann::ordered_json::object();
    for (int j = 0; j < model.num_vars(); ++j) jcols[col_name(j)] = model.variables[j].name;

    return {os.str(), table.dump(2)};
}

LPSolution solve_with_external(const LPModel& model, const ExternalSolver& solver) {
    MpsExport doc = export_mps(model);
    ExternalLPResult ext = solver(doc.mps);
    LPSolution out;
    out.status = ext.status;
    out.objective_value = ext.objective_value;
    out.values.assign(model.num_vars(), 0.0);
    for (int j = 0; j < model.num_vars(); ++j) {
        auto it = ext.values.find(col_name(j));
        if (it != ext.values.end()) out.values[j] = it->second;
    }
    return out;
}

}  // namespace nslice
