// SMT-LIB subset frontend: parsing, partition splitting and clausification.
//
// Accepted commands: set-logic (QF_UFLIA / QF_UFLRA), declare-sort,
// declare-fun, declare-const, assert with a :named A / :named B annotation,
// check-sat, get-interpolants.  Terms support let with non-recursive term
// bindings.
#pragma once

#include "itp/partition.hpp"

namespace itp {

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(int line_, int col_, const std::string& msg)
        : std::runtime_error(std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
          line(line_),
          col(col_) {}
};

struct Script {
    std::string logic;
    Sort::Kind sort_mode = Sort::Kind::Int;
    std::map<std::string, Formula> named_assertions;
    // partition order from (get-interpolants X Y); defaults to A, B
    std::string name_a = "A", name_b = "B";
    bool saw_check_sat = false;
    bool saw_get_interpolants = false;
};

Script parse_problem(AtomContext& ctx, const std::string& text);

struct InterpolationProblem {
    std::vector<Clause> clauses_a;
    std::vector<Clause> clauses_b;
    Formula formula_a;
    Formula formula_b;
    PartitionInfo partition;
    Sort::Kind sort_mode = Sort::Kind::Int;
};

/// Conjunctions of disjunctions of literals pass through; deeper boolean
/// structure is clausified with fresh labels local to `origin`.
/// `partition`, when given, receives the label classifications.
std::vector<Clause> clausify(AtomContext& ctx, const Formula& f, Side origin,
                             PartitionInfo* partition = nullptr);

InterpolationProblem build_problem(AtomContext& ctx, const Script& s);

}  // namespace itp
