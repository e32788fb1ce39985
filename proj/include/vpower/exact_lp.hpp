#pragma once

#include "vpower/rational.hpp"

#include <optional>
#include <vector>

namespace vpower::lp {

enum class Sense { Le, Ge, Eq };

struct Term {
    int var;
    Q coef;
};

struct Row {
    std::vector<Term> terms;
    Sense sense;
    Q rhs;
};

// Minimize objective subject to rows and per-variable bounds.
// A missing lower bound means -infinity, a missing upper bound +infinity.
struct Problem {
    std::vector<std::optional<Q>> lower;
    std::vector<std::optional<Q>> upper;
    std::vector<Row> rows;
    std::vector<Term> objective;

    int add_var(std::optional<Q> lo = Q(0), std::optional<Q> hi = std::nullopt);
    void add_row(std::vector<Term> terms, Sense sense, Q rhs);
    int num_vars() const { return static_cast<int>(lower.size()); }
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status = Status::Infeasible;
    Q objective = 0;
    std::vector<Q> x;
};

// Dense two-phase simplex over exact rationals with Bland's pivoting rule.
Result solve(const Problem& problem);

}  // namespace vpower::lp
