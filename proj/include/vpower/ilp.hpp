#pragma once

#include "vpower/exact_lp.hpp"
#include "vpower/game.hpp"
#include "vpower/indices.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vpower {

enum class Norm { L1, Linf };
Norm parse_norm(const std::string& text);
std::string to_string(Norm norm);

struct InverseInstance {
    std::vector<Q> sigma;
    IndexId index;
    GameClass cls = GameClass::Simple;
    bool proper = false;
    bool strong = false;
    Norm norm = Norm::L1;

    int n() const { return static_cast<int>(sigma.size()); }
};

// {"sigma": ["p/q", ...], "index": "bz", "class": "simple", "norm": "L1", "normalized": true}
InverseInstance parse_instance_json(const std::string& text);

}  // namespace vpower

namespace vpower::ilp {

enum class VarKind { Binary, Continuous };

struct Variable {
    std::string name;
    VarKind kind = VarKind::Continuous;
    Q lower = 0;
    std::optional<Q> upper;
};

struct Constraint {
    std::string name;
    std::vector<lp::Term> terms;
    lp::Sense sense = lp::Sense::Le;
    Q rhs;
};

struct Model {
    std::vector<Variable> vars;
    std::vector<Constraint> rows;
    std::vector<lp::Term> objective;  // minimized; empty means a feasibility problem
    Q big_m = 0;

    int add_var(const std::string& name, VarKind kind, Q lower = 0, std::optional<Q> upper = std::nullopt);
    int find(const std::string& name) const;  // -1 when missing
    int var(const std::string& name) const;   // throws when missing
    void add_row(const std::string& name, std::vector<lp::Term> terms, lp::Sense sense, Q rhs);

private:
    std::map<std::string, int> by_name_;
};

struct BuildOptions {
    // Emit the unique-minimal-winning-coalition block for Tijs instead of the vetoer block.
    bool tijs_unique_mwc = false;
};

// Ceiling of 4n((n+1)/4)^((n+1)/2).
Z big_m_value(int n);

bool has_ilp_block(const IndexId& id);
// Class constraints only: x variables plus q, w for the weighted class.
Model build_class_model(GameClass cls, int n, bool proper = false, bool strong = false);
// The full model. Normalized mode needs alpha and gives a feasibility problem.
Model build_ilp(const InverseInstance& inst, std::optional<Q> normalized_alpha = std::nullopt,
                const BuildOptions& options = {});

std::string emit_lp(const Model& model);
Model parse_lp(const std::string& text);

std::string x_name(Coalition s);

// Assignment of every x variable from a game's table.
std::map<int, Q> incidence_assignment(const Model& model, const Game& g);

// Fixes the given variables, propagates integrality through the rows and branches on any
// binary left open. Returns, over all feasible integral completions, min and max of `target`
// with the continuous variables free. Without with_max, hi repeats lo.
struct Range {
    bool feasible = false;
    Q lo;
    Q hi;
};
Range range_under(const Model& model, const std::map<int, Q>& fixed, const std::vector<lp::Term>& target,
                  bool with_max = true);
bool feasible_under(const Model& model, const std::map<int, Q>& fixed);

struct SemanticsReport {
    int n = 0;
    GameClass cls = GameClass::Simple;
    std::size_t assignments = 0;
    std::size_t feasible = 0;
    std::size_t expected = 0;  // class games under the fixed voter order
    std::size_t class_mismatches = 0;
    std::size_t index_checks = 0;
    std::size_t index_mismatches = 0;
    std::vector<std::string> failures;

    bool ok() const { return class_mismatches == 0 && index_mismatches == 0; }
};

// Brute force over all x with x_empty = 0 and x_N = 1.
SemanticsReport verify_model_semantics(int n, GameClass cls, const std::vector<IndexId>& indices,
                                       const BuildOptions& options = {});

// The class as the models see it: voters ordered 1 >= 2 >= ... >= n for complete and weighted.
bool in_model_class(const Game& g, GameClass cls);

// Indices that have a block, with default parameters.
std::vector<IndexId> ilp_indices();

}  // namespace vpower::ilp
