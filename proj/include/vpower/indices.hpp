#pragma once

#include "vpower/game.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vpower {

enum class IndexTag {
    SSI, Tijs, Semivalue, PBinomial, Bz, Swing, ColPrev, ColIni, Rae,
    KB, PHI, Chow, JS, PGI, DP, Shift, SDP
};

const std::vector<IndexTag>& all_index_tags();

struct IndexId {
    IndexTag tag = IndexTag::Bz;
    // Semivalue weights p_0..p_{n-1}; empty means the Shapley-Shubik weights for the game's n.
    std::vector<Q> semivalue_p;
    Q binomial_p = Q(1, 2);
    bool normalized = false;

    IndexId() = default;
    IndexId(IndexTag t, bool norm = false) : tag(t), normalized(norm) {}

    static IndexId semivalue(std::vector<Q> p, bool norm = false);
    static IndexId pbinomial(Q p, bool norm = false);
    IndexId with_normalized(bool norm) const;

    std::string name() const;
    bool operator==(const IndexId&) const = default;
};

// Names: ssi, tijs, bz, swing, colprev, colini, rae, kb, phi, chow, js, pgi, dp, shift, sdp,
// pbinomial:<p>, semivalue (Shapley-Shubik weights) or semivalue:<p0>,<p1>,...
IndexId parse_index(const std::string& text);
std::string tag_name(IndexTag tag);

struct PowerVector {
    IndexId index;
    std::vector<Q> values;
};

class NormalizationOfZero : public std::domain_error {
public:
    NormalizationOfZero() : std::domain_error("cannot normalize a power vector with zero total") {}
};

// Shapley-Shubik weights p_j = 1/(n*C(n-1,j)).
std::vector<Q> shapley_semivalue_weights(int n);
// Checks p_j >= 0 and sum_j p_j*C(n-1,j) = 1.
bool valid_semivalue_weights(const std::vector<Q>& p, int n);

// Per-coalition counting value C_i(g,S); i is 1-based. The reference definition.
Q counting_value(const Game& g, const IndexId& id, int i, Coalition s);

// Absolute or normalized index, computed from grouped integer counts.
PowerVector power_index(const Game& g, const IndexId& id);
// Direct double sum over counting_value.
PowerVector power_index_naive(const Game& g, const IndexId& id);
std::vector<Q> absolute_values(const Game& g, const IndexId& id);

std::vector<Q> normalize(const std::vector<Q>& values);
PowerVector normalize(const PowerVector& v);

// g with the minimal winning coalition T turned losing.
Game remove_mwc(const Game& g, Coalition t);
bool supports_incremental(IndexTag tag);
// Absolute index of remove_mwc(g, T) from the absolute index of g.
PowerVector update_on_mwc_removal(const Game& g, Coalition t, const IndexId& id, const PowerVector& current);

// Swing -> JS, PGI -> DP, Shift -> SDP.
IndexTag equal_division_transform(IndexTag tag);
// C'_i(g,S) = max_j C_j(g,S) / #{j : C_j(g,S) > 0} when C_i(g,S) > 0.
Q equal_division_value(const Game& g, const IndexId& base, int i, Coalition s);

enum class Property { Symmetric, Positive, Efficient, NullVoter, NullVoterRemovable };
std::string to_string(Property p);

struct PropertyResult {
    bool holds = true;
    std::optional<Game> counterexample;
    std::string detail;
};

// Exhaustive check over the simple games on n voters (n <= 4). Shift and SDP are
// checked on games complete under the fixed order.
PropertyResult check_property(const IndexId& id, Property property, int n);
// Reference table of properties on simple games.
bool expected_property(IndexTag tag, Property property);

// True when the index is only defined on games complete under 1 >= 2 >= ... >= n.
bool requires_fixed_order(IndexTag tag);

}  // namespace vpower
