#pragma once

#include "vpower/game.hpp"
#include "vpower/indices.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vpower {

// The family on k+n voters with minimal winning coalitions
// {U in [k] : |U| = l, U != T} and {T + V : V in (k, k+n], |V| = m}, where T = (k-l, k].
struct ParametricParams {
    int k = 2;
    int l = 1;
    int m = 1;
    int n = 1;

    void validate() const;
    int voters() const { return k + n; }
    Coalition t_coalition() const;
    std::string to_string() const;
};

// Original: the game itself. AllLosing: every T + V losing (m = n+1).
// AllWinning: every T + V winning (m = 0).
enum class Variant { Original, AllLosing, AllWinning };
std::string to_string(Variant v);
ParametricParams with_variant(const ParametricParams& p, Variant v);

Game build_game(const ParametricParams& p);
WeightedRepr weighted_repr(const ParametricParams& p);
// The variant k-rounding produces: AllWinning when m <= floor(n/2), AllLosing otherwise.
Variant rounding_case(const ParametricParams& p);

// Values per voter type: [1, k-l], (k-l, k], (k, k+n].
struct TypedTriple {
    Q head;
    Q tail_head;  // the voters of T
    Q ocean;

    std::vector<Q> expand(const ParametricParams& p) const;
    Q total(const ParametricParams& p) const;
    bool operator==(const TypedTriple&) const = default;
};

struct TypedDeltas {
    // |P_i(original) - P_i(variant)| per type.
    TypedTriple to_losing;
    TypedTriple to_winning;
    Q xi;  // ocean power in the original game
};

TypedTriple psi_p_closed_form(const ParametricParams& p, Variant which, const Q& pval);
// l must be 1.
TypedTriple johnston_closed_form(const ParametricParams& p, Variant which);
TypedTriple ssi_closed_form(const ParametricParams& p, Variant which);

TypedDeltas deltas(const ParametricParams& p, const TypedTriple& original, const TypedTriple& losing,
                   const TypedTriple& winning);
TypedDeltas psi_p_deltas(const ParametricParams& p, const Q& pval);
TypedDeltas johnston_deltas(const ParametricParams& p);

// Collapses a brute-force vector to its three type values, or nullopt when a type is not constant.
std::optional<TypedTriple> collapse(const ParametricParams& p, const std::vector<Q>& values);

// Certified enclosure of exp(x): lo <= exp(x) <= hi.
struct Enclosure {
    Q lo;
    Q hi;
};
Enclosure exp_enclosure(const Q& x, int terms);

enum class Verdict { Holds, Fails, Undecided, NotApplicable };
std::string to_string(Verdict v);

struct TailLemmasReport {
    Verdict binomial_bound = Verdict::NotApplicable;  // C(n-1,m-1) <= 2^(n-1)/sqrt(n)
    Verdict upper_tail = Verdict::NotApplicable;      // m = ceil((n+1)/2), p = 1/2 + delta
    Verdict lower_tail = Verdict::NotApplicable;      // m = floor(n/2), p = 1/2 - delta
    Verdict product_bound = Verdict::NotApplicable;   // both p = 1/2 +- delta

    bool ok() const;
};
TailLemmasReport tail_lemmas_check(int n, int m, const Q& delta);

struct JohnstonReport {
    int k = 0;
    int ntilde = 0;
    Q distance_to_winning;  // |JS(G) - JS(all winning)|_1
    Q distance_to_losing;
    Q xi;
    bool absolute_winning_ok = false;  // >= (k sqrt(nt/2) + 1) xi
    bool absolute_losing_ok = false;   // >= ((k-1) sqrt(nt/2) + 1) xi
    Q normalized_to_winning;
    Q normalized_to_losing;
    bool normalized_ok = false;  // both >= 1/(5k)
    bool xi_share_ok = false;    // xi / sum JS(G) <= sqrt(2) / ((3k-3) sqrt(nt))
};
JohnstonReport johnston_negative_check(int k, int ntilde);

struct WitnessRow {
    int n = 0;
    int m = 0;
    Q ratio;  // head delta / xi
    Q xi;
    bool total_change_ok = false;
    Q normalized_ratio;  // |normalized change| / eps' under k-rounding
};

struct WitnessReport {
    std::vector<WitnessRow> rows;
    bool ratio_increasing = false;
    bool xi_decreasing = false;
    bool normalized_increasing = false;
    bool total_change_ok = false;
    bool asserted = false;  // false for p = 1/2
};
WitnessReport pbinomial_negative_witness(int k, int l, const Q& p, const std::vector<int>& n_list);

}  // namespace vpower
