#pragma once

#include "vpower/game.hpp"

#include <string>

namespace vpower {

enum class ShorteningTag { KRounding, PKRounding, KUpRounding };

struct ShorteningId {
    ShorteningTag tag = ShorteningTag::KRounding;
    Q p = Q(1, 2);  // only read for PKRounding
    int k = 1;

    std::string name() const;
};

// For every A in [k] the reduced game W_A is replaced by all-losing or all-winning.
// Ties (|W_A| equal to its complement) go to losing unless reversed_ties is set.
Game k_rounding(const Game& g, int k, bool reversed_ties = false);
// Losing iff |W_A| <= p * 2^(n-k).
Game pk_rounding(const Game& g, const Q& p, int k);
// Winning iff W_A is nonempty.
Game k_up_rounding(const Game& g, int k);
Game shorten(const Game& g, const ShorteningId& id);

// Voters k+1..n are null voters.
bool is_k_pure(const Game& g, int k);
bool is_constant(const Game& g);
std::size_t switched_coalitions(const Game& a, const Game& b);

struct PreservationReport {
    bool constant_output = false;
    ClassFlags before;
    ClassFlags after;
    bool boolean_ok = true;
    bool simple_ok = true;
    bool complete_ok = true;         // complete under some order
    bool fixed_complete_ok = true;   // complete under 1 >= ... >= n
    bool weighted_ok = true;
    bool proper_ok = true;
    bool strong_ok = true;

    bool all_hold() const {
        return boolean_ok && simple_ok && complete_ok && fixed_complete_ok && weighted_ok && proper_ok && strong_ok;
    }
};

// Implications checked only when the k-rounding is not constant.
PreservationReport check_preservation(const Game& g, int k);

}  // namespace vpower
