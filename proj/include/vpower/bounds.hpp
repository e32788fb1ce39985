#pragma once

#include "vpower/indices.hpp"
#include "vpower/shortening.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace vpower {

struct QualityFunctions {
    Q f1;
    Q f2;
};

bool has_quality_functions(const IndexId& id);
// n is only read for semivalues, whose constants come from the weights at that voter count.
QualityFunctions quality(const IndexId& id, int k, int n = 0);
// Bounded semivalue with c1 <= p_j <= c2.
QualityFunctions bounded_semivalue_quality(const Q& c1, const Q& c2, int k);

// k-up-rounding for Tijs, k-rounding otherwise.
ShorteningId default_shortening(const IndexId& id, int k);

// Tail share sum_{i>k} P_i / sum_i P_i of the absolute index. Throws NormalizationOfZero.
Q epsilon_of(const Game& g, int k, const IndexId& id);

struct MainTheoremReport {
    Game shortened;
    Q epsilon;  // 0 when the total is 0
    Q total;
    Q absolute_bound;
    Q actual_absolute;
    bool absolute_ok = true;

    bool normalized_checked = false;
    std::string normalized_skip;  // reason when not checked
    Q normalized_bound;
    Q actual_normalized;
    bool normalized_ok = true;

    // Local approximability on the whole game: head coordinates and the total.
    Q head_change_max;
    Q head_allowance;
    Q total_change;
    Q total_allowance;
    bool local_ok = true;

    bool ok() const { return absolute_ok && normalized_ok && local_ok; }
};

MainTheoremReport main_theorem_bounds(const Game& g, int k, const IndexId& id);

struct LambdaResult {
    Q value;
    std::optional<Game> witness;
    std::size_t considered = 0;
    std::size_t skipped_zero = 0;
};

// min over class games g' on k voters of |sigma' - normalized P(g')|_1. Zero-total games are skipped.
LambdaResult lambda_min(const std::vector<Q>& sigma_prefix, GameClass cls, int k, const IndexId& id);

struct LowerBound {
    bool emitted = false;
    std::string reason;
    bool corollary_path = false;
    Q value;
    Q lambda;
    Q alpha;
    Q beta;
    Q f1;
    Q f2;
};

LowerBound approximation_lower_bound(const std::vector<Q>& sigma, int k, const IndexId& id, GameClass cls);

struct SweepReport {
    std::size_t games = 0;
    std::size_t checks = 0;
    std::size_t normalized_checks = 0;
    std::size_t violations = 0;
    std::size_t local_violations = 0;
    Q max_absolute_ratio;
    Q max_normalized_ratio;
    std::vector<std::string> failures;
};

// Every game of the class on n voters and every k < n. Lines go to `lines` when given.
SweepReport empirical_bound_sweep(int n, const IndexId& id, GameClass cls, bool check_local = true,
                                  std::ostream* lines = nullptr);

struct ProbeReport {
    std::size_t games = 0;
    std::size_t measured = 0;
    Q max_ratio;
    std::optional<Game> argmax;
};

// sup of |P^(G') - P^(g)|_1 / eps' over the simple games on n voters, with G' the (p,k)-rounding.
ProbeReport pk_conjecture_probe(const Q& p, int n, int k);

// (2k+1)e/(1-(k+1)e) + e > (2k+2)e on the grid e = j/(steps*(k+1)), 0 < j < steps.
bool original_bound_is_looser(int k, int steps);

// Guard: eps < 1/f2 and P(g) != 0 imply the shortening is not constant.
struct GuardReport {
    std::size_t applicable = 0;
    std::size_t violations = 0;
    bool hypothesis_holds = true;  // P vanishes on both constant games
};
GuardReport constant_guard_check(int n, const IndexId& id);

// Indices with quality functions; the bounded semivalue uses Shapley-Shubik weights.
std::vector<IndexId> table_one_indices();

}  // namespace vpower
