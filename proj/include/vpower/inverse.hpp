#pragma once

#include "vpower/ilp.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace vpower {

enum class InverseMethod { Exhaustive, Bisection, External };
std::string to_string(InverseMethod m);

struct InverseSolution {
    Q best_deviation;
    std::vector<Game> witnesses;
    InverseMethod method = InverseMethod::Exhaustive;
    // Bisection bracket; equal to best_deviation on both ends for the exhaustive path.
    Q lower;
    Q upper;
    std::size_t considered = 0;
    std::size_t skipped_zero = 0;
    std::size_t oracle_calls = 0;
};

std::string solution_to_json(const InverseSolution& sol);

Q deviation(const std::vector<Q>& p, const std::vector<Q>& sigma, Norm norm);

// Games of the instance's class on n voters, with the proper/strong filters and,
// for Shift and SDP, only games complete under the fixed order.
std::vector<Game> candidate_games(const InverseInstance& inst);

struct ExhaustiveOptions {
    int threads = 1;
};

InverseSolution exhaustive_inverse(const InverseInstance& inst, const ExhaustiveOptions& options = {});

struct BaselineResult {
    Q best_deviation;
    Q best_quota;
    std::vector<std::pair<Q, Q>> sweep;  // (quota, deviation) in increasing quota
};

// L1 distance between the normalized index of [q; sigma] and sigma over the quotas given,
// by default every distinct positive w(S).
BaselineResult weights_as_power_baseline(const std::vector<Q>& sigma, const IndexId& index,
                                         const std::vector<Q>& q_grid = {});

// Returns a game whose deviation is at most alpha, if one exists.
using FeasibilityOracle = std::function<std::optional<Game>(const Q& alpha)>;

FeasibilityOracle exhaustive_oracle(const InverseInstance& inst, const ExhaustiveOptions& options = {});

// Start interval [0,2] for L1 and [0,1] for Linf unless `upper` is given.
InverseSolution bisection_normalized(const InverseInstance& inst, const Q& tol,
                                     const FeasibilityOracle& oracle,
                                     std::optional<Q> upper = std::nullopt);

}  // namespace vpower
