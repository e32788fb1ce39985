#include "vpower/inverse.hpp"

#include "vpower/shortening.hpp"

#include <json.hpp>

#include <algorithm>
#include <memory>
#include <set>
#include <stdexcept>
#include <thread>

namespace vpower {

std::string to_string(InverseMethod m) {
    switch (m) {
        case InverseMethod::Exhaustive: return "exhaustive";
        case InverseMethod::Bisection: return "bisection";
        case InverseMethod::External: return "external";
    }
    return "exhaustive";
}

std::string solution_to_json(const InverseSolution& sol) {
    nlohmann::ordered_json j;
    j["method"] = to_string(sol.method);
    j["best_deviation"] = to_string(sol.best_deviation);
    j["interval"] = {to_string(sol.lower), to_string(sol.upper)};
    j["considered"] = sol.considered;
    j["skipped_zero"] = sol.skipped_zero;
    if (sol.method == InverseMethod::Bisection) j["oracle_calls"] = sol.oracle_calls;
    auto& w = j["witnesses"] = nlohmann::ordered_json::array();
    for (const auto& g : sol.witnesses) w.push_back(nlohmann::ordered_json::parse(game_to_json(g)));
    return j.dump();
}

Q deviation(const std::vector<Q>& p, const std::vector<Q>& sigma, Norm norm) {
    return norm == Norm::L1 ? l1_distance(p, sigma) : linf_distance(p, sigma);
}

std::vector<Game> candidate_games(const InverseInstance& inst) {
    auto games = enumerate_games(inst.n(), inst.cls);
    std::erase_if(games, [&](const Game& g) {
        if (inst.proper && !is_proper(g)) return true;
        if (inst.strong && !is_strong(g)) return true;
        return requires_fixed_order(inst.index.tag) && !is_complete(g);
    });
    return games;
}

namespace {

struct Scored {
    std::optional<Q> dev;  // empty when normalization hit a zero vector
};

std::vector<Scored> score_all(const InverseInstance& inst, const std::vector<Game>& games, int threads) {
    std::vector<Scored> out(games.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            try {
                out[k].dev = deviation(power_index(games[k], inst.index).values, inst.sigma, inst.norm);
            } catch (const NormalizationOfZero&) {
            }
        }
    };
    threads = std::max(1, threads);
    if (threads == 1 || games.size() < 64) {
        work(0, games.size());
        return out;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (games.size() + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        std::size_t b = std::min(games.size(), t * chunk), e = std::min(games.size(), b + chunk);
        pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
    return out;
}

void check_instance(const InverseInstance& inst) {
    if (inst.sigma.empty()) throw std::invalid_argument("sigma must be nonempty");
    if (sum(inst.sigma) != 1) throw std::invalid_argument("sigma must sum to 1");
}

}  // namespace

InverseSolution exhaustive_inverse(const InverseInstance& inst, const ExhaustiveOptions& options) {
    check_instance(inst);
    auto games = candidate_games(inst);
    auto scored = score_all(inst, games, options.threads);
    InverseSolution sol;
    sol.method = InverseMethod::Exhaustive;
    sol.considered = games.size();
    bool any = false;
    for (std::size_t k = 0; k < games.size(); ++k) {
        if (!scored[k].dev) {
            ++sol.skipped_zero;
            continue;
        }
        const Q& d = *scored[k].dev;
        if (!any || d < sol.best_deviation) {
            any = true;
            sol.best_deviation = d;
            sol.witnesses.clear();
        }
        if (d == sol.best_deviation) sol.witnesses.push_back(games[k]);
    }
    if (!any) throw std::runtime_error("no game of the class has a defined index value");
    sol.lower = sol.upper = sol.best_deviation;
    return sol;
}

BaselineResult weights_as_power_baseline(const std::vector<Q>& sigma, const IndexId& index,
                                         const std::vector<Q>& q_grid) {
    const int n = static_cast<int>(sigma.size());
    if (n < 1 || n > 20) throw std::invalid_argument("baseline needs 1 <= n <= 20");
    std::vector<Q> quotas = q_grid;
    if (quotas.empty()) {
        std::set<Q> sums;
        for (Coalition s = 1; s <= full_coalition(n); ++s) {
            Q w = 0;
            for (int i : members(s)) w += sigma[i - 1];
            if (w > 0) sums.insert(w);
        }
        quotas.assign(sums.begin(), sums.end());
    }
    std::sort(quotas.begin(), quotas.end());
    IndexId id = index.with_normalized(true);
    BaselineResult res;
    bool any = false;
    for (const auto& q : quotas) {
        Game g = from_weighted(q, sigma);
        if (is_constant(g)) continue;
        Q d;
        try {
            d = l1_distance(power_index(g, id).values, sigma);
        } catch (const NormalizationOfZero&) {
            continue;
        }
        res.sweep.emplace_back(q, d);
        if (!any || d < res.best_deviation) {
            any = true;
            res.best_deviation = d;
            res.best_quota = q;
        }
    }
    if (!any) throw std::runtime_error("no quota gives a non-constant game");
    return res;
}

FeasibilityOracle exhaustive_oracle(const InverseInstance& inst, const ExhaustiveOptions& options) {
    check_instance(inst);
    auto games = candidate_games(inst);
    auto scored = score_all(inst, games, options.threads);
    // Sorted by deviation, ties by enumeration order.
    auto table = std::make_shared<std::vector<std::pair<Q, Game>>>();
    for (std::size_t k = 0; k < games.size(); ++k)
        if (scored[k].dev) table->emplace_back(*scored[k].dev, games[k]);
    std::stable_sort(table->begin(), table->end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return [table](const Q& alpha) -> std::optional<Game> {
        if (table->empty() || table->front().first > alpha) return std::nullopt;
        return table->front().second;
    };
}

InverseSolution bisection_normalized(const InverseInstance& inst, const Q& tol, const FeasibilityOracle& oracle,
                                     std::optional<Q> upper) {
    check_instance(inst);
    if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
    if (!upper && !inst.index.normalized)
        throw std::invalid_argument("absolute indices need an explicit upper end for the bisection");
    InverseSolution sol;
    sol.method = InverseMethod::Bisection;
    Q lo = 0;
    Q hi = upper ? *upper : (inst.norm == Norm::L1 ? Q(2) : Q(1));
    auto top = oracle(hi);
    ++sol.oracle_calls;
    if (!top) throw std::runtime_error("oracle reports no game within the initial upper end");
    Game best = *top;
    auto at_zero = oracle(lo);
    ++sol.oracle_calls;
    if (at_zero) {
        best = *at_zero;
        hi = lo;
    }
    while (hi - lo > tol) {
        Q mid = (lo + hi) / 2;
        auto hit = oracle(mid);
        ++sol.oracle_calls;
        if (hit) {
            hi = mid;
            best = *hit;
        } else {
            lo = mid;
        }
    }
    sol.lower = lo;
    sol.upper = hi;
    sol.witnesses = {best};
    sol.best_deviation = deviation(power_index(best, inst.index).values, inst.sigma, inst.norm);
    sol.considered = 0;
    return sol;
}

}  // namespace vpower
