#include "support.hpp"
#include "vpower/inverse.hpp"

#include <json.hpp>

using namespace vpower;

namespace {

InverseInstance instance(std::vector<Q> sigma, GameClass cls = GameClass::Simple, Norm norm = Norm::L1) {
    InverseInstance inst;
    inst.sigma = std::move(sigma);
    inst.index = IndexId(IndexTag::Bz, true);
    inst.cls = cls;
    inst.norm = norm;
    return inst;
}

Q brute_best(const std::vector<Q>& sigma) {
    const int n = static_cast<int>(sigma.size());
    Q best = 10;
    for (const auto& w : oracle::simple_games(n)) {
        auto v = oracle::normalized(oracle::banzhaf(w, n));
        best = std::min(best, l1_distance(v, sigma));
    }
    return best;
}

std::vector<Q> sigma_two_ones(int n) {
    std::vector<Q> s(n, Q(2, 2 * n - 1));
    s.back() = Q(1, 2 * n - 1);
    return s;
}

}  // namespace

TEST_CASE("exact attainment") {
    auto sol = exhaustive_inverse(instance(qs({Q(1, 2), Q(1, 2), 0})));
    CHECK(sol.best_deviation == 0);
    Game target = parse_game_text("[2;1,1,0]");
    CHECK(std::find(sol.witnesses.begin(), sol.witnesses.end(), target) != sol.witnesses.end());
    CHECK(sol.lower == 0);
    CHECK(sol.upper == 0);
}

TEST_CASE("exhaustive optimum agrees with brute force") {
    std::vector<std::vector<Q>> targets{
        {Q(3, 4), Q(1, 4), 0, 0}, {Q(1, 2), Q(1, 3), Q(1, 6)}, {Q(2, 5), Q(2, 5), Q(1, 5), 0}, {1, 0, 0}};
    for (const auto& s : targets) {
        auto sol = exhaustive_inverse(instance(s));
        CHECK(sol.best_deviation == brute_best(s));
        for (const auto& g : sol.witnesses)
            CHECK(deviation(power_index(g, IndexId(IndexTag::Bz, true)).values, s, Norm::L1) == sol.best_deviation);
    }
}

TEST_CASE("optimum respects the 1/8 lower bound") {
    for (int n = 3; n <= 5; ++n) {
        std::vector<Q> s(n, 0);
        s[0] = Q(3, 4);
        s[1] = Q(1, 4);
        auto sol = exhaustive_inverse(instance(s));
        CHECK(sol.best_deviation >= Q(1, 8));
    }
    std::vector<Q> s4{Q(3, 4), Q(1, 4), 0, 0};
    CHECK(exhaustive_inverse(instance(s4)).best_deviation == Q(2, 5));
}

TEST_CASE("threads do not change the answer") {
    auto inst = instance(qs({Q(3, 4), Q(1, 8), Q(1, 16), Q(1, 16)}));
    auto a = exhaustive_inverse(inst, {1});
    auto b = exhaustive_inverse(inst, {3});
    CHECK(a.best_deviation == b.best_deviation);
    CHECK(a.witnesses == b.witnesses);
    CHECK(solution_to_json(a) == solution_to_json(b));
}

TEST_CASE("class filters") {
    auto inst = instance(qs({Q(1, 3), Q(1, 3), Q(1, 3)}));
    CHECK(candidate_games(inst).size() == 18);
    inst.proper = true;
    for (const auto& g : candidate_games(inst)) CHECK(is_proper(g));
    inst.strong = true;
    for (const auto& g : candidate_games(inst)) CHECK((is_proper(g) && is_strong(g)));
    auto w = instance(qs({Q(1, 3), Q(1, 3), Q(1, 3)}), GameClass::Weighted);
    for (const auto& g : candidate_games(w)) CHECK(is_weighted(g).has_value());
    auto sh = instance(qs({Q(1, 3), Q(1, 3), Q(1, 3)}));
    sh.index = IndexId(IndexTag::Shift, true);
    for (const auto& g : candidate_games(sh)) CHECK(is_complete(g));
}

TEST_CASE("zero-total games are skipped") {
    auto inst = instance(qs({Q(1, 2), Q(1, 2), 0}));
    inst.index = IndexId(IndexTag::Tijs, true);
    auto sol = exhaustive_inverse(inst);
    CHECK(sol.skipped_zero > 0);
    CHECK(sol.considered == 18);
    CHECK(sol.skipped_zero < sol.considered);
}

TEST_CASE("deviation norms") {
    CHECK(deviation(qs({1, 0}), qs({Q(1, 2), Q(1, 2)}), Norm::L1) == 1);
    CHECK(deviation(qs({1, 0}), qs({Q(1, 2), Q(1, 2)}), Norm::Linf) == Q(1, 2));
}

TEST_CASE("bisection brackets the exhaustive optimum") {
    auto zero = instance(qs({Q(1, 2), Q(1, 2), 0}));
    auto z = bisection_normalized(zero, Q(1, 64), exhaustive_oracle(zero));
    CHECK(z.upper == 0);
    CHECK(z.best_deviation == 0);
    const Q tol(1, 1024);
    for (Norm norm : {Norm::L1, Norm::Linf}) {
        auto inst = instance(qs({Q(3, 4), Q(1, 4), 0, 0}), GameClass::Simple, norm);
        auto exact = exhaustive_inverse(inst).best_deviation;
        auto b = bisection_normalized(inst, tol, exhaustive_oracle(inst));
        CHECK(b.lower <= exact);
        CHECK(exact <= b.upper);
        CHECK(b.upper - b.lower <= tol);
        REQUIRE_FALSE(b.witnesses.empty());
        CHECK(deviation(power_index(b.witnesses.front(), inst.index).values, inst.sigma, norm) <= b.upper);
    }
}

TEST_CASE("weights as power") {
    for (int n = 3; n <= 5; ++n) {
        auto s = sigma_two_ones(n);
        auto base = weights_as_power_baseline(s, IndexId(IndexTag::Bz, true));
        Q floor = Q(2, 2 * n - 1) * Q(n - 1, n);
        for (const auto& [q, d] : base.sweep) CHECK(d >= floor);
        CHECK(base.best_deviation == floor);
        // the full class can only do at least as well as its weighted members
        auto full = exhaustive_inverse(instance(s, GameClass::Weighted));
        CHECK(full.best_deviation <= base.best_deviation);
    }
    CHECK(weights_as_power_baseline(sigma_two_ones(4), IndexId(IndexTag::Bz, true)).best_deviation == Q(3, 14));
    auto half = weights_as_power_baseline(qs({Q(1, 2), Q(1, 2)}), IndexId(IndexTag::SSI, true));
    CHECK(half.best_deviation == 0);
    auto pos = weights_as_power_baseline(qs({Q(3, 4), Q(1, 4), 0}), IndexId(IndexTag::Bz, true));
    CHECK(pos.best_deviation > 0);
}

TEST_CASE("solution JSON") {
    auto sol = exhaustive_inverse(instance(qs({Q(1, 2), Q(1, 2), 0})));
    auto j = nlohmann::json::parse(solution_to_json(sol));
    CHECK(j["best_deviation"] == "0");
    CHECK(j["method"] == "exhaustive");
    CHECK(j["witnesses"].size() == sol.witnesses.size());
}
