#include "support.hpp"
#include "vpower/bounds.hpp"

using namespace vpower;

namespace {

std::vector<Q> sigma_3_80(int n) {
    std::vector<Q> s{Q(29, 40), Q(9, 40)};
    for (int i = 2; i < n; ++i) s.push_back(Q(1, 20 * (n - 2)));
    return s;
}

}  // namespace

TEST_CASE("quality function table") {
    auto bz = quality(IndexId(IndexTag::Bz), 2);
    CHECK(bz.f1 == 1);
    CHECK(bz.f2 == 3);
    auto pgi = quality(IndexId(IndexTag::PGI), 3);
    CHECK(pgi.f1 == 4);
    CHECK(pgi.f2 == 8);
    for (int k = 1; k <= 6; ++k) {
        auto t = quality(IndexId(IndexTag::Tijs), k);
        CHECK(t.f1 == 0);
        CHECK(t.f2 == 1);
    }
    auto sv = bounded_semivalue_quality(Q(1, 6), Q(1, 3), 2);
    CHECK(sv.f1 == 2);
    CHECK(sv.f2 == 6);
    CHECK(quality(IndexId::pbinomial(Q(1, 2)), 4).f2 == 5);
}

TEST_CASE("indices without tabled quality functions are rejected") {
    for (IndexTag t : {IndexTag::JS, IndexTag::KB, IndexTag::PHI, IndexTag::Chow, IndexTag::SSI}) {
        CHECK_FALSE(has_quality_functions(IndexId(t)));
        CHECK_THROWS_AS(quality(IndexId(t), 2), std::invalid_argument);
    }
    CHECK_THROWS_AS(quality(IndexId::pbinomial(Q(1, 3)), 2), std::invalid_argument);
}

TEST_CASE("tight epsilon") {
    Game dictator = parse_game_text("[1;1,0,0]");
    CHECK(epsilon_of(dictator, 1, IndexId(IndexTag::Bz)) == 0);
    CHECK(epsilon_of(parse_game_text("[3;2,1,1]"), 1, IndexId(IndexTag::Bz)) == Q(2, 5));
    CHECK(epsilon_of(parse_game_text("[2;1,1,1]"), 2, IndexId(IndexTag::Bz)) == Q(1, 3));
    CHECK_THROWS_AS(epsilon_of(parse_game_text("[2;1,1,1]"), 1, IndexId(IndexTag::Tijs)), NormalizationOfZero);
}

TEST_CASE("main theorem on [3;2,1,1] with k = 1") {
    Game g = parse_game_text("[3;2,1,1]");
    auto r = main_theorem_bounds(g, 1, IndexId(IndexTag::Bz));
    CHECK(r.absolute_bound == 1);
    auto before = oracle::banzhaf(table_of(g), 3);
    auto after = oracle::banzhaf(oracle::k_rounding(table_of(g), 3, 1), 3);
    CHECK(r.actual_absolute == l1_distance(before, after));
    CHECK(r.actual_absolute == Q(3, 4));
    CHECK(r.normalized_checked);
    CHECK(r.actual_normalized == l1_distance(oracle::normalized(before), oracle::normalized(after)));
    CHECK(r.ok());
}

TEST_CASE("dictator has nothing to shorten") {
    for (int k = 1; k <= 3; ++k) {
        auto r = main_theorem_bounds(parse_game_text("[1;1,0,0,0]"), k, IndexId(IndexTag::Bz));
        CHECK(r.epsilon == 0);
        CHECK(r.absolute_bound == 0);
        CHECK(r.actual_absolute == 0);
        CHECK(r.ok());
    }
}

TEST_CASE("smallest distance reachable by two-voter games") {
    IndexId bz(IndexTag::Bz);
    CHECK(lambda_min(qs({Q(3, 4), Q(1, 4)}), GameClass::Simple, 2, bz).value == Q(1, 2));
    CHECK(lambda_min(qs({Q(1, 2), Q(1, 2)}), GameClass::Simple, 2, bz).value == 0);
    CHECK(lambda_min(qs({Q(29, 40), Q(9, 40)}), GameClass::Simple, 2, bz).value == Q(1, 2));
}

TEST_CASE("approximation lower bounds") {
    IndexId bz(IndexTag::Bz);
    for (int n = 3; n <= 6; ++n) {
        std::vector<Q> s(n, 0);
        s[0] = Q(3, 4);
        s[1] = Q(1, 4);
        auto lb = approximation_lower_bound(s, 2, bz, GameClass::Simple);
        REQUIRE(lb.emitted);
        CHECK(lb.corollary_path);
        CHECK(lb.value == Q(1, 8));
    }
    for (int n = 4; n <= 6; ++n) {
        auto lb = approximation_lower_bound(sigma_3_80(n), 2, bz, GameClass::Simple);
        REQUIRE(lb.emitted);
        CHECK(lb.alpha == Q(1, 20));
        CHECK(lb.lambda == Q(1, 2));
        CHECK(lb.value == Q(3, 80));
    }
    auto zero = approximation_lower_bound(qs({Q(1, 2), Q(1, 2), 0, 0}), 2, bz, GameClass::Simple);
    REQUIRE(zero.emitted);
    CHECK(zero.value == 0);
    auto js = approximation_lower_bound(qs({Q(3, 4), Q(1, 4), 0}), 2, IndexId(IndexTag::JS), GameClass::Simple);
    CHECK_FALSE(js.emitted);
    CHECK_FALSE(js.reason.empty());
}

TEST_CASE("the 1/8 bound holds against the true optimum at four voters") {
    IndexId bz(IndexTag::Bz, true);
    Q best = 10;
    std::vector<Q> s{Q(3, 4), Q(1, 4), 0, 0};
    for (const auto& g : enumerate_games(4, GameClass::Simple)) {
        auto v = oracle::normalized(oracle::banzhaf(table_of(g), 4));
        best = std::min(best, l1_distance(v, s));
    }
    CHECK(best >= Q(1, 8));
}

TEST_CASE("bound sweeps at small n") {
    auto bz = empirical_bound_sweep(4, IndexId(IndexTag::Bz), GameClass::Simple);
    CHECK(bz.games == 166);
    CHECK(bz.violations == 0);
    CHECK(bz.local_violations == 0);
    CHECK(bz.max_absolute_ratio <= 1);
    auto pgi = empirical_bound_sweep(3, IndexId(IndexTag::PGI), GameClass::Simple);
    CHECK(pgi.games == 18);
    CHECK(pgi.violations == 0);
    auto tijs = empirical_bound_sweep(3, IndexId(IndexTag::Tijs), GameClass::Simple);
    CHECK(tijs.violations == 0);
    CHECK(tijs.local_violations == 0);
}

TEST_CASE("k-up-rounding leaves the head Tijs values alone") {
    IndexId tijs(IndexTag::Tijs);
    for (const auto& g : enumerate_games(4, GameClass::Simple))
        for (int k = 1; k < 4; ++k) {
            auto a = power_index(g, tijs).values;
            auto b = power_index(k_up_rounding(g, k), tijs).values;
            for (int i = 0; i < k; ++i) CHECK(a[i] == b[i]);
        }
}

TEST_CASE("the new normalized bound is tighter than the old one") {
    for (int k = 1; k <= 6; ++k) CHECK(original_bound_is_looser(k, 50));
}

TEST_CASE("small tail share keeps the shortening non-constant") {
    for (const auto& id : table_one_indices()) {
        if (id.tag == IndexTag::Tijs || id.tag == IndexTag::Rae) continue;
        for (int n = 2; n <= 4; ++n) {
            auto r = constant_guard_check(n, id);
            CAPTURE(id.name());
            CHECK(r.violations == 0);
        }
    }
}

TEST_CASE("(1/2,k)-rounding probe stays within the Banzhaf coefficient") {
    auto r = pk_conjecture_probe(Q(1, 2), 4, 2);
    CHECK(r.measured > 0);
    CHECK(r.max_ratio <= 6);
    auto third = pk_conjecture_probe(Q(1, 3), 4, 2);
    CHECK(third.measured > 0);
}
