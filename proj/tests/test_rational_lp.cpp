#include "support.hpp"
#include "vpower/exact_lp.hpp"

#include <random>

using namespace vpower;

TEST_CASE("frac reduces and parse_rational accepts the three spellings") {
    CHECK(frac(6, 8) == Q(3, 4));
    CHECK(to_string(frac(6, 8)) == "3/4");
    CHECK(parse_rational("3/4") == Q(3, 4));
    CHECK(parse_rational("0.25") == Q(1, 4));
    CHECK(parse_rational("-1.5") == Q(-3, 2));
    CHECK(parse_rational("\"7\"") == 7);
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
    CHECK_THROWS(frac(1, 0));
}

TEST_CASE("binomials, factorials and distances") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(3, 5) == 0);
    CHECK(factorial(5) == 120);
    CHECK(power(Q(2, 3), 3) == Q(8, 27));
    CHECK(l1_distance(qs({1, 0}), qs({Q(1, 2), Q(1, 2)})) == 1);
    CHECK(linf_distance(qs({1, 0, 0}), qs({Q(1, 2), Q(1, 4), Q(1, 4)})) == Q(1, 2));
    CHECK(join(qs({Q(3, 4), Q(1, 8)})) == "3/4 1/8");
}

TEST_CASE("a greater-or-equal row with zero right-hand side is respected") {
    lp::Problem p;
    int a = p.add_var(), y = p.add_var();
    p.add_row({{a, 1}}, lp::Sense::Eq, 1);
    p.add_row({{y, 1}, {a, -1}}, lp::Sense::Ge, 0);
    p.objective = {{y, 1}};
    auto r = lp::solve(p);
    REQUIRE(r.status == lp::Status::Optimal);
    CHECK(r.objective == 1);
}

TEST_CASE("infeasible, unbounded and free-variable problems") {
    lp::Problem p;
    int x = p.add_var();
    p.add_row({{x, 1}}, lp::Sense::Ge, 2);
    p.add_row({{x, 1}}, lp::Sense::Le, 1);
    CHECK(lp::solve(p).status == lp::Status::Infeasible);

    lp::Problem u;
    int v = u.add_var();
    u.objective = {{v, -1}};
    CHECK(lp::solve(u).status == lp::Status::Unbounded);

    lp::Problem f;
    int z = f.add_var(std::nullopt, std::nullopt);
    f.add_row({{z, 1}}, lp::Sense::Ge, -5);
    f.objective = {{z, 1}};
    auto r = lp::solve(f);
    REQUIRE(r.status == lp::Status::Optimal);
    CHECK(r.objective == -5);
}

// Two-variable problems against vertex enumeration.
TEST_CASE("random two-variable problems match vertex enumeration") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-4, 4), rhs(-6, 10);
    for (int trial = 0; trial < 300; ++trial) {
        struct R {
            Q a, b, c;
            lp::Sense s;
        };
        std::vector<R> rows;
        int m = 2 + trial % 4;
        for (int i = 0; i < m; ++i) {
            int s = coef(rng) % 3;
            rows.push_back({coef(rng), coef(rng), rhs(rng), s == 0 ? lp::Sense::Le : s == 1 ? lp::Sense::Ge : lp::Sense::Le});
        }
        // box keeps the problem bounded
        rows.push_back({1, 0, 8, lp::Sense::Le});
        rows.push_back({0, 1, 8, lp::Sense::Le});
        Q ox = coef(rng), oy = coef(rng);

        lp::Problem p;
        int x = p.add_var(), y = p.add_var();
        for (auto& r : rows) p.add_row({{x, r.a}, {y, r.b}}, r.s, r.c);
        p.objective = {{x, ox}, {y, oy}};
        auto res = lp::solve(p);

        std::vector<R> all = rows;
        all.push_back({1, 0, 0, lp::Sense::Ge});
        all.push_back({0, 1, 0, lp::Sense::Ge});
        auto feasible = [&](const Q& vx, const Q& vy) {
            for (auto& r : all) {
                Q lhs = r.a * vx + r.b * vy;
                if (r.s == lp::Sense::Le && lhs > r.c) return false;
                if (r.s == lp::Sense::Ge && lhs < r.c) return false;
            }
            return true;
        };
        std::optional<Q> best;
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i + 1; j < all.size(); ++j) {
                Q det = all[i].a * all[j].b - all[i].b * all[j].a;
                if (det == 0) continue;
                Q vx = (all[i].c * all[j].b - all[i].b * all[j].c) / det;
                Q vy = (all[i].a * all[j].c - all[i].c * all[j].a) / det;
                if (!feasible(vx, vy)) continue;
                Q val = ox * vx + oy * vy;
                if (!best || val < *best) best = val;
            }
        if (!best) {
            CHECK(res.status == lp::Status::Infeasible);
        } else {
            REQUIRE(res.status == lp::Status::Optimal);
            CHECK(res.objective == *best);
            CHECK(feasible(res.x[0], res.x[1]));
        }
    }
}
