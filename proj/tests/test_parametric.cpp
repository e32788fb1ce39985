#include "support.hpp"
#include "vpower/parametric.hpp"
#include "vpower/shortening.hpp"

#include <cmath>

using namespace vpower;

namespace {

std::vector<Q> psi_oracle(const oracle::Table& w, int n, const Q& p) {
    std::vector<Q> v(n, 0);
    for (unsigned s = 0; s < w.size(); ++s)
        for (int i = 0; i < n; ++i) {
            if (oracle::has(s, i) || w[s] || !w[s | (1u << i)]) continue;
            Q term = 1;
            for (int j = 0; j < n; ++j)
                if (j != i) term *= oracle::has(s, j) ? p : 1 - p;
            v[i] += term;
        }
    return v;
}

const Variant kVariants[] = {Variant::Original, Variant::AllLosing, Variant::AllWinning};

}  // namespace

TEST_CASE("family construction") {
    Game g = build_game({2, 1, 2, 3});
    CHECK(g.n() == 5);
    auto mwc = minimal_winning(g);
    CHECK(mwc.size() == 4);
    CHECK(std::find(mwc.begin(), mwc.end(), bit(1)) != mwc.end());
    CHECK(std::find(mwc.begin(), mwc.end(), bit(2) | bit(3) | bit(5)) != mwc.end());
    Game m0 = build_game({2, 1, 0, 1});
    CHECK(m0 == parse_game_text("[1;1,1,0]"));
    CHECK_THROWS(build_game({2, 2, 1, 1}));
    CHECK_THROWS(build_game({2, 1, 5, 3}));
}

TEST_CASE("weighted representations") {
    auto a = weighted_repr({3, 2, 2, 4});
    CHECK(a.quota == 12);
    CHECK(a.weights == qs({7, 5, 5, 1, 1, 1, 1}));
    auto b = weighted_repr({3, 2, 5, 4});
    CHECK(b.quota == 5);
    CHECK(b.weights == qs({3, 2, 2, 0, 0, 0, 0}));
    auto c = weighted_repr({3, 2, 0, 4});
    CHECK(c.quota == 2);
    CHECK(c.weights == qs({1, 1, 1, 0, 0, 0, 0}));
    for (int k = 2; k <= 6; ++k)
        for (int l = 1; l < k; ++l)
            for (int n = 1; k + n <= 9; ++n)
                for (int m = 0; m <= n + 1; ++m) {
                    ParametricParams p{k, l, m, n};
                    CHECK(from_weighted(weighted_repr(p)) == build_game(p));
                }
}

TEST_CASE("k-rounding of the family") {
    CHECK(rounding_case({2, 1, 2, 3}) == Variant::AllLosing);
    CHECK(rounding_case({2, 1, 1, 3}) == Variant::AllWinning);
    CHECK(rounding_case({2, 1, 0, 3}) == Variant::AllWinning);
    for (int k = 2; k <= 4; ++k)
        for (int l = 1; l < k; ++l)
            for (int n = 1; k + n <= 8; ++n)
                for (int m = 0; m <= n + 1; ++m) {
                    ParametricParams p{k, l, m, n};
                    CHECK(k_rounding(build_game(p), k) == build_game(with_variant(p, rounding_case(p))));
                }
}

TEST_CASE("T is the only head with a proper reduced game") {
    for (int n = 1; n <= 4; ++n)
        for (int m = 1; m <= n; ++m) {
            ParametricParams p{3, 2, m, n};
            Game g = build_game(p);
            for (Coalition a = 0; a < 8; ++a) {
                bool proper = reduced_game(g, a, 3).kind == ReducedGame::Kind::Proper;
                CHECK(proper == (a == p.t_coalition()));
            }
        }
}

TEST_CASE("closed forms against brute force") {
    const Q ps[] = {Q(1, 3), Q(1, 2), Q(2, 3)};
    int cases = 0;
    for (int k = 2; k <= 7; ++k)
        for (int l = 1; l < k; ++l)
            for (int n = 1; k + n <= 9; ++n)
                for (int m = 1; m <= n; ++m)
                    for (Variant v : kVariants) {
                        ParametricParams p = with_variant({k, l, m, n}, v);
                        ParametricParams base{k, l, m, n};
                        Game g = build_game(p);
                        auto w = table_of(g);
                        int voters = k + n;
                        for (const Q& pv : ps)
                            CHECK(psi_p_closed_form(base, v, pv).expand(base) == psi_oracle(w, voters, pv));
                        CHECK(ssi_closed_form(base, v).expand(base) == oracle::ssi_orderings(w, voters));
                        if (l == 1) CHECK(johnston_closed_form(base, v).expand(base) == oracle::johnston(w, voters));
                        ++cases;
                    }
    CHECK(cases > 300);
}

TEST_CASE("Johnston values of small instances") {
    ParametricParams p{2, 1, 2, 3};
    CHECK(johnston_closed_form(p, Variant::Original) == TypedTriple{12, 2, Q(2, 3)});
    CHECK(johnston_closed_form(p, Variant::AllWinning) == TypedTriple{8, 8, 0});
    auto g3 = johnston_closed_form({3, 1, 3, 5}, Variant::AllLosing);
    CHECK(g3.head == 64);
    CHECK(g3.tail_head == 0);
    CHECK(g3.ocean == 0);
}

TEST_CASE("SSI values of the collapsed variants") {
    for (int n = 1; n <= 4; ++n) {
        auto t = ssi_closed_form({3, 1, 1, n}, Variant::AllLosing);
        CHECK(t.head == Q(1, 2));
        CHECK(t.tail_head == 0);
        CHECK(t.ocean == 0);
        CHECK(ssi_closed_form({3, 1, 1, n}, Variant::AllWinning).total({3, 1, 1, n}) == 1);
    }
}

TEST_CASE("psi-p identities") {
    ParametricParams p{3, 2, 2, 4};
    const Q pv(1, 3);
    auto d = psi_p_deltas(p, pv);
    CHECK(d.to_losing.tail_head == d.to_losing.head * (1 - pv) / pv);
    for (int n = 1; n <= 8; ++n)
        for (int m = 1; m <= n; ++m) {
            ParametricParams q{3, 2, m, n};
            for (const Q& v : {Q(1, 3), Q(1, 2), Q(2, 3)}) {
                auto dd = psi_p_deltas(q, v);
                CHECK(dd.xi == n * dd.to_losing.ocean);
                CHECK(dd.xi == n * dd.to_winning.ocean);
                CHECK(psi_p_closed_form(q, Variant::AllWinning, v).ocean == 0);
            }
        }
}

TEST_CASE("collapse groups equal types") {
    ParametricParams p{2, 1, 2, 3};
    auto v = johnston_closed_form(p, Variant::Original).expand(p);
    CHECK(collapse(p, v) == johnston_closed_form(p, Variant::Original));
    v[4] += 1;
    CHECK_FALSE(collapse(p, v).has_value());
}

TEST_CASE("exp enclosures bracket the exponential") {
    for (const Q& x : {Q(-5, 2), Q(-1), Q(0), Q(1, 3), Q(2)}) {
        auto e = exp_enclosure(x, 25);
        CHECK(e.lo <= e.hi);
        double d = std::exp(x.get_d());
        CHECK(e.lo.get_d() <= d * (1 + 1e-12));
        CHECK(e.hi.get_d() >= d * (1 - 1e-12));
        CHECK((e.hi - e.lo) < Q(1, 1000000));
    }
    CHECK(exp_enclosure(0, 5).lo == 1);
}

TEST_CASE("tail lemmas") {
    auto a = tail_lemmas_check(8, 4, Q(1, 4));
    CHECK(a.binomial_bound == Verdict::Holds);
    CHECK(a.ok());
    auto b = tail_lemmas_check(20, 11, Q(1, 4));
    CHECK(b.upper_tail == Verdict::Holds);
    CHECK(b.ok());
    auto c = tail_lemmas_check(9, 4, 0);
    CHECK(c.product_bound == Verdict::Holds);
    for (int n = 2; n <= 30; ++n)
        for (int m = 1; m <= n; ++m) CHECK(tail_lemmas_check(n, m, Q(1, 8)).ok());
}

TEST_CASE("Johnston negative result at finite size") {
    auto small = johnston_negative_check(2, 3);
    CHECK(small.absolute_winning_ok);
    CHECK(small.absolute_losing_ok);
    auto two = johnston_negative_check(2, 100);
    CHECK(two.normalized_ok);
    CHECK(two.normalized_to_winning >= Q(1, 10));
    CHECK(two.normalized_to_losing >= Q(1, 10));
    CHECK(two.xi_share_ok);
    auto three = johnston_negative_check(3, 100);
    CHECK(three.normalized_ok);
    CHECK(three.normalized_to_winning >= Q(1, 15));
    CHECK(three.normalized_to_losing >= Q(1, 15));
}

TEST_CASE("p-binomial negative witnesses") {
    auto up = pbinomial_negative_witness(4, 2, Q(2, 3), {11, 21, 31});
    CHECK(up.asserted);
    CHECK(up.ratio_increasing);
    CHECK(up.xi_decreasing);
    CHECK(up.total_change_ok);
    auto down = pbinomial_negative_witness(4, 2, Q(1, 3), {10, 20, 30});
    CHECK(down.asserted);
    CHECK(down.ratio_increasing);
    CHECK(down.xi_decreasing);
    CHECK(down.total_change_ok);
    auto half = pbinomial_negative_witness(4, 2, Q(1, 2), {11, 21});
    CHECK_FALSE(half.asserted);
}
