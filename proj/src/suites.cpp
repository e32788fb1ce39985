#include "vpower/suites.hpp"

#include "vpower/bounds.hpp"
#include "vpower/ilp.hpp"
#include "vpower/inverse.hpp"
#include "vpower/parametric.hpp"
#include "vpower/shortening.hpp"

#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace vpower {

namespace {

struct Ctx {
    SuiteResult& r;
    const SuiteOptions& opt;

    void check(bool ok, const std::string& what) {
        ++r.checks;
        if (!ok) {
            r.ok = false;
            if (r.failures.size() < 20) r.failures.push_back(what);
        }
    }
    void note(const std::string& line) {
        if (opt.log) *opt.log << "  " << line << "\n";
    }
    int n_or(int fallback) const { return opt.max_n > 0 ? opt.max_n : fallback; }
};

std::vector<Q> values(const Game& g, IndexId id) { return power_index(g, id).values; }

void examples(Ctx& c) {
    Game a = parse_game_text("[2;2,1,1]");
    Game b = parse_game_text("[3;2,1,1]");
    c.check(values(a, IndexId(IndexTag::JS)) == std::vector<Q>{3, Q(1, 2), Q(1, 2)}, "JS([2;2,1,1])");
    c.check(values(a, IndexId(IndexTag::JS, true)) == std::vector<Q>{Q(3, 4), Q(1, 8), Q(1, 8)},
            "normalized JS([2;2,1,1])");
    std::vector<Q> third{Q(2, 3), Q(1, 6), Q(1, 6)};
    c.check(values(b, IndexId(IndexTag::JS, true)) == third, "normalized JS([3;2,1,1])");
    c.check(values(b, IndexId(IndexTag::SSI)) == third, "SSI([3;2,1,1])");
}

void identities(Ctx& c) {
    for (int n = 3; n <= c.n_or(4); ++n) {
        for (const Game& g : enumerate_games(n, GameClass::Simple)) {
            auto bz = values(g, IndexId(IndexTag::Bz));
            auto rae = values(g, IndexId(IndexTag::Rae));
            bool rae_ok = true;
            for (int i = 0; i < n; ++i) rae_ok = rae_ok && rae[i] == Q(1, 2) + bz[i] / 2;
            c.check(rae_ok, "Rae = 1/2 + Bz/2 at " + game_to_json(g));
            auto nbz = values(g, IndexId(IndexTag::Bz, true));
            c.check(nbz == values(g, IndexId(IndexTag::ColPrev, true)) &&
                        nbz == values(g, IndexId(IndexTag::ColIni, true)) &&
                        nbz == values(g, IndexId(IndexTag::Swing, true)),
                    "normalized Bz/ColPrev/ColIni/Swing at " + game_to_json(g));
            auto nchow = values(g, IndexId(IndexTag::Chow, true));
            c.check(nchow == values(g, IndexId(IndexTag::KB, true)) && nchow == values(g, IndexId(IndexTag::PHI, true)),
                    "normalized Chow/KB/PHI at " + game_to_json(g));
            auto swing = values(g, IndexId(IndexTag::Swing));
            auto chow = values(g, IndexId(IndexTag::Chow));
            Q w = static_cast<long>(g.count_winning());
            bool eta_ok = true;
            for (int i = 0; i < n; ++i) eta_ok = eta_ok && swing[i] == 2 * chow[i] - w;
            c.check(eta_ok, "eta = 2|W_i| - |W| at " + game_to_json(g));
            c.check(values(g, IndexId::pbinomial(Q(1, 2))) == bz, "PBinomial(1/2) = Bz at " + game_to_json(g));
            c.check(values(g, IndexId::semivalue(shapley_semivalue_weights(n))) == values(g, IndexId(IndexTag::SSI)),
                    "SSI-weight semivalue = SSI at " + game_to_json(g));
        }
    }
}

void sweep(Ctx& c) {
    const int top = c.n_or(5);
    for (const auto& id : table_one_indices()) {
        for (int n = 2; n <= top; ++n) {
            auto rep = empirical_bound_sweep(n, id, GameClass::Simple, n <= 4);
            c.check(rep.violations == 0, id.name() + " bound violations at n=" + std::to_string(n));
            c.check(rep.local_violations == 0, id.name() + " local violations at n=" + std::to_string(n));
            for (const auto& f : rep.failures) c.note(id.name() + ": " + f);
            c.note(id.name() + " n=" + std::to_string(n) + " games=" + std::to_string(rep.games) +
                   " checks=" + std::to_string(rep.checks));
        }
    }
}

std::vector<Q> first_sigma(int n) {
    std::vector<Q> s(n, Q(0));
    s[0] = Q(3, 4);
    s[1] = Q(1, 4);
    return s;
}

std::vector<Q> second_sigma(int n) {
    std::vector<Q> s(n, frac(Z(1), Z(20 * (n - 2))));
    s[0] = Q(29, 40);
    s[1] = Q(9, 40);
    return s;
}

void lower_bound(Ctx& c) {
    const IndexId bz(IndexTag::Bz, true);
    for (int n : {4, 5}) {
        auto a = approximation_lower_bound(first_sigma(n), 2, bz, GameClass::Simple);
        c.check(a.emitted && a.value == Q(1, 8), "bound 1/8 at n=" + std::to_string(n) + ", got " + to_string(a.value));
        auto b = approximation_lower_bound(second_sigma(n), 2, bz, GameClass::Simple);
        c.check(b.emitted && b.value == Q(3, 80), "bound 3/80 at n=" + std::to_string(n) + ", got " + to_string(b.value));
        InverseInstance inst{first_sigma(n), bz, GameClass::Simple, false, false, Norm::L1};
        auto sol = exhaustive_inverse(inst, {c.opt.threads});
        c.check(sol.best_deviation >= Q(1, 8), "exhaustive optimum below 1/8 at n=" + std::to_string(n));
        c.note("n=" + std::to_string(n) + " exhaustive optimum " + to_string(sol.best_deviation));
    }
}

void parametric(Ctx& c) {
    const int budget = c.n_or(9);
    std::size_t instances = 0;
    for (int k = 2; k < budget; ++k)
        for (int l = 1; l < k; ++l)
            for (int n = 1; k + n <= budget; ++n)
                for (int m = 0; m <= n + 1; ++m) {
                    ParametricParams p{k, l, m, n};
                    for (Variant v : {Variant::Original, Variant::AllLosing, Variant::AllWinning}) {
                        Game g = build_game(with_variant(p, v));
                        for (Q pv : {Q(1, 3), Q(1, 2), Q(2, 3)}) {
                            auto brute = collapse(p, values(g, IndexId::pbinomial(pv)));
                            c.check(brute && *brute == psi_p_closed_form(p, v, pv), "Psi^p at " + p.to_string());
                        }
                        auto ssi = collapse(p, values(g, IndexId(IndexTag::SSI)));
                        c.check(ssi && *ssi == ssi_closed_form(p, v), "SSI at " + p.to_string());
                        if (l == 1) {
                            auto js = collapse(p, values(g, IndexId(IndexTag::JS)));
                            c.check(js && *js == johnston_closed_form(p, v), "JS at " + p.to_string());
                        }
                        ++instances;
                    }
                }
    c.note(std::to_string(instances) + " (k,l,m,n,variant) instances");
}

void negative(Ctx& c) {
    for (int k : {2, 3, 4})
        for (int nt = 1; nt <= 30; ++nt) {
            auto r = johnston_negative_check(k, nt);
            c.check(r.absolute_winning_ok && r.absolute_losing_ok,
                    "JS distance inequality at k=" + std::to_string(k) + " n=" + std::to_string(nt));
        }
    for (int k : {2, 3}) {
        auto r = johnston_negative_check(k, 100);
        c.check(r.normalized_ok, "normalized JS distance >= 1/(5k) at k=" + std::to_string(k));
    }
    for (Q p : {Q(1, 3), Q(2, 3)}) {
        auto odd = pbinomial_negative_witness(2, 1, p, {11, 21, 31});
        auto even = pbinomial_negative_witness(2, 1, p, {10, 20, 30});
        bool ok = (odd.ratio_increasing && odd.xi_decreasing) || (even.ratio_increasing && even.xi_decreasing);
        c.check(ok, "Psi^p witness growth at p=" + to_string(p));
    }
}

void preservation(Ctx& c) {
    for (GameClass cls : {GameClass::Simple, GameClass::Complete, GameClass::Weighted})
        for (int n = 2; n <= c.n_or(4); ++n)
            for (const Game& g : enumerate_games(n, cls))
                for (int k = 1; k < n; ++k) {
                    auto r = check_preservation(g, k);
                    if (r.constant_output) continue;
                    std::string lost;
                    for (auto [ok, label] : {std::pair{r.boolean_ok, "boolean"}, {r.simple_ok, "simple"},
                                             {r.complete_ok, "complete"}, {r.fixed_complete_ok, "fixed-order complete"},
                                             {r.weighted_ok, "weighted"}, {r.proper_ok, "proper"}, {r.strong_ok, "strong"}})
                        if (!ok) lost += std::string(lost.empty() ? "" : ",") + label;
                    c.check(lost.empty(), lost + " lost at " + game_to_json(g) + " k=" + std::to_string(k));
                }
}

std::vector<std::vector<Q>> sigma_battery(int n) {
    std::vector<std::vector<Q>> out;
    auto pad = [n](std::vector<Q> head) {
        head.resize(n, Q(0));
        return head;
    };
    out.push_back(pad({Q(1, 2), Q(1, 2)}));
    out.push_back(pad({Q(3, 4), Q(1, 4)}));
    out.push_back(pad({1}));
    out.push_back(std::vector<Q>(n, frac(Z(1), Z(n))));
    std::vector<Q> lin(n);
    for (int i = 0; i < n; ++i) lin[i] = frac(Z(2 * (n - i)), Z(n * (n + 1)));
    out.push_back(lin);
    out.push_back(pad({Q(2, 3), Q(1, 6), Q(1, 6)}));
    out.push_back(pad({Q(3, 5), Q(1, 5), Q(1, 5)}));
    std::vector<Q> tilt(n, frac(Z(1), Z(2 * (n - 1))));
    tilt[0] = Q(1, 2);
    out.push_back(tilt);
    out.push_back(pad({Q(9, 10), Q(1, 10)}));
    out.push_back(pad({Q(2, 5), Q(2, 5), Q(1, 5)}));
    return out;
}

void ilp_suite(Ctx& c) {
    const int top = std::min(c.n_or(3), 3);
    for (GameClass cls : {GameClass::Boolean, GameClass::Simple, GameClass::Complete, GameClass::Weighted})
        for (int n = 1; n <= top; ++n) {
            auto rep = ilp::verify_model_semantics(n, cls, ilp::ilp_indices());
            c.check(rep.class_mismatches == 0, to_string(cls) + " class rows at n=" + std::to_string(n));
            c.check(rep.index_mismatches == 0, to_string(cls) + " index blocks at n=" + std::to_string(n));
            for (const auto& f : rep.failures) c.note(f);
            c.note(to_string(cls) + " n=" + std::to_string(n) + " feasible=" + std::to_string(rep.feasible) + "/" +
                   std::to_string(rep.assignments) + " index checks=" + std::to_string(rep.index_checks));
        }
    if (top >= 3) {
        auto rep = ilp::verify_model_semantics(3, GameClass::Simple, {});
        c.check(rep.feasible == 18, "18 simple games at n=3");
    }
    for (const auto& id : ilp::ilp_indices()) {
        InverseInstance inst{std::vector<Q>(3, Q(1, 3)), id, GameClass::Weighted, true, true, Norm::L1};
        auto m = ilp::build_ilp(inst);
        auto text = ilp::emit_lp(m);
        c.check(ilp::emit_lp(ilp::parse_lp(text)) == text, "LP round trip for " + id.name());
    }
    const IndexId bz(IndexTag::Bz, true);
    const Q tol(1, 1024);
    for (int n : {3, 4})
        for (const auto& sigma : sigma_battery(n)) {
            InverseInstance inst{sigma, bz, GameClass::Simple, false, false, Norm::L1};
            auto exact = exhaustive_inverse(inst, {c.opt.threads});
            auto bis = bisection_normalized(inst, tol, exhaustive_oracle(inst, {c.opt.threads}));
            bool ok = bis.lower <= exact.best_deviation && exact.best_deviation <= bis.upper &&
                      bis.upper - bis.lower <= tol && bis.best_deviation <= bis.upper &&
                      bis.best_deviation >= exact.best_deviation;
            c.check(ok, "bisection bracket at n=" + std::to_string(n) + " sigma=" + join(sigma, ","));
        }
}

void incremental(Ctx& c) {
    for (int n = 2; n <= c.n_or(4); ++n)
        for (const Game& g : enumerate_games(n, GameClass::Simple))
            for (Coalition t : minimal_winning(g)) {
                if (t == g.full()) continue;
                Game h = remove_mwc(g, t);
                for (auto tag : all_index_tags()) {
                    if (!supports_incremental(tag)) continue;
                    IndexId id = tag == IndexTag::PBinomial ? IndexId::pbinomial(Q(1, 3)) : IndexId(tag);
                    auto updated = update_on_mwc_removal(g, t, id, power_index(g, id));
                    c.check(updated.values == values(h, id), id.name() + " update at " + game_to_json(g) + " T=" +
                                                                 std::to_string(t));
                }
            }
}

void baseline(Ctx& c) {
    for (int n = 3; n <= c.n_or(5); ++n) {
        std::vector<Q> sigma(n, frac(Z(2), Z(2 * n - 1)));
        sigma[n - 1] = frac(Z(1), Z(2 * n - 1));
        Q floor = frac(Z(2), Z(2 * n - 1)) * frac(Z(n - 1), Z(n));
        auto res = weights_as_power_baseline(sigma, IndexId(IndexTag::Bz));
        for (const auto& [q, d] : res.sweep)
            c.check(d >= floor, "baseline inequality at n=" + std::to_string(n) + " q=" + to_string(q));
        c.note("n=" + std::to_string(n) + " best " + to_string(res.best_deviation) + " floor " + to_string(floor));
    }
}

void properties(Ctx& c) {
    const int n = c.n_or(3);
    for (auto tag : all_index_tags())
        for (Property p : {Property::Symmetric, Property::Positive, Property::Efficient, Property::NullVoter,
                           Property::NullVoterRemovable}) {
            auto r = check_property(IndexId(tag), p, n);
            bool want = expected_property(tag, p);
            // the default semivalue weights are the Shapley-Shubik ones
            if (tag == IndexTag::Semivalue && p == Property::Efficient) want = true;
            c.check(r.holds == want, tag_name(tag) + " " + to_string(p));
        }
}

const std::map<std::string, std::function<void(Ctx&)>>& registry() {
    static const std::map<std::string, std::function<void(Ctx&)>> r{
        {"examples", examples},     {"identities", identities},     {"sweep", sweep},
        {"lower-bound", lower_bound}, {"parametric", parametric},   {"negative", negative},
        {"preservation", preservation}, {"ilp", ilp_suite},         {"incremental", incremental},
        {"baseline", baseline},     {"properties", properties},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"examples", "identities", "sweep", "lower-bound",
                                                "parametric", "negative", "preservation", "ilp",
                                                "incremental", "baseline", "properties"};
    return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
    auto it = registry().find(name);
    if (it == registry().end()) throw std::invalid_argument("unknown suite: " + name);
    SuiteResult r;
    r.name = name;
    Ctx c{r, options};
    try {
        it->second(c);
    } catch (const std::exception& e) {
        r.ok = false;
        r.failures.push_back(std::string("exception: ") + e.what());
    }
    std::ostringstream s;
    s << name << ": " << (r.ok ? "ok" : "FAILED") << " (" << r.checks << " checks, " << r.failures.size()
      << " failures shown)";
    r.summary = s.str();
    return r;
}

}  // namespace vpower
