#include "vpower/bounds.hpp"

#include <json.hpp>

#include <algorithm>

namespace vpower {

namespace {

Q qk(int k) { return Q(k); }

std::vector<Q> semivalue_weights_for(const IndexId& id, int n) {
    if (id.semivalue_p.empty()) return shapley_semivalue_weights(n);
    if (static_cast<int>(id.semivalue_p.size()) != n)
        throw std::invalid_argument("semivalue weights do not match the voter count");
    return id.semivalue_p;
}

// The index as evaluated on an n-voter game; explicit semivalue weights are kept only for their n.
std::vector<Q> absolute(const Game& g, const IndexId& id) {
    return absolute_values(g, id.with_normalized(false));
}

Q tail_sum(const std::vector<Q>& v, int k) {
    Q s = 0;
    for (std::size_t i = k; i < v.size(); ++i) s += v[i];
    return s;
}

bool in_domain(const Game& g, const IndexId& id) {
    return !requires_fixed_order(id.tag) || is_constant(g) || is_complete(g);
}

}  // namespace

bool has_quality_functions(const IndexId& id) {
    switch (id.tag) {
        case IndexTag::Tijs: case IndexTag::Bz: case IndexTag::Swing: case IndexTag::Semivalue:
        case IndexTag::ColPrev: case IndexTag::ColIni: case IndexTag::Rae: case IndexTag::PGI:
        case IndexTag::DP: case IndexTag::Shift: case IndexTag::SDP:
            return true;
        case IndexTag::PBinomial:
            return id.binomial_p == Q(1, 2);
        default:
            return false;
    }
}

QualityFunctions bounded_semivalue_quality(const Q& c1, const Q& c2, int k) {
    if (c1 <= 0 || c2 < c1) throw std::invalid_argument("bounded semivalue needs 0 < c1 <= c2");
    Q r = c2 / c1;
    return {r, r * (k + 1)};
}

QualityFunctions quality(const IndexId& id, int k, int n) {
    if (k < 1) throw std::invalid_argument("quality functions need k >= 1");
    const Q K = qk(k);
    switch (id.tag) {
        case IndexTag::Tijs: return {0, 1};
        case IndexTag::Bz:
        case IndexTag::Swing:
        case IndexTag::Rae:
            return {1, K + 1};
        case IndexTag::PBinomial:
            if (id.binomial_p != Q(1, 2))
                throw std::invalid_argument("no quality functions for p-binomial semivalues with p != 1/2 under k-rounding");
            return {1, K + 1};
        case IndexTag::Semivalue: {
            if (n < 1) throw std::invalid_argument("semivalue quality functions need the voter count");
            auto p = semivalue_weights_for(id, n);
            auto [lo, hi] = std::minmax_element(p.begin(), p.end());
            if (*lo <= 0) throw std::invalid_argument("semivalue is not bounded away from zero");
            return bounded_semivalue_quality(*lo, *hi, k);
        }
        case IndexTag::ColPrev:
        case IndexTag::ColIni:
            return {2, 2 * K + 1};
        case IndexTag::PGI: return {K + 1, (K + 1) * (K + 5) / 4};
        case IndexTag::DP: return {K + 2, (K * K + 6 * K + 9) / 4};
        case IndexTag::Shift: return {(K + 3) / 2, (K * K + 3 * K + 2) / 2};
        case IndexTag::SDP: return {2 * K + 1, 2 * K * K + K + 1};
        case IndexTag::JS:
            throw std::invalid_argument("the Johnston index admits no quality functions");
        case IndexTag::KB: case IndexTag::PHI: case IndexTag::Chow:
            throw std::invalid_argument(tag_name(id.tag) + " has no tabled quality functions");
        case IndexTag::SSI:
            throw std::invalid_argument("ssi has no tabled quality functions; use the semivalue form");
    }
    throw std::invalid_argument("unknown index");
}

ShorteningId default_shortening(const IndexId& id, int k) {
    ShorteningId s;
    s.k = k;
    s.tag = id.tag == IndexTag::Tijs ? ShorteningTag::KUpRounding : ShorteningTag::KRounding;
    return s;
}

Q epsilon_of(const Game& g, int k, const IndexId& id) {
    auto v = absolute(g, id);
    Q total = sum(v);
    if (total == 0) throw NormalizationOfZero();
    return tail_sum(v, k) / total;
}

MainTheoremReport main_theorem_bounds(const Game& g, int k, const IndexId& id) {
    const int n = g.n();
    auto qf = quality(id, k, n);
    MainTheoremReport r;
    r.shortened = shorten(g, default_shortening(id, k));

    auto before = absolute(g, id);
    r.total = sum(before);
    r.epsilon = r.total == 0 ? Q(0) : tail_sum(before, k) / r.total;

    std::vector<Q> after;
    bool after_defined = in_domain(r.shortened, id);
    if (after_defined) after = absolute(r.shortened, id);

    r.absolute_bound = (k * qf.f1 + 1) * r.epsilon * r.total;
    if (!after_defined) {
        r.absolute_ok = false;
        r.normalized_skip = "shortened game outside the index domain";
        return r;
    }
    r.actual_absolute = l1_distance(after, before);
    r.absolute_ok = r.actual_absolute <= r.absolute_bound;

    // Local approximability, with the tight epsilon.
    r.head_allowance = qf.f1 * r.epsilon * r.total;
    r.total_allowance = qf.f2 * r.epsilon * r.total;
    r.head_change_max = 0;
    for (int i = 0; i < k; ++i) r.head_change_max = std::max(r.head_change_max, Q(abs(Q(after[i] - before[i]))));
    r.total_change = abs(Q(sum(after) - r.total));
    r.local_ok = r.head_change_max <= r.head_allowance && r.total_change <= r.total_allowance;

    Q after_total = sum(after);
    if (r.total == 0) {
        r.normalized_skip = "zero total";
    } else if (is_constant(r.shortened)) {
        r.normalized_skip = "constant shortening";
    } else if (after_total == 0) {
        r.normalized_skip = "shortening has zero total";
    } else {
        r.normalized_checked = true;
        r.normalized_bound = (qf.f2 + k * qf.f1 + 1) * r.epsilon;
        r.actual_normalized = l1_distance(normalize(after), normalize(before));
        r.normalized_ok = r.actual_normalized <= r.normalized_bound;
    }
    return r;
}

LambdaResult lambda_min(const std::vector<Q>& sigma_prefix, GameClass cls, int k, const IndexId& id) {
    if (static_cast<int>(sigma_prefix.size()) != k) throw std::invalid_argument("lambda_min: prefix length must be k");
    if (k > enumeration_limit(cls)) throw GameError("lambda_min: enumeration limit exceeded");
    LambdaResult r;
    bool found = false;
    IndexId local = id.with_normalized(false);
    if (local.tag == IndexTag::Semivalue && !local.semivalue_p.empty()) local.semivalue_p.clear();
    for (const Game& g : enumerate_games(k, cls)) {
        if (!in_domain(g, id)) continue;
        auto v = absolute_values(g, local);
        if (sum(v) == 0) {
            ++r.skipped_zero;
            continue;
        }
        ++r.considered;
        Q d = l1_distance(sigma_prefix, normalize(v));
        if (!found || d < r.value) {
            r.value = d;
            r.witness = g;
            found = true;
        }
    }
    if (!found) throw std::runtime_error("lambda_min: no game with nonzero power");
    return r;
}

LowerBound approximation_lower_bound(const std::vector<Q>& sigma, int k, const IndexId& id, GameClass cls) {
    LowerBound b;
    const int n = static_cast<int>(sigma.size());
    for (const auto& s : sigma)
        if (s < 0) throw std::invalid_argument("sigma has a negative entry");
    if (sum(sigma) != 1) throw std::invalid_argument("sigma must sum to 1");
    if (k < 1 || k >= n) throw std::invalid_argument("approximation bound needs 1 <= k < n");

    switch (id.tag) {
        case IndexTag::Bz: case IndexTag::Swing: case IndexTag::ColPrev: case IndexTag::ColIni:
        case IndexTag::PGI: case IndexTag::DP: case IndexTag::Shift: case IndexTag::SDP:
            break;
        default:
            b.reason = tag_name(id.tag) + " is not positive with null voters and a removable normalized form";
            return b;
    }
    if (!expected_property(id.tag, Property::Positive) || !expected_property(id.tag, Property::NullVoter)) {
        b.reason = tag_name(id.tag) + " fails positivity or the null voter property";
        return b;
    }

    auto qf = quality(id, k, n);
    b.f1 = qf.f1;
    b.f2 = qf.f2;
    std::vector<Q> prefix(sigma.begin(), sigma.begin() + k);
    b.lambda = lambda_min(prefix, cls, k, id).value;
    b.alpha = 1 - sum(prefix);
    b.beta = qf.f2 + k * qf.f1 + 1;
    b.corollary_path = b.alpha == 0 && k > 1;

    if (b.corollary_path) {
        b.value = std::min(Q(2 / qf.f2), Q(2 * b.lambda / (qf.f2 + k * qf.f1 + 3)));
        b.emitted = true;
        return b;
    }
    Q pre = std::min(Q((b.lambda + b.alpha) / (b.beta + 2)), Q(1 / qf.f2));
    if (pre < b.alpha) {
        b.reason = "precondition min{(L+a)/(b+2), 1/f2} >= a fails";
        return b;
    }
    b.value = std::min(Q(2 * (1 / qf.f2 - b.alpha)),
                       Q(2 / (b.beta + 2) * b.lambda - (2 * b.beta + 2) / (b.beta + 2) * b.alpha));
    b.emitted = true;
    return b;
}

SweepReport empirical_bound_sweep(int n, const IndexId& id, GameClass cls, bool check_local, std::ostream* lines) {
    SweepReport rep;
    rep.max_absolute_ratio = 0;
    rep.max_normalized_ratio = 0;
    for (const Game& g : enumerate_games(n, cls)) {
        if (!in_domain(g, id)) continue;
        ++rep.games;
        for (int k = 1; k < n; ++k) {
            auto r = main_theorem_bounds(g, k, id);
            ++rep.checks;
            bool bad = !r.absolute_ok || !r.normalized_ok;
            if (bad) ++rep.violations;
            if (check_local && !r.local_ok) ++rep.local_violations;
            if ((bad || (check_local && !r.local_ok)) && rep.failures.size() < 10)
                rep.failures.push_back(game_to_json(g) + " k=" + std::to_string(k));
            Q ratio_abs = r.absolute_bound == 0 ? Q(r.actual_absolute == 0 ? 0 : 1000000) : Q(r.actual_absolute / r.absolute_bound);
            rep.max_absolute_ratio = std::max(rep.max_absolute_ratio, ratio_abs);
            Q ratio_norm = 0;
            if (r.normalized_checked) {
                ++rep.normalized_checks;
                ratio_norm = r.normalized_bound == 0 ? Q(r.actual_normalized == 0 ? 0 : 1000000)
                                                     : Q(r.actual_normalized / r.normalized_bound);
                rep.max_normalized_ratio = std::max(rep.max_normalized_ratio, ratio_norm);
            }
            if (lines) {
                nlohmann::json j;
                j["game"] = nlohmann::json::parse(game_to_json(g));
                j["k"] = k;
                j["index"] = id.name();
                j["epsilon"] = to_string(r.epsilon);
                j["bound"] = to_string(r.absolute_bound);
                j["actual"] = to_string(r.actual_absolute);
                j["ratio"] = to_string(ratio_abs);
                if (r.normalized_checked) {
                    j["normalized_bound"] = to_string(r.normalized_bound);
                    j["normalized_actual"] = to_string(r.actual_normalized);
                    j["normalized_ratio"] = to_string(ratio_norm);
                }
                *lines << j.dump() << '\n';
            }
        }
    }
    return rep;
}

ProbeReport pk_conjecture_probe(const Q& p, int n, int k) {
    ProbeReport rep;
    rep.max_ratio = 0;
    IndexId id = IndexId::pbinomial(p);
    for (const Game& g : enumerate_games(n, GameClass::Simple)) {
        ++rep.games;
        auto before = absolute_values(g, id);
        Q total = sum(before);
        if (total == 0) continue;
        Q eps = tail_sum(before, k) / total;
        if (eps == 0) continue;
        Game h = pk_rounding(g, p, k);
        if (is_constant(h)) continue;
        auto after = absolute_values(h, id);
        if (sum(after) == 0) continue;
        ++rep.measured;
        Q ratio = l1_distance(normalize(after), normalize(before)) / eps;
        if (ratio > rep.max_ratio) {
            rep.max_ratio = ratio;
            rep.argmax = g;
        }
    }
    return rep;
}

bool original_bound_is_looser(int k, int steps) {
    for (int j = 1; j < steps; ++j) {
        Q e = frac(j, Z(steps) * (k + 1));
        Q original = (2 * k + 1) * e / (1 - (k + 1) * e) + e;
        if (!(original > (2 * k + 2) * e)) return false;
    }
    return true;
}

GuardReport constant_guard_check(int n, const IndexId& id) {
    GuardReport rep;
    for (bool value : {false, true}) {
        auto v = absolute(Game::constant(n, value), id);
        if (sum(v) != 0) rep.hypothesis_holds = false;
        for (const auto& x : v)
            if (x != 0) rep.hypothesis_holds = false;
    }
    if (!rep.hypothesis_holds) return rep;
    for (const Game& g : enumerate_games(n, GameClass::Simple)) {
        if (!in_domain(g, id)) continue;
        auto v = absolute(g, id);
        Q total = sum(v);
        if (total == 0) continue;
        for (int k = 1; k < n; ++k) {
            auto qf = quality(id, k, n);
            Q eps = tail_sum(v, k) / total;
            if (eps * qf.f2 >= 1) continue;
            ++rep.applicable;
            if (is_constant(shorten(g, default_shortening(id, k)))) ++rep.violations;
        }
    }
    return rep;
}

std::vector<IndexId> table_one_indices() {
    return {IndexId(IndexTag::Tijs), IndexId(IndexTag::Bz), IndexId(IndexTag::Swing),
            IndexId::semivalue({}), IndexId(IndexTag::ColPrev), IndexId(IndexTag::ColIni),
            IndexId(IndexTag::Rae), IndexId(IndexTag::PGI), IndexId(IndexTag::DP),
            IndexId(IndexTag::Shift), IndexId(IndexTag::SDP)};
}

}  // namespace vpower
