#include "vpower/parametric.hpp"

#include <algorithm>
#include <stdexcept>

namespace vpower {

namespace {

Q pow_or_one(const Q& base, int e) {
    if (e < 0) throw std::invalid_argument("negative exponent");
    return power(base, static_cast<unsigned>(e));
}

Q q(const Z& z) { return Q(z); }

Z pow2(int e) { return Z(1) << e; }

// Sum_{j in [lo, hi]} C(n,j) p^j (1-p)^(n-j).
Q binomial_mass(int n, const Q& p, int lo, int hi) {
    Q s = 0;
    for (int j = std::max(lo, 0); j <= std::min(hi, n); ++j)
        s += q(binomial(n, j)) * pow_or_one(p, j) * pow_or_one(1 - p, n - j);
    return s;
}

// a >= b * sqrt(r) for a rational r >= 0 and b >= 0, decided exactly.
bool at_least_scaled_sqrt(const Q& a, const Q& b, const Q& r) {
    if (a < 0) return false;
    return a * a >= b * b * r;
}

}  // namespace

void ParametricParams::validate() const {
    if (l < 1 || l > k - 1) throw std::invalid_argument("parametric family needs 1 <= l <= k-1");
    if (n < 1) throw std::invalid_argument("parametric family needs n >= 1");
    if (m < 0 || m > n + 1) throw std::invalid_argument("parametric family needs 0 <= m <= n+1");
}

Coalition ParametricParams::t_coalition() const {
    Coalition t = 0;
    for (int i = k - l + 1; i <= k; ++i) t |= bit(i);
    return t;
}

std::string ParametricParams::to_string() const {
    return "k=" + std::to_string(k) + " l=" + std::to_string(l) + " m=" + std::to_string(m) + " n=" + std::to_string(n);
}

std::string to_string(Variant v) {
    switch (v) {
        case Variant::Original: return "original";
        case Variant::AllLosing: return "all-losing";
        case Variant::AllWinning: return "all-winning";
    }
    return "?";
}

ParametricParams with_variant(const ParametricParams& p, Variant v) {
    ParametricParams out = p;
    if (v == Variant::AllLosing) out.m = p.n + 1;
    if (v == Variant::AllWinning) out.m = 0;
    return out;
}

Game build_game(const ParametricParams& p) {
    p.validate();
    if (p.voters() > 20) throw std::invalid_argument("parametric game too large for a table");
    const Coalition head_mask = (Coalition{1} << p.k) - 1;
    const Coalition t = p.t_coalition();
    return Game::from_predicate(p.voters(), [&](Coalition s) {
        Coalition h = s & head_mask;
        int size = cardinality(h);
        if (size > p.l) return true;
        if (size == p.l && h != t) return true;
        return (h & t) == t && cardinality(s >> p.k) >= p.m;
    });
}

WeightedRepr weighted_repr(const ParametricParams& p) {
    p.validate();
    WeightedRepr r;
    r.weights.assign(p.voters(), Q(0));
    auto fill = [&](const Q& a, const Q& b, const Q& ocean) {
        for (int i = 0; i < p.k - p.l; ++i) r.weights[i] = a;
        for (int i = p.k - p.l; i < p.k; ++i) r.weights[i] = b;
        for (int i = p.k; i < p.voters(); ++i) r.weights[i] = ocean;
    };
    const int l = p.l, m = p.m, n = p.n;
    if (m == n + 1) {
        r.quota = l * l + 1;
        fill(l + 1, l, 0);
    } else if (m == 0) {
        r.quota = l;
        fill(1, 1, 0);
    } else {
        Q b = (l - 2) * m + n + 1;
        Q a = (l - 1) * m + n + 1;
        r.quota = l * b + m;
        fill(a, b, 1);
    }
    return r;
}

Variant rounding_case(const ParametricParams& p) {
    p.validate();
    return p.m <= p.n / 2 ? Variant::AllWinning : Variant::AllLosing;
}

std::vector<Q> TypedTriple::expand(const ParametricParams& p) const {
    std::vector<Q> v;
    v.reserve(p.voters());
    for (int i = 0; i < p.k - p.l; ++i) v.push_back(head);
    for (int i = 0; i < p.l; ++i) v.push_back(tail_head);
    for (int i = 0; i < p.n; ++i) v.push_back(ocean);
    return v;
}

Q TypedTriple::total(const ParametricParams& p) const {
    return (p.k - p.l) * head + p.l * tail_head + p.n * ocean;
}

TypedTriple psi_p_closed_form(const ParametricParams& params, Variant which, const Q& pval) {
    params.validate();
    if (pval <= 0 || pval >= 1) throw std::invalid_argument("p must lie in (0,1)");
    const ParametricParams p = with_variant(params, which);
    const int k = p.k, l = p.l, m = p.m, n = p.n;
    const Q one_minus = 1 - pval;
    const Q below = binomial_mass(n, pval, 0, m - 1);
    const Q above = binomial_mass(n, pval, m, n);
    const Q c = q(binomial(k - 1, l - 1));
    TypedTriple t;
    t.head = c * pow_or_one(pval, l - 1) * pow_or_one(one_minus, k - l) +
             pow_or_one(pval, l) * pow_or_one(one_minus, k - l - 1) * below;
    t.tail_head = pow_or_one(pval, l - 1) * pow_or_one(one_minus, k - l) * (c - 1 + above);
    t.ocean = 0;
    if (m >= 1 && m <= n)
        t.ocean = pow_or_one(pval, l) * pow_or_one(one_minus, k - l) * q(binomial(n - 1, m - 1)) *
                  pow_or_one(pval, m - 1) * pow_or_one(one_minus, n - m);
    return t;
}

TypedTriple johnston_closed_form(const ParametricParams& params, Variant which) {
    params.validate();
    if (params.l != 1) throw std::invalid_argument("the Johnston closed form needs l = 1");
    const ParametricParams p = with_variant(params, which);
    const int m = p.m, n = p.n;
    TypedTriple t;
    Z below = 0, above = 0;
    for (int j = 0; j < m && j <= n; ++j) below += binomial(n, j);
    for (int j = m + 1; j <= n; ++j) above += binomial(n, j);
    t.head = q(pow2(n) + below);
    t.tail_head = q(above) + frac(binomial(n, m), m + 1);
    t.ocean = m >= 1 && m <= n ? frac(binomial(n - 1, m - 1), m + 1) : Q(0);
    return t;
}

TypedTriple ssi_closed_form(const ParametricParams& params, Variant which) {
    params.validate();
    const ParametricParams p = with_variant(params, which);
    const int k = p.k, l = p.l, m = p.m, n = p.n;
    const Z all = factorial(n + k);
    Z r = 0;
    for (int j = 0; j < m && j <= n; ++j) r += binomial(n, j) * factorial(l + j) * factorial(n + k - l - j - 1);
    TypedTriple t;
    t.head = frac(1, k) + frac(r, all);
    t.ocean = m >= 1 && m <= n ? frac(binomial(n - 1, m - 1) * factorial(l + m - 1) * factorial(n + k - m - l), all)
                               : Q(0);
    t.tail_head = (1 - (k - l) * t.head - n * t.ocean) / l;
    return t;
}

TypedDeltas deltas(const ParametricParams& p, const TypedTriple& original, const TypedTriple& losing,
                   const TypedTriple& winning) {
    auto diff = [](const TypedTriple& a, const TypedTriple& b) {
        return TypedTriple{abs(Q(a.head - b.head)), abs(Q(a.tail_head - b.tail_head)), abs(Q(a.ocean - b.ocean))};
    };
    TypedDeltas d;
    d.to_losing = diff(original, losing);
    d.to_winning = diff(original, winning);
    d.xi = p.n * original.ocean;
    return d;
}

TypedDeltas psi_p_deltas(const ParametricParams& p, const Q& pval) {
    return deltas(p, psi_p_closed_form(p, Variant::Original, pval), psi_p_closed_form(p, Variant::AllLosing, pval),
                  psi_p_closed_form(p, Variant::AllWinning, pval));
}

TypedDeltas johnston_deltas(const ParametricParams& p) {
    return deltas(p, johnston_closed_form(p, Variant::Original), johnston_closed_form(p, Variant::AllLosing),
                  johnston_closed_form(p, Variant::AllWinning));
}

std::optional<TypedTriple> collapse(const ParametricParams& p, const std::vector<Q>& v) {
    if (static_cast<int>(v.size()) != p.voters()) return std::nullopt;
    auto same = [&](int lo, int hi) {
        for (int i = lo + 1; i < hi; ++i)
            if (v[i] != v[lo]) return false;
        return true;
    };
    const int a = p.k - p.l, b = p.k, c = p.voters();
    if (!same(0, a) || !same(a, b) || !same(b, c)) return std::nullopt;
    return TypedTriple{v[0], v[a], v[b]};
}

Enclosure exp_enclosure(const Q& x, int terms) {
    if (x < 0) {
        Enclosure e = exp_enclosure(-x, terms);
        return {1 / e.hi, 1 / e.lo};
    }
    // Need terms + 2 > x so the geometric tail bound applies.
    Z xc = x.get_num() / x.get_den() + 2;
    if (terms < xc.get_si()) terms = static_cast<int>(xc.get_si());
    Q partial = 0, term = 1;
    for (int j = 0; j <= terms; ++j) {
        partial += term;
        term = term * x / (j + 1);
    }
    // term is now x^(terms+1)/(terms+1)!; later terms shrink by at most x/(terms+2).
    Q ratio = x / (terms + 2);
    Q tail = term / (1 - ratio);
    return {partial, partial + tail};
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Fails: return "fails";
        case Verdict::Undecided: return "undecided";
        case Verdict::NotApplicable: return "n/a";
    }
    return "?";
}

bool TailLemmasReport::ok() const {
    for (auto v : {binomial_bound, upper_tail, lower_tail, product_bound})
        if (v == Verdict::Fails || v == Verdict::Undecided) return false;
    return true;
}

namespace {

// Decides mass >= 1 - exp(-x).
Verdict tail_versus_exp(const Q& mass, const Q& x) {
    const Q gap = 1 - mass;
    for (int terms = 8; terms <= 1024; terms *= 2) {
        Enclosure e = exp_enclosure(-x, terms);
        if (e.lo >= gap) return Verdict::Holds;
        if (e.hi < gap) return Verdict::Fails;
    }
    return Verdict::Undecided;
}

}  // namespace

TailLemmasReport tail_lemmas_check(int n, int m, const Q& delta) {
    if (n < 1) throw std::invalid_argument("tail lemmas need n >= 1");
    TailLemmasReport r;
    if (m >= 1 && m <= n) {
        Z c = binomial(n - 1, m - 1);
        r.binomial_bound = c * c * n <= (Z(1) << (2 * (n - 1))) ? Verdict::Holds : Verdict::Fails;
    }
    const int m_up = (n + 2) / 2;  // ceil((n+1)/2)
    const int m_down = n / 2;
    const Q half = Q(1, 2);
    if (delta > 0 && delta < half) {
        if (m == m_up) r.upper_tail = tail_versus_exp(binomial_mass(n, half + delta, m, n), 2 * n * delta * delta);
        if (m == m_down)
            r.lower_tail = tail_versus_exp(binomial_mass(n, half - delta, 0, m - 1), 2 * n * delta * delta - 2 * delta);
    }
    if (delta >= 0 && delta < half && (m == m_up || m == m_down) && m >= 1) {
        // Squared form of p^(m-1)(1-p)^(n-m) <= 4 (1-4d^2)^((n-3)/2) / 2^(n-1).
        Q base = 1 - 4 * delta * delta;
        Q rhs = 16 / Q(Z(1) << (2 * (n - 1)));
        rhs *= n >= 3 ? power(base, n - 3) : 1 / power(base, 3 - n);
        bool holds = true;
        for (const Q& pv : {Q(half + delta), Q(half - delta)}) {
            Q lhs = pow_or_one(pv, m - 1) * pow_or_one(1 - pv, n - m);
            if (lhs * lhs > rhs) holds = false;
        }
        r.product_bound = holds ? Verdict::Holds : Verdict::Fails;
    }
    return r;
}

JohnstonReport johnston_negative_check(int k, int ntilde) {
    if (k < 2 || ntilde < 1) throw std::invalid_argument("johnston check needs k >= 2 and ntilde >= 1");
    JohnstonReport r;
    r.k = k;
    r.ntilde = ntilde;
    ParametricParams p{k, 1, ntilde + 1, 2 * ntilde + 1};
    auto g = johnston_closed_form(p, Variant::Original);
    auto win = johnston_closed_form(p, Variant::AllWinning);
    auto lose = johnston_closed_form(p, Variant::AllLosing);
    r.xi = p.n * g.ocean;
    auto dist = [&](const TypedTriple& a, const TypedTriple& b) -> Q {
        return (k - 1) * abs(Q(a.head - b.head)) + abs(Q(a.tail_head - b.tail_head)) + p.n * abs(Q(a.ocean - b.ocean));
    };
    r.distance_to_winning = dist(g, win);
    r.distance_to_losing = dist(g, lose);
    const Q half_nt = frac(ntilde, 2);
    r.absolute_winning_ok = at_least_scaled_sqrt(r.distance_to_winning - r.xi, k * r.xi, half_nt);
    r.absolute_losing_ok = at_least_scaled_sqrt(r.distance_to_losing - r.xi, (k - 1) * r.xi, half_nt);

    auto scaled = [&](const TypedTriple& t) {
        Q s = t.total(p);
        return TypedTriple{t.head / s, t.tail_head / s, t.ocean / s};
    };
    r.normalized_to_winning = dist(scaled(g), scaled(win));
    r.normalized_to_losing = dist(scaled(g), scaled(lose));
    Q floor_value = frac(1, 5 * k);
    r.normalized_ok = r.normalized_to_winning >= floor_value && r.normalized_to_losing >= floor_value;

    Q share = r.xi / g.total(p);
    Q limit = Q(2) / (Q((3 * k - 3) * (3 * k - 3)) * ntilde);
    r.xi_share_ok = share * share <= limit;
    return r;
}

WitnessReport pbinomial_negative_witness(int k, int l, const Q& p, const std::vector<int>& n_list) {
    WitnessReport rep;
    const Q half = Q(1, 2);
    rep.asserted = p != half;
    for (int n : n_list) {
        WitnessRow row;
        row.n = n;
        row.m = p > half ? (n + 2) / 2 : n / 2;
        ParametricParams par{k, l, row.m, n};
        par.validate();
        auto g = psi_p_closed_form(par, Variant::Original, p);
        auto lose = psi_p_closed_form(par, Variant::AllLosing, p);
        auto win = psi_p_closed_form(par, Variant::AllWinning, p);
        row.xi = n * g.ocean;
        const TypedTriple& target = p > half ? lose : win;
        row.ratio = row.xi == 0 ? Q(0) : Q(abs(Q(g.head - target.head)) / row.xi);
        Q allowance = k * pow_or_one(p, l - 1) * pow_or_one(1 - p, k - l - 1) + row.xi;
        row.total_change_ok = abs(Q(g.total(par) - lose.total(par))) <= allowance &&
                              abs(Q(g.total(par) - win.total(par))) <= allowance;
        const TypedTriple& rounded = rounding_case(par) == Variant::AllLosing ? lose : win;
        Q eps = row.xi / g.total(par);
        row.normalized_ratio = eps == 0 ? Q(0)
                                        : Q(l1_distance(normalize(g.expand(par)), normalize(rounded.expand(par))) / eps);
        rep.rows.push_back(row);
    }
    rep.ratio_increasing = rep.xi_decreasing = rep.normalized_increasing = true;
    rep.total_change_ok = true;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        if (!rep.rows[i].total_change_ok) rep.total_change_ok = false;
        if (i == 0) continue;
        if (!(rep.rows[i].ratio > rep.rows[i - 1].ratio)) rep.ratio_increasing = false;
        if (!(rep.rows[i].xi < rep.rows[i - 1].xi)) rep.xi_decreasing = false;
        if (!(rep.rows[i].normalized_ratio > rep.rows[i - 1].normalized_ratio)) rep.normalized_increasing = false;
    }
    return rep;
}

}  // namespace vpower
