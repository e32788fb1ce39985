#include "vpower/indices.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace vpower {

const std::vector<IndexTag>& all_index_tags() {
    static const std::vector<IndexTag> tags{
        IndexTag::SSI, IndexTag::Tijs, IndexTag::Semivalue, IndexTag::PBinomial, IndexTag::Bz,
        IndexTag::Swing, IndexTag::ColPrev, IndexTag::ColIni, IndexTag::Rae, IndexTag::KB,
        IndexTag::PHI, IndexTag::Chow, IndexTag::JS, IndexTag::PGI, IndexTag::DP,
        IndexTag::Shift, IndexTag::SDP};
    return tags;
}

IndexId IndexId::semivalue(std::vector<Q> p, bool norm) {
    IndexId id(IndexTag::Semivalue, norm);
    id.semivalue_p = std::move(p);
    return id;
}

IndexId IndexId::pbinomial(Q p, bool norm) {
    if (p <= 0 || p >= 1) throw std::invalid_argument("p-binomial parameter must lie strictly inside (0,1)");
    IndexId id(IndexTag::PBinomial, norm);
    id.binomial_p = std::move(p);
    return id;
}

IndexId IndexId::with_normalized(bool norm) const {
    IndexId id = *this;
    id.normalized = norm;
    return id;
}

std::string tag_name(IndexTag tag) {
    switch (tag) {
        case IndexTag::SSI: return "ssi";
        case IndexTag::Tijs: return "tijs";
        case IndexTag::Semivalue: return "semivalue";
        case IndexTag::PBinomial: return "pbinomial";
        case IndexTag::Bz: return "bz";
        case IndexTag::Swing: return "swing";
        case IndexTag::ColPrev: return "colprev";
        case IndexTag::ColIni: return "colini";
        case IndexTag::Rae: return "rae";
        case IndexTag::KB: return "kb";
        case IndexTag::PHI: return "phi";
        case IndexTag::Chow: return "chow";
        case IndexTag::JS: return "js";
        case IndexTag::PGI: return "pgi";
        case IndexTag::DP: return "dp";
        case IndexTag::Shift: return "shift";
        case IndexTag::SDP: return "sdp";
    }
    return "?";
}

std::string IndexId::name() const {
    std::string out = tag_name(tag);
    if (tag == IndexTag::PBinomial) out += ":" + to_string(binomial_p);
    if (tag == IndexTag::Semivalue && !semivalue_p.empty()) out += ":" + join(semivalue_p, ",");
    return out;
}

IndexId parse_index(const std::string& raw) {
    std::string text;
    for (char c : raw) text.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    std::string head = text, arg;
    auto colon = text.find(':');
    if (colon != std::string::npos) {
        head = text.substr(0, colon);
        arg = text.substr(colon + 1);
    }
    if (head == "pbinomial") return IndexId::pbinomial(arg.empty() ? Q(1, 2) : parse_rational(arg));
    if (head == "semivalue") {
        std::vector<Q> p;
        std::stringstream ss(arg);
        std::string item;
        while (std::getline(ss, item, ',')) p.push_back(parse_rational(item));
        return IndexId::semivalue(p);
    }
    for (IndexTag t : all_index_tags())
        if (tag_name(t) == head && t != IndexTag::PBinomial && t != IndexTag::Semivalue) return IndexId(t);
    throw std::invalid_argument("unknown index: " + raw);
}

std::vector<Q> shapley_semivalue_weights(int n) {
    std::vector<Q> p(n);
    for (int j = 0; j < n; ++j) p[j] = Q(1) / (Q(n) * Q(binomial(n - 1, j)));
    return p;
}

bool valid_semivalue_weights(const std::vector<Q>& p, int n) {
    if (static_cast<int>(p.size()) != n) return false;
    Q total = 0;
    for (int j = 0; j < n; ++j) {
        if (p[j] < 0) return false;
        total += p[j] * Q(binomial(n - 1, j));
    }
    return total == 1;
}

bool requires_fixed_order(IndexTag tag) { return tag == IndexTag::Shift || tag == IndexTag::SDP; }

namespace {

bool is_constant(const Game& g) {
    auto c = g.count_winning();
    return c == 0 || c == g.size();
}

void check_domain(const Game& g, const IndexId& id) {
    if (requires_fixed_order(id.tag) && !is_constant(g) && !is_complete(g))
        throw GameError(tag_name(id.tag) + " requires a game complete under the order 1 >= 2 >= ... >= n");
    if (id.tag == IndexTag::Semivalue && !id.semivalue_p.empty() &&
        !valid_semivalue_weights(id.semivalue_p, g.n()))
        throw std::invalid_argument("semivalue weights must be nonnegative with sum p_j*C(n-1,j) = 1");
    if (id.tag == IndexTag::PBinomial && (id.binomial_p <= 0 || id.binomial_p >= 1))
        throw std::invalid_argument("p-binomial parameter must lie strictly inside (0,1)");
}

std::vector<Q> semivalue_weights(const Game& g, const IndexId& id) {
    if (id.tag == IndexTag::Semivalue)
        return id.semivalue_p.empty() ? shapley_semivalue_weights(g.n()) : id.semivalue_p;
    std::vector<Q> p(g.n());
    const int n = g.n();
    for (int j = 0; j < n; ++j) {
        switch (id.tag) {
            case IndexTag::SSI:
                p[j] = frac(Z(factorial(j) * factorial(n - 1 - j)), Z(factorial(n)));
                break;
            case IndexTag::PBinomial:
                p[j] = power(id.binomial_p, j) * power(Q(1 - id.binomial_p), n - 1 - j);
                break;
            case IndexTag::Bz:
                p[j] = 1 / power(Q(2), n - 1);
                break;
            default:
                p[j] = 1;
        }
        p[j].canonicalize();
    }
    return p;
}

bool critical(const Game& g, int i, Coalition s) {
    return contains(s, i) && g.wins(s) && !g.wins(s & ~bit(i));
}

// Winning and every one-voter removal losing.
bool locally_minimal(const Game& g, Coalition s) {
    if (!g.wins(s)) return false;
    for (int j : members(s))
        if (g.wins(s & ~bit(j))) return false;
    return true;
}

bool shift_minimal(const Game& g, Coalition s) {
    if (!g.wins(s)) return false;
    for (Coalition t : direct_right_shifts(s, g.n()))
        if (g.wins(t)) return false;
    return true;
}

int critical_count(const Game& g, Coalition s) {
    int c = 0;
    for (int j : members(s))
        if (critical(g, j, s)) ++c;
    return c;
}

struct Counts {
    int n = 0;
    std::size_t winning = 0;
    std::vector<std::vector<long>> swing_by_size;   // [i][|S|]
    std::vector<long> colini;                       // i not in S, S losing, S+i winning
    std::vector<long> win_with;                     // |W_i|
    std::vector<long> lose_without;                 // #{S : i not in S, S losing}
    std::vector<std::vector<long>> js_by_crit;      // [i][#critical]
    std::vector<std::vector<long>> mwc_by_size;     // [i][|S|]
    std::vector<std::vector<long>> smwc_by_size;    // [i][|S|]
    std::vector<bool> vetoer;
};

Counts count(const Game& g, bool want_shift) {
    Counts c;
    const int n = g.n();
    c.n = n;
    c.swing_by_size.assign(n, std::vector<long>(n + 1, 0));
    c.js_by_crit.assign(n, std::vector<long>(n + 1, 0));
    c.mwc_by_size.assign(n, std::vector<long>(n + 1, 0));
    c.smwc_by_size.assign(n, std::vector<long>(n + 1, 0));
    c.colini.assign(n, 0);
    c.win_with.assign(n, 0);
    c.lose_without.assign(n, 0);
    c.vetoer.assign(n, false);
    const Coalition full = g.full();
    std::vector<int> crit;
    crit.reserve(n);
    for (Coalition s = 0; s <= full; ++s) {
        const bool w = g.wins(s);
        const int size = cardinality(s);
        if (w) ++c.winning;
        crit.clear();
        bool all_removals_lose = w;
        for (int i = 1; i <= n; ++i) {
            const Coalition b = bit(i);
            if (s & b) {
                if (w) {
                    ++c.win_with[i - 1];
                    if (!g.wins(s & ~b)) {
                        crit.push_back(i);
                        ++c.swing_by_size[i - 1][size];
                    } else {
                        all_removals_lose = false;
                    }
                }
            } else {
                if (!w) {
                    ++c.lose_without[i - 1];
                    if (g.wins(s | b)) ++c.colini[i - 1];
                }
            }
        }
        if (!crit.empty())
            for (int i : crit) ++c.js_by_crit[i - 1][crit.size()];
        if (all_removals_lose)
            for (int i : members(s)) ++c.mwc_by_size[i - 1][size];
        if (want_shift && shift_minimal(g, s))
            for (int i : members(s)) ++c.smwc_by_size[i - 1][size];
    }
    for (int i = 1; i <= n; ++i) c.vetoer[i - 1] = !g.wins(full & ~bit(i));
    return c;
}

Q pow2(int e) { return power(Q(2), static_cast<unsigned>(e)); }

}  // namespace

Q counting_value(const Game& g, const IndexId& id, int i, Coalition s) {
    check_domain(g, id);
    const int n = g.n();
    const int size = cardinality(s);
    switch (id.tag) {
        case IndexTag::SSI:
            if (!critical(g, i, s)) return 0;
            return frac(Z(factorial(size - 1) * factorial(n - size)), Z(factorial(n)));
        case IndexTag::Tijs:
            return (s == g.full() && is_vetoer(g, i)) ? Q(1) : Q(0);
        case IndexTag::Semivalue:
        case IndexTag::PBinomial:
        case IndexTag::Bz:
        case IndexTag::Swing: {
            if (!critical(g, i, s)) return 0;
            if (id.tag == IndexTag::Swing) return 1;
            if (id.tag == IndexTag::Bz) return 1 / pow2(n - 1);
            if (id.tag == IndexTag::PBinomial)
                return power(id.binomial_p, size - 1) * power(Q(1 - id.binomial_p), n - size);
            return semivalue_weights(g, id)[size - 1];
        }
        case IndexTag::ColPrev:
            if (!critical(g, i, s)) return 0;
            return frac(Z(1), Z(static_cast<long>(g.count_winning())));
        case IndexTag::ColIni:
            if (contains(s, i) || g.wins(s) || !g.wins(s | bit(i))) return 0;
            return frac(Z(1), Z(static_cast<long>(g.size() - g.count_winning())));
        case IndexTag::Rae:
            if (contains(s, i) == g.wins(s)) return 1 / pow2(n);
            return 0;
        case IndexTag::KB:
            if (!contains(s, i) || !g.wins(s)) return 0;
            return frac(Z(1), Z(static_cast<long>(g.count_winning())));
        case IndexTag::PHI: {
            if (!contains(s, i) || !g.wins(s)) return 0;
            long total = 0;
            for (Coalition t = 0; t <= g.full(); ++t)
                if (g.wins(t)) total += cardinality(t);
            return frac(Z(1), Z(total));
        }
        case IndexTag::Chow:
            return (contains(s, i) && g.wins(s)) ? Q(1) : Q(0);
        case IndexTag::JS:
            if (!critical(g, i, s)) return 0;
            return frac(Z(1), Z(critical_count(g, s)));
        case IndexTag::PGI:
            return (contains(s, i) && locally_minimal(g, s)) ? Q(1) : Q(0);
        case IndexTag::DP:
            return (contains(s, i) && locally_minimal(g, s)) ? frac(Z(1), Z(size)) : Q(0);
        case IndexTag::Shift:
            return (contains(s, i) && shift_minimal(g, s)) ? Q(1) : Q(0);
        case IndexTag::SDP:
            return (contains(s, i) && shift_minimal(g, s)) ? frac(Z(1), Z(size)) : Q(0);
    }
    return 0;
}

std::vector<Q> normalize(const std::vector<Q>& values) {
    Q total = sum(values);
    if (total == 0) throw NormalizationOfZero();
    std::vector<Q> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i] / total;
    return out;
}

PowerVector normalize(const PowerVector& v) {
    return PowerVector{v.index.with_normalized(true), normalize(v.values)};
}

std::vector<Q> absolute_values(const Game& g, const IndexId& id) {
    check_domain(g, id);
    const int n = g.n();
    const Counts c = count(g, requires_fixed_order(id.tag));
    std::vector<Q> v(n);
    auto swings = [&](int i) { return std::accumulate(c.swing_by_size[i].begin(), c.swing_by_size[i].end(), 0L); };
    switch (id.tag) {
        case IndexTag::SSI:
        case IndexTag::Semivalue:
        case IndexTag::PBinomial: {
            auto p = semivalue_weights(g, id);
            for (int i = 0; i < n; ++i)
                for (int s = 1; s <= n; ++s)
                    if (c.swing_by_size[i][s]) v[i] += c.swing_by_size[i][s] * p[s - 1];
            break;
        }
        case IndexTag::Tijs:
            for (int i = 0; i < n; ++i) v[i] = c.vetoer[i] ? 1 : 0;
            break;
        case IndexTag::Bz:
            for (int i = 0; i < n; ++i) v[i] = Q(swings(i)) / pow2(n - 1);
            break;
        case IndexTag::Swing:
            for (int i = 0; i < n; ++i) v[i] = swings(i);
            break;
        case IndexTag::ColPrev:
            for (int i = 0; i < n; ++i)
                v[i] = c.winning ? frac(Z(swings(i)), Z(static_cast<long>(c.winning))) : Q(0);
            break;
        case IndexTag::ColIni: {
            const long losing = static_cast<long>(g.size() - c.winning);
            for (int i = 0; i < n; ++i) v[i] = losing ? frac(Z(c.colini[i]), Z(losing)) : Q(0);
            break;
        }
        case IndexTag::Rae:
            for (int i = 0; i < n; ++i) v[i] = Q(c.win_with[i] + c.lose_without[i]) / pow2(n);
            break;
        case IndexTag::KB:
            for (int i = 0; i < n; ++i)
                v[i] = c.winning ? frac(Z(c.win_with[i]), Z(static_cast<long>(c.winning))) : Q(0);
            break;
        case IndexTag::PHI: {
            long total = std::accumulate(c.win_with.begin(), c.win_with.end(), 0L);
            for (int i = 0; i < n; ++i) v[i] = total ? frac(Z(c.win_with[i]), Z(total)) : Q(0);
            break;
        }
        case IndexTag::Chow:
            for (int i = 0; i < n; ++i) v[i] = c.win_with[i];
            break;
        case IndexTag::JS:
            for (int i = 0; i < n; ++i)
                for (int k = 1; k <= n; ++k)
                    if (c.js_by_crit[i][k]) v[i] += frac(Z(c.js_by_crit[i][k]), Z(k));
            break;
        case IndexTag::PGI:
        case IndexTag::Shift: {
            const auto& tab = id.tag == IndexTag::PGI ? c.mwc_by_size : c.smwc_by_size;
            for (int i = 0; i < n; ++i) v[i] = std::accumulate(tab[i].begin(), tab[i].end(), 0L);
            break;
        }
        case IndexTag::DP:
        case IndexTag::SDP: {
            const auto& tab = id.tag == IndexTag::DP ? c.mwc_by_size : c.smwc_by_size;
            for (int i = 0; i < n; ++i)
                for (int s = 1; s <= n; ++s)
                    if (tab[i][s]) v[i] += frac(Z(tab[i][s]), Z(s));
            break;
        }
    }
    for (auto& x : v) x.canonicalize();
    return v;
}

PowerVector power_index(const Game& g, const IndexId& id) {
    auto v = absolute_values(g, id);
    if (id.normalized) v = normalize(v);
    return PowerVector{id, std::move(v)};
}

PowerVector power_index_naive(const Game& g, const IndexId& id) {
    std::vector<Q> v(g.n());
    for (int i = 1; i <= g.n(); ++i)
        for (Coalition s = 0; s <= g.full(); ++s) v[i - 1] += counting_value(g, id, i, s);
    if (id.normalized) v = normalize(v);
    return PowerVector{id, std::move(v)};
}

Game remove_mwc(const Game& g, Coalition t) {
    auto table = g.table();
    table[t] = 0;
    return Game(g.n(), std::move(table));
}

bool supports_incremental(IndexTag tag) {
    switch (tag) {
        case IndexTag::Swing: case IndexTag::Bz: case IndexTag::Rae: case IndexTag::SSI:
        case IndexTag::PBinomial: case IndexTag::Chow: case IndexTag::KB: case IndexTag::ColPrev:
        case IndexTag::JS:
            return true;
        default:
            return false;
    }
}

PowerVector update_on_mwc_removal(const Game& g, Coalition t, const IndexId& id, const PowerVector& current) {
    if (!supports_incremental(id.tag)) throw std::invalid_argument("no incremental rule for " + id.name());
    if (id.normalized) throw std::invalid_argument("incremental rules apply to absolute indices");
    if (!is_simple(g)) throw GameError("incremental rules require a simple game");
    if (t == g.full()) throw GameError("removing N would leave no winning coalition");
    if (!locally_minimal(g, t)) throw GameError("T must be a minimal winning coalition");
    const int n = g.n();
    if (static_cast<int>(current.values.size()) != n) throw std::invalid_argument("vector length mismatch");
    const int ts = cardinality(t);
    std::vector<Q> v = current.values;
    const Q w = static_cast<long>(g.count_winning());
    for (int i = 1; i <= n; ++i) {
        const bool in = contains(t, i);
        Q& x = v[i - 1];
        switch (id.tag) {
            case IndexTag::Swing:
                x += in ? -1 : 1;
                break;
            case IndexTag::Bz:
                x += (in ? Q(-1) : Q(1)) / pow2(n - 1);
                break;
            case IndexTag::Rae:
                x += (in ? Q(-1) : Q(1)) / pow2(n);
                break;
            case IndexTag::SSI:
                if (in) x -= frac(Z(factorial(ts - 1) * factorial(n - ts)), Z(factorial(n)));
                else x += frac(Z(factorial(ts) * factorial(n - ts - 1)), Z(factorial(n)));
                break;
            case IndexTag::PBinomial: {
                const Q& p = id.binomial_p;
                if (in) x -= power(p, ts - 1) * power(Q(1 - p), n - ts);
                else x += power(p, ts) * power(Q(1 - p), n - ts - 1);
                break;
            }
            case IndexTag::Chow:
                if (in) x -= 1;
                break;
            case IndexTag::KB:
                x = (w / (w - 1)) * x - (in ? Q(1) : Q(0)) / (w - 1);
                break;
            case IndexTag::ColPrev:
                x = (w / (w - 1)) * x + (in ? Q(-1) : Q(1)) / (w - 1);
                break;
            default:
                break;
        }
    }
    if (id.tag == IndexTag::JS) {
        for (int j : members(t)) v[j - 1] -= frac(Z(1), Z(ts));
        for (int i = 1; i <= n; ++i) {
            if (contains(t, i)) continue;
            const Coalition s = t | bit(i);
            std::vector<int> crit;
            for (int j : members(t))
                if (!g.wins(s & ~bit(j))) crit.push_back(j);
            const long c = static_cast<long>(crit.size());
            v[i - 1] += frac(Z(1), Z(c + 1));
            if (c > 0)
                for (int j : crit) v[j - 1] -= frac(Z(1), Z(c)) - frac(Z(1), Z(c + 1));
        }
    }
    for (auto& x : v) x.canonicalize();
    return PowerVector{id, std::move(v)};
}

IndexTag equal_division_transform(IndexTag tag) {
    switch (tag) {
        case IndexTag::Swing: return IndexTag::JS;
        case IndexTag::PGI: return IndexTag::DP;
        case IndexTag::Shift: return IndexTag::SDP;
        default: throw std::invalid_argument("no equal division counterpart for " + tag_name(tag));
    }
}

Q equal_division_value(const Game& g, const IndexId& base, int i, Coalition s) {
    if (counting_value(g, base, i, s) <= 0) return 0;
    Q best = 0;
    int positive = 0;
    for (int j = 1; j <= g.n(); ++j) {
        Q c = counting_value(g, base, j, s);
        if (c > 0) ++positive;
        if (c > best) best = c;
    }
    return best / positive;
}

std::string to_string(Property p) {
    switch (p) {
        case Property::Symmetric: return "symmetric";
        case Property::Positive: return "positive";
        case Property::Efficient: return "efficient";
        case Property::NullVoter: return "null_voter";
        case Property::NullVoterRemovable: return "null_voter_removable";
    }
    return "?";
}

bool expected_property(IndexTag tag, Property property) {
    switch (property) {
        // Under the fixed order a right-shift can separate equivalent voters.
        // Shift on [3;2,1,1] gives (1,0,1).
        case Property::Symmetric: return tag != IndexTag::Shift && tag != IndexTag::SDP;
        case Property::Positive: return tag != IndexTag::Tijs;
        case Property::Efficient: return tag == IndexTag::SSI || tag == IndexTag::PHI;
        case Property::NullVoter:
            return !(tag == IndexTag::Rae || tag == IndexTag::KB || tag == IndexTag::PHI || tag == IndexTag::Chow);
        case Property::NullVoterRemovable:
            return !(tag == IndexTag::Swing || tag == IndexTag::PHI || tag == IndexTag::Chow || tag == IndexTag::JS);
    }
    return false;
}

namespace {

std::vector<Q> evaluate(const Game& g, const IndexId& id) {
    IndexId local = id;
    if (local.tag == IndexTag::Semivalue && !local.semivalue_p.empty() &&
        static_cast<int>(local.semivalue_p.size()) != g.n())
        throw std::invalid_argument("explicit semivalue weights only apply to one voter count");
    return power_index(g, local).values;
}

}  // namespace

PropertyResult check_property(const IndexId& id, Property property, int n) {
    if (n < 1 || n > 4) throw std::invalid_argument("check_property supports 1 <= n <= 4");
    PropertyResult result;
    auto fail = [&](const Game& g, std::string detail) {
        result.holds = false;
        result.counterexample = g;
        result.detail = std::move(detail);
    };
    for (const Game& g : enumerate_games(n, GameClass::Simple)) {
        if (requires_fixed_order(id.tag) && !is_complete(g)) continue;
        std::vector<Q> p;
        try {
            p = evaluate(g, id);
        } catch (const NormalizationOfZero&) {
            if (property == Property::Positive) {
                fail(g, "zero total");
                return result;
            }
            continue;
        }
        switch (property) {
            case Property::Symmetric: {
                std::vector<int> perm(n);
                std::iota(perm.begin(), perm.end(), 1);
                do {
                    Game h = permute(g, perm);
                    if (requires_fixed_order(id.tag) && !is_complete(h)) continue;
                    auto ph = evaluate(h, id);
                    for (int i = 1; i <= n; ++i)
                        if (ph[perm[i - 1] - 1] != p[i - 1]) {
                            fail(g, "relabeling changes the value of voter " + std::to_string(i));
                            return result;
                        }
                } while (std::next_permutation(perm.begin(), perm.end()));
                break;
            }
            case Property::Positive: {
                bool nonzero = false;
                for (const auto& x : p) {
                    if (x < 0) {
                        fail(g, "negative value");
                        return result;
                    }
                    nonzero = nonzero || x != 0;
                }
                if (!nonzero) {
                    fail(g, "zero vector");
                    return result;
                }
                break;
            }
            case Property::Efficient:
                if (sum(p) != 1) {
                    fail(g, "total " + to_string(sum(p)));
                    return result;
                }
                break;
            case Property::NullVoter:
                for (int i : null_voters(g))
                    if (p[i - 1] != 0) {
                        fail(g, "null voter " + std::to_string(i) + " gets " + to_string(p[i - 1]));
                        return result;
                    }
                break;
            case Property::NullVoterRemovable: {
                auto nulls = null_voters(g);
                if (nulls.empty()) break;
                Game reduced = remove_null_voters(g);
                std::vector<Q> pr;
                try {
                    pr = evaluate(reduced, id);
                } catch (const NormalizationOfZero&) {
                    continue;
                }
                int j = 0;
                for (int i = 1; i <= n; ++i) {
                    if (std::find(nulls.begin(), nulls.end(), i) != nulls.end()) continue;
                    if (p[i - 1] != pr[j]) {
                        fail(g, "voter " + std::to_string(i) + " changes from " + to_string(pr[j]) + " to " +
                                    to_string(p[i - 1]) + " when null voters are present");
                        return result;
                    }
                    ++j;
                }
                break;
            }
        }
    }
    return result;
}

}  // namespace vpower
