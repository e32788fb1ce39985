#include "vpower/shortening.hpp"

#include <vector>

namespace vpower {

namespace {

void check_k(const Game& g, int k) {
    if (k < 1 || k >= g.n())
        throw GameError("shortening needs 1 <= k < n, got k=" + std::to_string(k) + " n=" + std::to_string(g.n()));
}

// |W_A| for every A in [k].
std::vector<std::uint64_t> reduced_counts(const Game& g, int k) {
    const Coalition heads = Coalition{1} << k;
    const Coalition tails = Coalition{1} << (g.n() - k);
    std::vector<std::uint64_t> counts(heads, 0);
    for (Coalition a = 0; a < heads; ++a)
        for (Coalition b = 0; b < tails; ++b)
            if (g.wins(a | (b << k))) ++counts[a];
    return counts;
}

template <class Decide>
Game expand(const Game& g, int k, Decide decide) {
    auto counts = reduced_counts(g, k);
    std::vector<std::uint8_t> heads(counts.size());
    for (std::size_t a = 0; a < counts.size(); ++a) heads[a] = decide(counts[a]) ? 1 : 0;
    const Coalition mask = (Coalition{1} << k) - 1;
    std::vector<std::uint8_t> table(g.size());
    for (Coalition s = 0; s < g.size(); ++s) table[s] = heads[s & mask];
    return Game(g.n(), std::move(table));
}

}  // namespace

std::string ShorteningId::name() const {
    switch (tag) {
        case ShorteningTag::KRounding: return "k-rounding(k=" + std::to_string(k) + ")";
        case ShorteningTag::PKRounding: return "pk-rounding(p=" + to_string(p) + ",k=" + std::to_string(k) + ")";
        case ShorteningTag::KUpRounding: return "k-up-rounding(k=" + std::to_string(k) + ")";
    }
    return "?";
}

Game k_rounding(const Game& g, int k, bool reversed_ties) {
    check_k(g, k);
    const std::uint64_t total = std::uint64_t{1} << (g.n() - k);
    return expand(g, k, [&](std::uint64_t c) { return reversed_ties ? 2 * c >= total : 2 * c > total; });
}

Game pk_rounding(const Game& g, const Q& p, int k) {
    check_k(g, k);
    if (p <= 0 || p >= 1) throw GameError("pk_rounding needs 0 < p < 1");
    const Q threshold = p * Q(Z(1) << (g.n() - k));
    return expand(g, k, [&](std::uint64_t c) { return Q(Z(static_cast<unsigned long>(c))) > threshold; });
}

Game k_up_rounding(const Game& g, int k) {
    check_k(g, k);
    return expand(g, k, [](std::uint64_t c) { return c > 0; });
}

Game shorten(const Game& g, const ShorteningId& id) {
    switch (id.tag) {
        case ShorteningTag::KRounding: return k_rounding(g, id.k);
        case ShorteningTag::PKRounding: return pk_rounding(g, id.p, id.k);
        case ShorteningTag::KUpRounding: return k_up_rounding(g, id.k);
    }
    throw GameError("unknown shortening");
}

bool is_k_pure(const Game& g, int k) {
    for (int i = k + 1; i <= g.n(); ++i)
        if (!is_null_voter(g, i)) return false;
    return true;
}

bool is_constant(const Game& g) {
    for (Coalition s = 1; s < g.size(); ++s)
        if (g.wins(s) != g.wins(0)) return false;
    return true;
}

std::size_t switched_coalitions(const Game& a, const Game& b) {
    if (a.n() != b.n()) throw GameError("switched_coalitions: voter count mismatch");
    std::size_t count = 0;
    for (Coalition s = 0; s < a.size(); ++s)
        if (a.wins(s) != b.wins(s)) ++count;
    return count;
}

PreservationReport check_preservation(const Game& g, int k) {
    PreservationReport r;
    Game out = k_rounding(g, k);
    r.constant_output = is_constant(out);
    if (r.constant_output) return r;
    r.before = classify(g);
    r.after = classify(out);
    bool nonempty_full = !out.wins(0) && out.wins(out.full());
    r.boolean_ok = !nonempty_full || r.after.boolean;
    r.simple_ok = !r.before.simple || r.after.simple;
    r.complete_ok = !complete_under_some_order(g) || complete_under_some_order(out);
    r.fixed_complete_ok = !is_complete(g) || is_complete(out);
    r.weighted_ok = !is_weighted(g) || is_weighted(out).has_value();
    r.proper_ok = !r.before.proper || r.after.proper;
    r.strong_ok = !(r.before.strong && r.before.simple) || r.after.strong;
    return r;
}

}  // namespace vpower
