#include "vpower/game.hpp"
#include "vpower/exact_lp.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace vpower {

std::vector<int> members(Coalition s) {
    std::vector<int> out;
    for (int i = 1; s; ++i, s >>= 1)
        if (s & 1u) out.push_back(i);
    return out;
}

std::string coalition_to_string(Coalition s) {
    std::string out = "{";
    bool first = true;
    for (int i : members(s)) {
        if (!first) out += ",";
        out += std::to_string(i);
        first = false;
    }
    return out + "}";
}

Game::Game(int n, std::vector<std::uint8_t> table) : n_(n), table_(std::move(table)) {
    if (n < 1 || n > kMaxVoters) throw GameError("voter count must lie in 1..24");
    if (table_.size() != (std::size_t{1} << n)) throw GameError("win table must have 2^n entries");
    for (auto& v : table_) v = v ? 1 : 0;
}

Game Game::from_winning(int n, const std::vector<Coalition>& winning) {
    if (n < 1 || n > kMaxVoters) throw GameError("voter count must lie in 1..24");
    std::vector<std::uint8_t> t(std::size_t{1} << n, 0);
    for (Coalition s : winning) {
        if (s > full_coalition(n)) throw GameError("coalition outside the voter set");
        t[s] = 1;
    }
    return Game(n, std::move(t));
}

Game Game::from_predicate(int n, const std::function<bool(Coalition)>& wins) {
    if (n < 1 || n > kMaxVoters) throw GameError("voter count must lie in 1..24");
    std::vector<std::uint8_t> t(std::size_t{1} << n, 0);
    for (std::size_t s = 0; s < t.size(); ++s) t[s] = wins(static_cast<Coalition>(s)) ? 1 : 0;
    return Game(n, std::move(t));
}

Game Game::constant(int n, bool value) {
    if (n < 1 || n > kMaxVoters) throw GameError("voter count must lie in 1..24");
    return Game(n, std::vector<std::uint8_t>(std::size_t{1} << n, value ? 1 : 0));
}

std::vector<Coalition> Game::winning() const {
    std::vector<Coalition> out;
    for (std::size_t s = 0; s < table_.size(); ++s)
        if (table_[s]) out.push_back(static_cast<Coalition>(s));
    return out;
}

std::size_t Game::count_winning() const {
    return static_cast<std::size_t>(std::count(table_.begin(), table_.end(), 1));
}

Game from_weighted(const Q& quota, const std::vector<Q>& weights) {
    const int n = static_cast<int>(weights.size());
    if (n < 1 || n > kMaxVoters) throw GameError("voter count must lie in 1..24");
    if (quota <= 0) throw GameError("quota must be positive");
    Q total = 0;
    for (const auto& w : weights) {
        if (w < 0) throw GameError("weights must be nonnegative");
        total += w;
    }
    if (total < quota) throw GameError("w(N) is below the quota, so N would be losing");
    std::vector<std::uint8_t> t(std::size_t{1} << n, 0);
    std::vector<Q> sums(t.size());
    for (std::size_t s = 1; s < t.size(); ++s) {
        int low = __builtin_ctz(static_cast<unsigned>(s));
        sums[s] = sums[s & (s - 1)] + weights[low];
        t[s] = sums[s] >= quota ? 1 : 0;
    }
    return Game(n, std::move(t));
}

GameClass parse_game_class(const std::string& name) {
    std::string s;
    for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (s == "boolean") return GameClass::Boolean;
    if (s == "simple") return GameClass::Simple;
    if (s == "complete") return GameClass::Complete;
    if (s == "weighted") return GameClass::Weighted;
    throw std::invalid_argument("unknown game class: " + name);
}

std::string to_string(GameClass c) {
    switch (c) {
        case GameClass::Boolean: return "boolean";
        case GameClass::Simple: return "simple";
        case GameClass::Complete: return "complete";
        case GameClass::Weighted: return "weighted";
    }
    return "?";
}

bool is_boolean(const Game& g) { return !g.wins(0) && g.wins(g.full()); }

bool is_simple(const Game& g) {
    if (!is_boolean(g)) return false;
    const Coalition full = g.full();
    for (Coalition s = 0; s <= full; ++s) {
        if (!g.wins(s)) continue;
        for (int i = 1; i <= g.n(); ++i)
            if (!contains(s, i) && !g.wins(s | bit(i))) return false;
    }
    return true;
}

bool desirable_at_least(const Game& g, int i, int j) {
    if (i == j) return true;
    const Coalition rest = g.full() & ~bit(i) & ~bit(j);
    // Iterate over all subsets of rest.
    for (Coalition s = rest;; s = (s - 1) & rest) {
        if (g.wins(s | bit(j)) && !g.wins(s | bit(i))) return false;
        if (s == 0) break;
    }
    return true;
}

bool is_complete(const Game& g) {
    if (!is_simple(g)) return false;
    for (int i = 1; i < g.n(); ++i)
        if (!desirable_at_least(g, i, i + 1)) return false;
    return true;
}

bool complete_under_some_order(const Game& g) {
    if (!is_simple(g)) return false;
    for (int i = 1; i <= g.n(); ++i)
        for (int j = i + 1; j <= g.n(); ++j)
            if (!desirable_at_least(g, i, j) && !desirable_at_least(g, j, i)) return false;
    return true;
}

bool is_proper(const Game& g) {
    const Coalition full = g.full();
    for (Coalition s = 0; s <= full; ++s)
        if (g.wins(s) && g.wins(full & ~s)) return false;
    return true;
}

bool is_strong(const Game& g) {
    const Coalition full = g.full();
    for (Coalition s = 0; s <= full; ++s)
        if (!g.wins(s) && !g.wins(full & ~s)) return false;
    return true;
}

ClassFlags classify(const Game& g) {
    ClassFlags f;
    f.boolean = is_boolean(g);
    f.simple = f.boolean && is_simple(g);
    f.complete = f.simple && is_complete(g);
    f.proper = is_proper(g);
    f.strong = is_strong(g);
    return f;
}

bool in_class(const Game& g, GameClass c) {
    switch (c) {
        case GameClass::Boolean: return is_boolean(g);
        case GameClass::Simple: return is_simple(g);
        case GameClass::Complete: return complete_under_some_order(g);
        case GameClass::Weighted: return is_weighted(g).has_value();
    }
    return false;
}

std::vector<Coalition> minimal_winning(const Game& g) {
    if (!is_simple(g)) throw GameError("minimal_winning requires a simple game");
    std::vector<Coalition> out;
    for (Coalition s = 0; s <= g.full(); ++s) {
        if (!g.wins(s)) continue;
        bool minimal = true;
        for (int i : members(s))
            if (g.wins(s & ~bit(i))) {
                minimal = false;
                break;
            }
        if (minimal) out.push_back(s);
    }
    return out;
}

std::vector<Coalition> maximal_losing(const Game& g) {
    if (!is_simple(g)) throw GameError("maximal_losing requires a simple game");
    std::vector<Coalition> out;
    for (Coalition s = 0; s <= g.full(); ++s) {
        if (g.wins(s)) continue;
        bool maximal = true;
        for (int i = 1; i <= g.n(); ++i)
            if (!contains(s, i) && !g.wins(s | bit(i))) {
                maximal = false;
                break;
            }
        if (maximal) out.push_back(s);
    }
    return out;
}

std::vector<Coalition> direct_right_shifts(Coalition s, int n) {
    std::vector<Coalition> out;
    for (int i = 1; i <= n; ++i) {
        if (!contains(s, i)) continue;
        if (i < n) {
            if (!contains(s, i + 1)) out.push_back((s & ~bit(i)) | bit(i + 1));
        } else {
            out.push_back(s & ~bit(n));
        }
    }
    return out;
}

std::vector<Coalition> direct_left_shifts(Coalition s, int n) {
    std::vector<Coalition> out;
    for (int i = 2; i <= n; ++i)
        if (contains(s, i) && !contains(s, i - 1)) out.push_back((s & ~bit(i)) | bit(i - 1));
    if (!contains(s, n)) out.push_back(s | bit(n));
    return out;
}

std::vector<Coalition> shift_minimal_winning(const Game& g) {
    if (!is_complete(g)) throw GameError("shift_minimal_winning requires a complete game");
    std::vector<Coalition> out;
    for (Coalition s = 0; s <= g.full(); ++s) {
        if (!g.wins(s)) continue;
        bool ok = true;
        for (Coalition t : direct_right_shifts(s, g.n()))
            if (g.wins(t)) {
                ok = false;
                break;
            }
        if (ok) out.push_back(s);
    }
    return out;
}

std::vector<Coalition> shift_maximal_losing(const Game& g) {
    if (!is_complete(g)) throw GameError("shift_maximal_losing requires a complete game");
    std::vector<Coalition> out;
    for (Coalition s = 0; s <= g.full(); ++s) {
        if (g.wins(s)) continue;
        bool ok = true;
        for (Coalition t : direct_left_shifts(s, g.n()))
            if (!g.wins(t)) {
                ok = false;
                break;
            }
        if (ok) out.push_back(s);
    }
    return out;
}

Game dual(const Game& g) {
    const Coalition full = g.full();
    return Game::from_predicate(g.n(), [&](Coalition s) { return !g.wins(full & ~s); });
}

ReducedGame reduced_game(const Game& g, Coalition a, int k) {
    if (k < 1 || k >= g.n()) throw GameError("reduced_game requires 0 < k < n");
    if (a & ~full_coalition(k)) throw GameError("A must be a subset of the first k voters");
    const int m = g.n() - k;
    std::vector<std::uint8_t> t(std::size_t{1} << m);
    std::size_t count = 0;
    for (std::size_t b = 0; b < t.size(); ++b) {
        t[b] = g.wins(a | static_cast<Coalition>(b << k)) ? 1 : 0;
        count += t[b];
    }
    ReducedGame::Kind kind = ReducedGame::Kind::Proper;
    if (count == 0) kind = ReducedGame::Kind::AllLosing;
    if (count == t.size()) kind = ReducedGame::Kind::AllWinning;
    return ReducedGame{kind, Game(m, std::move(t)), count};
}

bool is_null_voter(const Game& g, int i) {
    const Coalition b = bit(i);
    for (Coalition s = 0; s <= g.full(); ++s)
        if (!(s & b) && g.wins(s) != g.wins(s | b)) return false;
    return true;
}

bool is_vetoer(const Game& g, int i) { return !g.wins(g.full() & ~bit(i)); }

std::vector<int> null_voters(const Game& g) {
    std::vector<int> out;
    for (int i = 1; i <= g.n(); ++i)
        if (is_null_voter(g, i)) out.push_back(i);
    return out;
}

std::vector<int> vetoers(const Game& g) {
    std::vector<int> out;
    for (int i = 1; i <= g.n(); ++i)
        if (is_vetoer(g, i)) out.push_back(i);
    return out;
}

Game remove_null_voters(const Game& g) {
    std::vector<int> keep;
    for (int i = 1; i <= g.n(); ++i)
        if (!is_null_voter(g, i)) keep.push_back(i);
    if (keep.empty()) throw GameError("every voter is a null voter");
    const int m = static_cast<int>(keep.size());
    return Game::from_predicate(m, [&](Coalition s) {
        Coalition orig = 0;
        for (int j = 0; j < m; ++j)
            if (s & (Coalition{1} << j)) orig |= bit(keep[j]);
        return g.wins(orig);
    });
}

Game add_null_voters(const Game& g, int extra) {
    const Coalition mask = g.full();
    return Game::from_predicate(g.n() + extra, [&](Coalition s) { return g.wins(s & mask); });
}

Game permute(const Game& g, const std::vector<int>& perm) {
    // Voter i of g becomes voter perm[i-1] of the result.
    return Game::from_predicate(g.n(), [&](Coalition s) {
        Coalition orig = 0;
        for (int i = 1; i <= g.n(); ++i)
            if (contains(s, perm[i - 1])) orig |= bit(i);
        return g.wins(orig);
    });
}

std::optional<WeightedRepr> is_weighted(const Game& g) {
    if (!complete_under_some_order(g)) return std::nullopt;
    const int n = g.n();
    lp::Problem p;
    const int q = p.add_var(Q(1));
    std::vector<int> w(n);
    for (int i = 0; i < n; ++i) w[i] = p.add_var(Q(0));
    auto row_of = [&](Coalition s) {
        std::vector<lp::Term> terms{{q, Q(-1)}};
        for (int i : members(s)) terms.push_back({w[i - 1], Q(1)});
        return terms;
    };
    for (Coalition s : minimal_winning(g)) p.add_row(row_of(s), lp::Sense::Ge, Q(0));
    for (Coalition t : maximal_losing(g)) p.add_row(row_of(t), lp::Sense::Le, Q(-1));
    for (int i = 0; i < n; ++i) p.objective.push_back({w[i], Q(1)});
    auto res = lp::solve(p);
    if (res.status != lp::Status::Optimal) return std::nullopt;
    WeightedRepr r;
    r.quota = res.x[q];
    for (int i = 0; i < n; ++i) r.weights.push_back(res.x[w[i]]);
    return r;
}

namespace {

// Monotone Boolean functions on n variables as 64-bit truth tables (n <= 6).
std::vector<std::uint64_t> monotone_functions(int n) {
    if (n == 0) return {0, 1};
    auto prev = monotone_functions(n - 1);
    const int half = 1 << (n - 1);
    std::vector<std::uint64_t> out;
    for (auto f0 : prev)
        for (auto f1 : prev)
            if ((f0 & ~f1) == 0) out.push_back(f0 | (f1 << half));
    return out;
}

Game from_bits(int n, std::uint64_t bits) {
    std::vector<std::uint8_t> t(std::size_t{1} << n);
    for (std::size_t s = 0; s < t.size(); ++s) t[s] = (bits >> s) & 1u;
    return Game(n, std::move(t));
}

}  // namespace

int enumeration_limit(GameClass c) { return c == GameClass::Boolean ? 4 : 5; }

std::vector<Game> enumerate_games(int n, GameClass c) {
    if (n < 1) throw GameError("enumeration requires n >= 1");
    if (n > enumeration_limit(c))
        throw GameError("enumeration limit exceeded for class " + to_string(c));
    std::vector<Game> out;
    if (c == GameClass::Boolean) {
        const std::size_t size = std::size_t{1} << n;
        const std::uint64_t free_bits = size - 2;
        const std::uint64_t count = std::uint64_t{1} << free_bits;
        for (std::uint64_t code = 0; code < count; ++code) {
            std::vector<std::uint8_t> t(size, 0);
            t[size - 1] = 1;
            for (std::uint64_t b = 0; b < free_bits; ++b) t[b + 1] = (code >> b) & 1u;
            out.emplace_back(n, std::move(t));
        }
        return out;
    }
    const std::uint64_t all = n == 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (1 << n)) - 1;
    for (auto bits : monotone_functions(n)) {
        if (bits == 0 || bits == all) continue;
        Game g = from_bits(n, bits);
        if (c == GameClass::Simple || in_class(g, c)) out.push_back(std::move(g));
    }
    return out;
}

namespace {

std::vector<Q> parse_rational_list(const std::string& text) {
    std::vector<Q> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    return out;
}

}  // namespace

Game parse_game_text(const std::string& raw) {
    std::string text;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
    if (!text.empty() && text.front() == '[') {
        auto semi = text.find(';');
        if (semi == std::string::npos || text.back() != ']')
            throw GameError("inline weighted game must look like [q;w1,...,wn]");
        Q quota = parse_rational(text.substr(1, semi - 1));
        auto weights = parse_rational_list(text.substr(semi + 1, text.size() - semi - 2));
        return from_weighted(quota, weights);
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::exception& e) {
        throw GameError(std::string("game JSON: ") + e.what());
    }
    auto as_rational = [](const nlohmann::json& v) {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_integer()) return Q(v.get<long>());
        throw GameError("rationals must be integers or \"p/q\" strings");
    };
    if (j.contains("quota")) {
        std::vector<Q> w;
        for (const auto& v : j.at("weights")) w.push_back(as_rational(v));
        return from_weighted(as_rational(j.at("quota")), w);
    }
    if (j.contains("winning")) {
        int n = j.at("n").get<int>();
        std::vector<Coalition> win;
        for (const auto& v : j.at("winning")) win.push_back(v.get<Coalition>());
        return Game::from_winning(n, win);
    }
    throw GameError("game JSON needs either {n, winning} or {quota, weights}");
}

std::string game_to_json(const Game& g) {
    nlohmann::json j;
    j["n"] = g.n();
    j["winning"] = g.winning();
    return j.dump();
}

}  // namespace vpower
