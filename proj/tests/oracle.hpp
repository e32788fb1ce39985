#pragma once

// Brute-force reference implementations written directly from the definitions.
// They work on plain win tables and share no code with the library beyond Q.

#include "vpower/rational.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using vpower::Q;
using Table = std::vector<int>;  // size 2^n, entry 1 for winning

inline int popcount(unsigned s) { return __builtin_popcount(s); }
inline bool has(unsigned s, int i) { return (s >> i) & 1u; }  // i is 0-based here

inline bool monotone(const Table& w) {
    for (unsigned s = 0; s < w.size(); ++s)
        for (unsigned t = 0; t < w.size(); ++t)
            if ((s & t) == s && w[s] && !w[t]) return false;
    return true;
}

inline bool boolean_game(const Table& w) { return !w.front() && w.back(); }

// All simple games on n <= 4 voters, by scanning every table.
inline std::vector<Table> simple_games(int n) {
    std::vector<Table> out;
    const unsigned size = 1u << n;
    for (unsigned long code = 0; code < (1ul << size); ++code) {
        Table w(size);
        for (unsigned s = 0; s < size; ++s) w[s] = (code >> s) & 1;
        if (boolean_game(w) && monotone(w)) out.push_back(w);
    }
    return out;
}

// Weighted games with integer weights in 0..wmax and every meaningful quota.
inline std::set<Table> weighted_games(int n, int wmax) {
    std::set<Table> out;
    std::vector<int> w(n, 0);
    const unsigned size = 1u << n;
    for (;;) {
        int total = std::accumulate(w.begin(), w.end(), 0);
        for (int q = 1; q <= total; ++q) {
            Table t(size);
            for (unsigned s = 0; s < size; ++s) {
                int ws = 0;
                for (int i = 0; i < n; ++i)
                    if (has(s, i)) ws += w[i];
                t[s] = ws >= q;
            }
            out.insert(t);
        }
        int i = 0;
        while (i < n && w[i] == wmax) w[i++] = 0;
        if (i == n) break;
        ++w[i];
    }
    return out;
}

inline Q factorial(int n) {
    Q f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Shapley-Shubik through pivotal voters over all orderings (simple games).
inline std::vector<Q> ssi_orderings(const Table& w, int n) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<Q> count(n, 0);
    do {
        unsigned s = 0;
        for (int i : order) {
            s |= 1u << i;
            if (w[s]) {
                count[i] += 1;
                break;
            }
        }
    } while (std::next_permutation(order.begin(), order.end()));
    Q f = factorial(n);
    for (auto& c : count) c /= f;
    return count;
}

inline std::vector<Q> swings(const Table& w, int n) {
    std::vector<Q> eta(n, 0);
    for (unsigned s = 0; s < w.size(); ++s)
        for (int i = 0; i < n; ++i)
            if (!has(s, i) && !w[s] && w[s | (1u << i)]) eta[i] += 1;
    return eta;
}

inline std::vector<Q> banzhaf(const Table& w, int n) {
    auto eta = swings(w, n);
    for (auto& e : eta) e /= Q(1u << (n - 1));
    return eta;
}

inline std::vector<unsigned> critical_members(const Table& w, int n, unsigned s) {
    std::vector<unsigned> out;
    if (!w[s]) return out;
    for (int i = 0; i < n; ++i)
        if (has(s, i) && !w[s & ~(1u << i)]) out.push_back(i);
    return out;
}

inline std::vector<Q> johnston(const Table& w, int n) {
    std::vector<Q> v(n, 0);
    for (unsigned s = 0; s < w.size(); ++s) {
        auto c = critical_members(w, n, s);
        for (unsigned i : c) v[i] += Q(1) / Q(static_cast<long>(c.size()));
    }
    return v;
}

inline bool minimal_winning(const Table& w, int n, unsigned s) {
    return w[s] && critical_members(w, n, s).size() == static_cast<std::size_t>(popcount(s));
}

inline std::vector<Q> public_good(const Table& w, int n, bool deegan_packel) {
    std::vector<Q> v(n, 0);
    for (unsigned s = 0; s < w.size(); ++s) {
        if (!minimal_winning(w, n, s)) continue;
        for (int i = 0; i < n; ++i)
            if (has(s, i)) v[i] += deegan_packel ? Q(1) / Q(popcount(s)) : Q(1);
    }
    return v;
}

inline std::vector<Q> chow(const Table& w, int n) {
    std::vector<Q> v(n, 0);
    for (unsigned s = 0; s < w.size(); ++s)
        for (int i = 0; i < n; ++i)
            if (w[s] && has(s, i)) v[i] += 1;
    return v;
}

inline int count_winning(const Table& w) { return static_cast<int>(std::count(w.begin(), w.end(), 1)); }

inline std::vector<Q> normalized(std::vector<Q> v) {
    Q t = 0;
    for (auto& x : v) t += x;
    for (auto& x : v) x /= t;
    return v;
}

// Majority collapse of each reduced game on the last n-k voters; ties lose.
inline Table k_rounding(const Table& w, int n, int k) {
    Table out(w.size());
    const unsigned head = (1u << k) - 1;
    for (unsigned a = 0; a <= head; ++a) {
        int wins = 0;
        for (unsigned u = 0; u < (1u << (n - k)); ++u) wins += w[a | (u << k)];
        bool win = 2 * wins > (1 << (n - k));
        for (unsigned u = 0; u < (1u << (n - k)); ++u) out[a | (u << k)] = win;
    }
    return out;
}

inline bool proper(const Table& w) {
    const unsigned full = static_cast<unsigned>(w.size()) - 1;
    for (unsigned s = 0; s <= full; ++s)
        if (w[s] && w[full & ~s]) return false;
    return true;
}

inline bool strong(const Table& w) {
    const unsigned full = static_cast<unsigned>(w.size()) - 1;
    for (unsigned s = 0; s <= full; ++s)
        if (!w[s] && !w[full & ~s]) return false;
    return true;
}

}  // namespace oracle
