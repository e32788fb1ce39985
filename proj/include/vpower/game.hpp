#pragma once

#include "vpower/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vpower {

// Voter i (1-based) is bit i-1.
using Coalition = std::uint32_t;

constexpr int kMaxVoters = 24;

inline Coalition bit(int voter) { return Coalition{1} << (voter - 1); }
inline bool contains(Coalition s, int voter) { return (s >> (voter - 1)) & 1u; }
inline int cardinality(Coalition s) { return __builtin_popcount(s); }
inline Coalition full_coalition(int n) { return n >= 32 ? ~Coalition{0} : (Coalition{1} << n) - 1; }

std::vector<int> members(Coalition s);
std::string coalition_to_string(Coalition s);

class GameError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A win table over all 2^n coalitions. The table is arbitrary: constant
// games and non-monotone tables are representable and classified on demand.
class Game {
public:
    Game() = default;
    Game(int n, std::vector<std::uint8_t> table);

    static Game from_winning(int n, const std::vector<Coalition>& winning);
    static Game from_predicate(int n, const std::function<bool(Coalition)>& wins);
    static Game constant(int n, bool value);

    int n() const { return n_; }
    Coalition full() const { return full_coalition(n_); }
    std::size_t size() const { return table_.size(); }
    bool wins(Coalition s) const { return table_[s] != 0; }
    const std::vector<std::uint8_t>& table() const { return table_; }
    std::vector<Coalition> winning() const;
    std::size_t count_winning() const;

    bool operator==(const Game& other) const = default;

private:
    int n_ = 0;
    std::vector<std::uint8_t> table_;
};

struct WeightedRepr {
    Q quota;
    std::vector<Q> weights;
};

Game from_weighted(const Q& quota, const std::vector<Q>& weights);
inline Game from_weighted(const WeightedRepr& r) { return from_weighted(r.quota, r.weights); }

struct ClassFlags {
    bool boolean = false;
    bool simple = false;
    bool complete = false;
    bool proper = false;
    bool strong = false;
};

enum class GameClass { Boolean, Simple, Complete, Weighted };

GameClass parse_game_class(const std::string& name);
std::string to_string(GameClass c);

bool is_boolean(const Game& g);
bool is_simple(const Game& g);
// i is at least as desirable as j: S+j winning implies S+i winning for all S in N-{i,j}.
bool desirable_at_least(const Game& g, int i, int j);
// Complete under the fixed order 1 >= 2 >= ... >= n.
bool is_complete(const Game& g);
// True when some relabeling of the voters makes the simple game complete.
bool complete_under_some_order(const Game& g);
bool is_proper(const Game& g);
bool is_strong(const Game& g);
ClassFlags classify(const Game& g);
bool in_class(const Game& g, GameClass c);

std::vector<Coalition> minimal_winning(const Game& g);
std::vector<Coalition> maximal_losing(const Game& g);
std::vector<Coalition> direct_right_shifts(Coalition s, int n);
std::vector<Coalition> direct_left_shifts(Coalition s, int n);
std::vector<Coalition> shift_minimal_winning(const Game& g);
std::vector<Coalition> shift_maximal_losing(const Game& g);

Game dual(const Game& g);

struct ReducedGame {
    enum class Kind { AllLosing, AllWinning, Proper };
    Kind kind;
    Game game;  // table of W_A on the n-k voters (k, n], voter k+1 relabeled as 1
    std::size_t winning_count;
};

ReducedGame reduced_game(const Game& g, Coalition a, int k);

// A null voter never changes the outcome: v(S) = v(S+i) for all S.
std::vector<int> null_voters(const Game& g);
std::vector<int> vetoers(const Game& g);
bool is_null_voter(const Game& g, int i);
bool is_vetoer(const Game& g, int i);
Game remove_null_voters(const Game& g);
// Embed g into n+extra voters where the new voters are null.
Game add_null_voters(const Game& g, int extra);
Game permute(const Game& g, const std::vector<int>& perm);

std::optional<WeightedRepr> is_weighted(const Game& g);

// Labeled enumeration. Constant games are excluded.
std::vector<Game> enumerate_games(int n, GameClass c);
// Largest n supported by enumerate_games for the class.
int enumeration_limit(GameClass c);

Game parse_game_text(const std::string& text);
std::string game_to_json(const Game& g);

}  // namespace vpower
