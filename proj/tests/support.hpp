#pragma once

#include "oracle.hpp"
#include "vpower/game.hpp"

#include <doctest.h>

inline oracle::Table table_of(const vpower::Game& g) { return oracle::Table(g.table().begin(), g.table().end()); }

inline vpower::Game game_of(const oracle::Table& t, int n) {
    return vpower::Game(n, std::vector<std::uint8_t>(t.begin(), t.end()));
}

inline std::vector<vpower::Q> qs(std::initializer_list<vpower::Q> v) { return v; }
