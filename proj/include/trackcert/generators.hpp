#pragma once

#include "trackcert/mcg.hpp"

namespace trackcert {

// S_1_1: a, b twist the curves (0,1,1) and (1,0,1).
// S_0_n: half twists along the chain of edges 0,3,5 (S_0_4) and 0..3 (S_0_5).
inline const std::vector<GeneratorTable>& generator_tables()
{
    static const std::vector<GeneratorTable> tables = {
        {"S_1_1",
         {{'a', {Move::flip(1), Move::relabel({0, ~2, ~1})}},
          {'b', {Move::flip(2), Move::relabel({~2, 1, 0})}}}},
        {"S_0_4",
         {{'a', {Move::flip(1), Move::flip(4), Move::relabel({~0, ~2, 4, 1, 3, 5})}},
          {'b', {Move::flip(0), Move::flip(5), Move::relabel({4, 0, 2, ~3, 5, ~1})}},
          {'c', {Move::flip(1), Move::flip(4), Move::relabel({0, ~3, 1, 4, 2, ~5})}}}},
        {"S_0_5",
         {{'a', {Move::flip(1), Move::flip(4), Move::flip(6), Move::flip(8), Move::relabel({~0, 8, 2, 3, ~6, 1, ~5, ~4, ~7})}},
          {'b', {Move::flip(5), Move::flip(8), Move::flip(7), Move::relabel({5, ~1, 8, 3, 4, 2, 6, 0, ~7})}},
          {'c', {Move::flip(1), Move::flip(6), Move::flip(3), Move::relabel({0, 5, ~2, ~8, 4, 6, 3, 7, 1})}},
          {'d', {Move::flip(4), Move::flip(8), Move::flip(2), Move::relabel({0, 1, 6, ~3, ~7, 5, ~4, 8, ~2})}}}},
    };
    return tables;
}

} // namespace trackcert
