// Copyright 2026 The MOVCO Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MOVCO_TESTS_FIXTURES_HPP
#define MOVCO_TESTS_FIXTURES_HPP

#include <vector>

#include "movco/cmp.hpp"

namespace movco::testing {

// Two cash points over four days with a known optimum of cost 14.
inline cmp::Instance worked_instance() {
  cmp::Instance inst;
  inst.cash_points = 2;
  inst.days = 4;
  inst.first_day_price = {4, 8};
  inst.price = {2, 4};
  inst.prediction = {2, 2, 3, 1, -2, 4, 3, 4};
  inst.final_cash_limit = 1;
  inst.daily_transaction_limit = 1;
  return inst;
}

inline cmp::Schedule worked_optimum() { return cmp::Schedule(2, 4, {2, 2, 3, 0, 1, 1, 0, 1}); }

// One point, one day, prediction -2 and no transactions allowed: the daily
// limit cannot hold, the final total can.
inline cmp::Instance capped_instance() {
  cmp::Instance inst;
  inst.cash_points = 1;
  inst.days = 1;
  inst.first_day_price = {2};
  inst.price = {1};
  inst.prediction = {-2};
  inst.final_cash_limit = 3;
  inst.daily_transaction_limit = 0;
  return inst;
}

inline cmp::Instance tiny_instance(int prediction) {
  cmp::Instance inst;
  inst.cash_points = 1;
  inst.days = 1;
  inst.first_day_price = {2};
  inst.price = {1};
  inst.prediction = {prediction};
  inst.final_cash_limit = 3;
  inst.daily_transaction_limit = 1;
  return inst;
}

// Straightforward reference implementations of the cost model.
struct Reference {
  const cmp::Instance& inst;

  std::vector<int> W(const cmp::Schedule& m) const {
    std::vector<int> w(static_cast<std::size_t>(inst.cash_points * inst.days));
    for (int c = 0; c < inst.cash_points; ++c) {
      for (int t = 0; t < inst.days; ++t) {
        w[c * inst.days + t] = t == 0 ? inst.predicted(c, 0)
                                      : inst.predicted(c, t) + m.at(c, t - 1) -
                                            inst.predicted(c, t - 1);
      }
    }
    return w;
  }
  double cost(const cmp::Schedule& m) const {
    const auto w = W(m);
    double total = 0;
    for (int c = 0; c < inst.cash_points; ++c) {
      for (int t = 0; t < inst.days; ++t) {
        if (m.at(c, t) != w[c * inst.days + t]) {
          total += t == 0 ? inst.first_day_price[c] : inst.price[c];
        }
      }
    }
    return total;
  }
  int transactions(const cmp::Schedule& m, int t) const {
    const auto w = W(m);
    int n = 0;
    for (int c = 0; c < inst.cash_points; ++c) n += m.at(c, t) != w[c * inst.days + t];
    return n;
  }
  bool final_ok(const cmp::Schedule& m) const {
    int sum = 0;
    for (int c = 0; c < inst.cash_points; ++c) sum += m.at(c, inst.days - 1);
    return sum <= inst.final_cash_limit;
  }
  int satisfied(const cmp::Schedule& m) const {
    int s = final_ok(m);
    for (int t = 0; t < inst.days; ++t) s += transactions(m, t) <= inst.daily_transaction_limit;
    return s;
  }
  // Schedule of basis index x: cell (c, t) holds bits 2(cD+t) and 2(cD+t)+1.
  cmp::Schedule schedule(std::uint64_t x) const {
    cmp::Schedule m(inst.cash_points, inst.days);
    for (int c = 0; c < inst.cash_points; ++c) {
      for (int t = 0; t < inst.days; ++t) {
        const int q = 2 * (c * inst.days + t);
        m.set(c, t, static_cast<int>((x >> q) & 1) + 2 * static_cast<int>((x >> (q + 1)) & 1));
      }
    }
    return m;
  }
};

}  // namespace movco::testing

#endif  // MOVCO_TESTS_FIXTURES_HPP
