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

#include "movco/cmp.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "movco/error.hpp"

namespace movco::cmp {

void validate(const Instance& in) {
  std::string problems;
  auto fail = [&](const std::string& what) {
    if (!problems.empty()) {
      problems += "; ";
    }
    problems += what;
  };

  if (in.cash_points < 1) fail("C must be >= 1");
  if (in.days < 1) fail("D must be >= 1");
  if (in.levels != kLevels) fail("h must be 4");
  if (in.final_cash_limit < 0) fail("v_f must be >= 0");
  if (in.daily_transaction_limit < 0) fail("l must be >= 0");
  if (in.cash_points >= 1 && in.days >= 1) {
    const auto c = static_cast<std::size_t>(in.cash_points);
    if (in.first_day_price.size() != c) fail("k0 must have C entries");
    if (in.price.size() != c) fail("k must have C entries");
    if (in.prediction.size() != c * static_cast<std::size_t>(in.days)) fail("p must be C x D");
    if (in.first_day_price.size() == c && in.price.size() == c) {
      for (std::size_t i = 0; i < c; ++i) {
        if (!(in.price[i] > 0.0) || !std::isfinite(in.price[i])) {
          fail("k[" + std::to_string(i) + "] must be positive");
        }
        if (!(in.price[i] < in.first_day_price[i]) || !std::isfinite(in.first_day_price[i])) {
          fail("k[" + std::to_string(i) + "] must be below k0[" + std::to_string(i) + "]");
        }
      }
    }
  }
  if (in.satisfiability_cap && (*in.satisfiability_cap < 0 || *in.satisfiability_cap > in.days + 1)) {
    fail("satisfiability_cap must lie in [0, D+1]");
  }
  if (!problems.empty()) {
    throw InvalidArgument("invalid CMP instance: " + problems);
  }
}

int satisfaction_normalizer(const Instance& instance) {
  if (instance.satisfiability_cap && *instance.satisfiability_cap > 0) {
    return *instance.satisfiability_cap;
  }
  return instance.days + 1;
}

// ---------------------------------------------------------------------------
// Schedule

Schedule::Schedule(int cash_points, int days)
    : cash_points_(cash_points),
      days_(days),
      levels_(static_cast<std::size_t>(cash_points * days), 0) {}

Schedule::Schedule(int cash_points, int days, std::vector<int> levels)
    : cash_points_(cash_points), days_(days), levels_(std::move(levels)) {
  if (levels_.size() != static_cast<std::size_t>(cash_points * days)) {
    throw InvalidArgument("Schedule: level matrix must be C x D");
  }
  for (int m : levels_) {
    if (m < 0 || m >= kLevels) {
      throw InvalidArgument("Schedule: levels must lie in [0, 3]");
    }
  }
}

void Schedule::set(int c, int t, int level) {
  if (level < 0 || level >= kLevels) {
    throw InvalidArgument("Schedule::set: level must lie in [0, 3]");
  }
  levels_[static_cast<std::size_t>(c * days_ + t)] = level;
}

Schedule decode(const qsim::Bitstring& bits, const Instance& instance) {
  if (bits.size() != instance.variable_count()) {
    throw InvalidArgument("decode: expected " + std::to_string(instance.variable_count()) +
                          " bits, got " + std::to_string(bits.size()));
  }
  Schedule out(instance.cash_points, instance.days);
  for (int c = 0; c < instance.cash_points; ++c) {
    for (int t = 0; t < instance.days; ++t) {
      const int b0 = bits.test(qubit_index(c, t, 0, instance.days)) ? 1 : 0;
      const int b1 = bits.test(qubit_index(c, t, 1, instance.days)) ? 1 : 0;
      out.set(c, t, b0 + 2 * b1);
    }
  }
  return out;
}

qsim::Bitstring encode(const Schedule& schedule) {
  const int days = schedule.days();
  qsim::Bitstring bits(2 * static_cast<std::size_t>(schedule.cash_points() * days));
  for (int c = 0; c < schedule.cash_points(); ++c) {
    for (int t = 0; t < days; ++t) {
      const int m = schedule.at(c, t);
      bits.set(qubit_index(c, t, 0, days), (m & 1) != 0);
      bits.set(qubit_index(c, t, 1, days), (m & 2) != 0);
    }
  }
  return bits;
}

namespace {

void check_shape(const Schedule& schedule, const Instance& instance) {
  if (schedule.cash_points() != instance.cash_points || schedule.days() != instance.days) {
    throw InvalidArgument("schedule shape does not match the instance");
  }
}

}  // namespace

std::vector<int> no_transaction_cash(const Schedule& schedule, const Instance& instance) {
  check_shape(schedule, instance);
  const int days = instance.days;
  std::vector<int> w(static_cast<std::size_t>(instance.cash_points * days));
  for (int c = 0; c < instance.cash_points; ++c) {
    w[static_cast<std::size_t>(c * days)] = instance.predicted(c, 0);
    for (int t = 1; t < days; ++t) {
      w[static_cast<std::size_t>(c * days + t)] =
          instance.predicted(c, t) + (schedule.at(c, t - 1) - instance.predicted(c, t - 1));
    }
  }
  return w;
}

double transaction_cost(const Schedule& schedule, const Instance& instance) {
  const auto w = no_transaction_cash(schedule, instance);
  const int days = instance.days;
  double cost = 0.0;
  for (int c = 0; c < instance.cash_points; ++c) {
    for (int t = 0; t < days; ++t) {
      if (schedule.at(c, t) != w[static_cast<std::size_t>(c * days + t)]) {
        cost += t == 0 ? instance.first_day_price[static_cast<std::size_t>(c)]
                       : instance.price[static_cast<std::size_t>(c)];
      }
    }
  }
  return cost;
}

ConstraintReport check_constraints(const Schedule& schedule, const Instance& instance) {
  const auto w = no_transaction_cash(schedule, instance);
  const int days = instance.days;
  ConstraintReport report;
  report.total = days + 1;

  int final_total = 0;
  for (int c = 0; c < instance.cash_points; ++c) {
    final_total += schedule.at(c, days - 1);
  }
  report.final_total_ok = final_total <= instance.final_cash_limit;

  report.daily_tx_ok.resize(static_cast<std::size_t>(days));
  for (int t = 0; t < days; ++t) {
    int transactions = 0;
    for (int c = 0; c < instance.cash_points; ++c) {
      if (schedule.at(c, t) != w[static_cast<std::size_t>(c * days + t)]) {
        ++transactions;
      }
    }
    report.daily_tx_ok[static_cast<std::size_t>(t)] =
        transactions <= instance.daily_transaction_limit;
  }

  report.satisfied_count = report.final_total_ok ? 1 : 0;
  for (bool ok : report.daily_tx_ok) {
    report.satisfied_count += ok ? 1 : 0;
  }
  report.fraction = static_cast<double>(report.satisfied_count) /
                    static_cast<double>(satisfaction_normalizer(instance));
  return report;
}

double penalized_cost(const Schedule& schedule, const Instance& instance,
                      const PenaltyWeights& weights) {
  if (weights.final_total < 0.0 || weights.daily < 0.0) {
    throw InvalidArgument("penalized_cost: penalty weights must be non-negative");
  }
  const auto report = check_constraints(schedule, instance);
  double cost = transaction_cost(schedule, instance);
  if (!report.final_total_ok) {
    cost += weights.final_total;
  }
  for (bool ok : report.daily_tx_ok) {
    if (!ok) {
      cost += weights.daily;
    }
  }
  return cost;
}

double cost_upper_bound(const Instance& instance) {
  double first = 0.0;
  double rest = 0.0;
  for (int c = 0; c < instance.cash_points; ++c) {
    first += instance.first_day_price[static_cast<std::size_t>(c)];
    rest += instance.price[static_cast<std::size_t>(c)];
  }
  return first + static_cast<double>(instance.days - 1) * rest;
}

int default_daily_limit(int cash_points) {
  if (cash_points == 2) {
    return 1;
  }
  // floor(3C/4 + 1/2) for C >= 0, i.e. round half away from zero.
  return (3 * cash_points + 2) / 4;
}

Instance generate_instance(int cash_points, int days, Rng& rng) {
  if (cash_points < 1 || days < 1) {
    throw InvalidArgument("generate_instance: C and D must be >= 1");
  }
  Instance in;
  in.cash_points = cash_points;
  in.days = days;
  in.levels = kLevels;
  in.price.resize(static_cast<std::size_t>(cash_points));
  in.first_day_price.resize(static_cast<std::size_t>(cash_points));
  for (int c = 0; c < cash_points; ++c) {
    const int k = uniform_int(rng, 1, 4);
    in.price[static_cast<std::size_t>(c)] = k;
    in.first_day_price[static_cast<std::size_t>(c)] = 2.0 * k;
  }
  in.prediction.resize(static_cast<std::size_t>(cash_points * days));
  for (auto& p : in.prediction) {
    p = uniform_int(rng, -2, 5);
  }
  in.final_cash_limit = cash_points;
  in.daily_transaction_limit = default_daily_limit(cash_points);
  return in;
}

int max_satisfiable(const Instance& instance, std::size_t max_bits) {
  const std::size_t bits = instance.variable_count();
  if (bits > max_bits || bits > 63) {
    throw ResourceLimit("max_satisfiable: " + std::to_string(bits) +
                        " bits exceeds the exhaustive-search limit of " +
                        std::to_string(max_bits));
  }
  Instance uncapped = instance;
  uncapped.satisfiability_cap.reset();
  const Evaluator evaluator(uncapped);
  const int all = instance.days + 1;
  int best = 0;
  const std::uint64_t count = 1ULL << bits;
  for (std::uint64_t x = 0; x < count; ++x) {
    const int s = evaluator.score_index(x).satisfied;
    if (s > best) {
      best = s;
      if (best == all) {
        break;
      }
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Evaluator

Evaluator::Evaluator(const Instance& instance)
    : instance_(instance),
      cash_points_(instance.cash_points),
      days_(instance.days),
      normalizer_(satisfaction_normalizer(instance)),
      cost_upper_bound_(cmp::cost_upper_bound(instance)) {
  validate(instance);
  day_zero_level_.resize(static_cast<std::size_t>(cash_points_));
  prediction_step_.resize(static_cast<std::size_t>(cash_points_ * days_), 0);
  for (int c = 0; c < cash_points_; ++c) {
    day_zero_level_[static_cast<std::size_t>(c)] = instance.predicted(c, 0);
    for (int t = 1; t < days_; ++t) {
      prediction_step_[static_cast<std::size_t>(c * days_ + t)] =
          instance.predicted(c, t) - instance.predicted(c, t - 1);
    }
  }
}

Score Evaluator::score(std::span<const std::uint64_t> row) const {
  // M[c][t] != W[c][t]  <=>  M[c][t] - M[c][t-1] != p[c][t] - p[c][t-1]  (t >= 1)
  Score s;
  const auto& k0 = instance_.first_day_price;
  const auto& k = instance_.price;
  const int limit = instance_.daily_transaction_limit;
  int days_ok = 0;
  for (int t = 0; t < days_; ++t) {
    int transactions = 0;
    for (int c = 0; c < cash_points_; ++c) {
      const int m = level(row, c, t);
      bool moved;
      if (t == 0) {
        moved = m != day_zero_level_[static_cast<std::size_t>(c)];
      } else {
        moved = m - level(row, c, t - 1) !=
                prediction_step_[static_cast<std::size_t>(c * days_ + t)];
      }
      if (moved) {
        ++transactions;
        s.cost += t == 0 ? k0[static_cast<std::size_t>(c)] : k[static_cast<std::size_t>(c)];
      }
    }
    if (transactions <= limit) {
      ++days_ok;
    } else {
      ++s.daily_violations;
    }
  }
  int final_total = 0;
  for (int c = 0; c < cash_points_; ++c) {
    final_total += level(row, c, days_ - 1);
  }
  s.final_ok = final_total <= instance_.final_cash_limit;
  s.satisfied = days_ok + (s.final_ok ? 1 : 0);
  return s;
}

Score Evaluator::score_index(std::uint64_t index) const {
  return score(std::span<const std::uint64_t>(&index, 1));
}

}  // namespace movco::cmp
