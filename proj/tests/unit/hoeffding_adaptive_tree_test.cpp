#include <gtest/gtest.h>

#include <cmath>

#include "driftcast/online/hoeffding_adaptive_tree.hpp"
#include "online_streams.hpp"

using namespace driftcast::online;

namespace {

// Prequential MAE over examples [from, end).
template <class Model>
double tail_mae(Model& m, const std::vector<streams::Example>& data, std::size_t from) {
  double sum = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (i >= from) sum += std::abs(m.predict_one(data[i].x) - data[i].y);
    m.learn_one(data[i].x, data[i].y);
  }
  return sum / static_cast<double>(data.size() - from);
}

}  // namespace

TEST(HoeffdingAdaptiveTree, FreshModelPredictsZero) {
  HoeffdingAdaptiveTreeRegressor t;
  const std::vector<double> x{1.0, 2.0};
  EXPECT_EQ(t.predict_one(x), 0.0);
}

TEST(HoeffdingAdaptiveTree, EqualsHoeffdingTreeOnStationaryStream) {
  const auto data = streams::stationary(21, 2000);
  const HoeffdingTreeParams tp{.grace_period = 100};
  HoeffdingTreeRegressor ht(tp, 3);
  HoeffdingAdaptiveTreeRegressor hat({.tree = tp}, 3);
  for (const auto& e : data) {
    ASSERT_EQ(ht.predict_one(e.x), hat.predict_one(e.x));
    ht.learn_one(e.x, e.y);
    hat.learn_one(e.x, e.y);
  }
  EXPECT_EQ(hat.n_switches(), 0u);
  EXPECT_EQ(ht.n_leaves(), hat.n_leaves());
}

TEST(HoeffdingAdaptiveTree, RecoversFasterAfterConceptShift) {
  int wins = 0;
  std::vector<double> ht_mae, hat_mae;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto data = streams::piecewise(seed);
    HoeffdingTreeRegressor ht({}, seed);
    HoeffdingAdaptiveTreeRegressor hat({}, seed);
    const double a = tail_mae(ht, data, 5000);
    const double b = tail_mae(hat, data, 5000);
    ht_mae.push_back(a);
    hat_mae.push_back(b);
    if (b < a) ++wins;
  }
  EXPECT_GT(wins, 10) << "HAT beat HT on " << wins << " of 20 seeds";
}

TEST(HoeffdingAdaptiveTree, StateRoundTrip) {
  const auto data = streams::piecewise(3);
  HoeffdingAdaptiveTreeRegressor a({}, 1);
  for (int i = 0; i < 4000; ++i) a.learn_one(data[i].x, data[i].y);
  auto b = HoeffdingAdaptiveTreeRegressor::from_state(a.state());
  for (int i = 4000; i < 6000; ++i) {
    ASSERT_EQ(a.predict_one(data[i].x), b.predict_one(data[i].x));
    a.learn_one(data[i].x, data[i].y);
    b.learn_one(data[i].x, data[i].y);
  }
  EXPECT_EQ(a.n_switches(), b.n_switches());
}
