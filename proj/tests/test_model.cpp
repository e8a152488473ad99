#include <gtest/gtest.h>

#include <random>

#include "repising/errors.hpp"
#include "repising/model.hpp"
#include "support.hpp"

using namespace repising;
using repising::testing::for_each_config;
using repising::testing::random_model;

TEST(Model, FourColumnLadderOracle) {
  const IsingModel m = make_ladder_instance(4);
  double best = 1e300;
  int count = 0;
  for_each_config(8, [&](const SpinConfig &s) {
    const double e = energy(m, s);
    if (e < best - 1e-12) {
      best = e;
      count = 1;
    } else if (e < best + 1e-12) {
      ++count;
    }
  });
  EXPECT_DOUBLE_EQ(best, -7.0);
  EXPECT_EQ(count, 2);
}

TEST(Model, LadderCouplings) {
  const IsingModel m = make_ladder_instance(5, 2);
  EXPECT_EQ(m.coupling(0, 2), -1.0);
  EXPECT_EQ(m.coupling(5, 7), -1.0);
  EXPECT_EQ(m.coupling(4, 5), 1.0);
  EXPECT_EQ(m.coupling(0, 1), 0.0);
  EXPECT_TRUE(m.fields().empty());
  EXPECT_THROW(make_ladder_instance(3, 3), std::invalid_argument);
}

TEST(Model, EnergyIsLinearInParameters) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const IsingModel a = random_model(7, 0.5, rng);
    IsingModel b(a.graph_ptr());
    for (const Edge &e : a.graph().edges())
      b.set_coupling(e.u, e.v, 0.25);
    b.set_field(3, -0.5);
    const IsingModel sum = add(a, b);
    for_each_config(7, [&](const SpinConfig &s) {
      EXPECT_NEAR(energy(sum, s), energy(a, s) + energy(b, s), 1e-12);
      EXPECT_NEAR(energy(a.scaled(2.5), s), 2.5 * energy(a, s), 1e-12);
    });
  }
}

TEST(Model, FlipSymmetryWithoutFields) {
  std::mt19937_64 rng(12);
  const IsingModel m = random_model(8, 0.6, rng, false);
  for_each_config(8, [&](const SpinConfig &s) {
    EXPECT_DOUBLE_EQ(energy(m, s), energy(m, s.flipped()));
  });
}

TEST(Model, ContractChecks) {
  IsingModel m(build_path(3), 1.0);
  EXPECT_THROW(m.set_coupling(0, 2, 0.5), std::invalid_argument);
  EXPECT_THROW(m.set_coupling(0, 1, 1.5), std::invalid_argument);
  EXPECT_THROW(m.set_field(3, 0.1), std::invalid_argument);
  EXPECT_THROW(energy(m, SpinConfig(2)), ContractViolation);
  EXPECT_THROW(SpinConfig(std::vector<std::int8_t>{1, 0}), std::invalid_argument);
  m.set_coupling(0, 1, 0.5);
  m.set_coupling(0, 1, 0.0);
  EXPECT_TRUE(m.couplings().empty());
}

TEST(ModelJson, RoundTrip) {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 10; ++rep) {
    const IsingModel m = random_model(9, 0.4, rng);
    EXPECT_EQ(model_from_json(model_to_json(m)), m);
  }
  const IsingModel ladder = make_ladder_instance(4);
  const IsingModel back = model_from_json(model_to_json(ladder, 2));
  EXPECT_EQ(back, ladder);
  // Zero-coupling hardware edges survive as graph structure.
  EXPECT_EQ(back.graph().edge_count(), ladder.graph().edge_count());
}

TEST(ModelJson, SyntaxErrorHasLineAndColumn) {
  try {
    model_from_json("{\"vertices\": 2,\n  \"edges\": [[0, 1,]]}");
    FAIL() << "expected ParseError";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GT(e.column(), 0u);
  }
}

TEST(ModelJson, SchemaErrors) {
  EXPECT_THROW(model_from_json("[]"), ParseError);
  EXPECT_THROW(model_from_json("{\"edges\": []}"), ParseError);
  EXPECT_THROW(model_from_json("{\"vertices\": 2, \"colour\": 1}"), ParseError);
  EXPECT_THROW(model_from_json("{\"vertices\": 2, \"edges\": [[0, 2, 1]]}"),
               ParseError);
  EXPECT_THROW(model_from_json("{\"vertices\": 2, \"edges\": [[0, 1, 3]]}"),
               ParseError);
  EXPECT_THROW(model_from_json("{\"vertices\": 2, \"fields\": [[0]]}"),
               ParseError);
}

TEST(ModelJson, LineColumn) {
  EXPECT_EQ(line_column("ab\ncd", 4), std::make_pair(std::size_t{2}, std::size_t{2}));
}
