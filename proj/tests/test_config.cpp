#include <doctest.h>

#include "fbm/config.hpp"

using namespace fbm;

TEST_CASE("config text round-trips") {
  for (Regime r : {Regime::weak_strong_A2, Regime::region_B_ii, Regime::problem_Q}) {
    RunConfig config = config_for_preset(r);
    config.scenario.params.mu1 = 0.1 + 0.2;  // not exactly representable in short decimal form
    config.sweep.values = {0.1, 1.0 / 3.0, 7.0};
    config.output.snapshots = false;
    const std::string text = to_text(config);
    const RunConfig back = parse_config(text);
    CHECK(back == config);
    CHECK(back.scenario.params.mu1 == config.scenario.params.mu1);
    CHECK(back.sweep.values == config.sweep.values);
    CHECK(to_text(back) == text);
  }
}

TEST_CASE("config overrides preset defaults") {
  const RunConfig config = parse_config(
      "[scenario]\npreset = region_B_i\n[model]\nmu2 = 0.125\nN = 2\n[numerics]\nscheme = explicit\ndt = 1e-4\n");
  CHECK(config.scenario.regime == Regime::region_B_i);
  CHECK(config.scenario.params.mu2 == 0.125);
  CHECK(config.scenario.params.N == 2);
  CHECK(config.scenario.numerics.scheme == Scheme::Explicit);
  CHECK(config.scenario.numerics.dt == 1e-4);
}

TEST_CASE("config rejects unknown keys and bad values") {
  CHECK_THROWS_AS(parse_config("[model]\nmu3 = 1\n"), Error);
  CHECK_THROWS_AS(parse_config("[modle]\nmu1 = 1\n"), Error);
  CHECK_THROWS_AS(parse_config("[model]\nmu1 = fast\n"), Error);
  CHECK_THROWS_AS(parse_config("[model]\nN = 1.5\n"), Error);
  CHECK_THROWS_AS(parse_config("[numerics]\nscheme = rk4\n"), Error);
  CHECK_THROWS_AS(parse_config("[scenario]\npreset = nowhere\n"), Error);
  CHECK_THROWS_AS(parse_config("[sweep]\nparam = q\n"), Error);
  try {
    parse_config("[model]\nmu3 = 1\n");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidConfig);
    CHECK(std::string(e.what()).find("mu3") != std::string::npos);
  }
}

TEST_CASE("config load reports missing files") {
  CHECK_THROWS_AS(load_config("/nonexistent/run.ini"), Error);
}
