#include "cofib/scenario.hpp"
#include "doctest.h"

using namespace cofib;

TEST_CASE("every named scenario passes") {
  for (auto const& s : scenarios()) {
    auto r = run_scenario(s.name, RewriteBound{});
    CHECK_FALSE(r.checks.empty());
    for (auto const& c : r.checks) {
      INFO(s.name << ": " << c.name << " expected " << c.expected << ", got " << c.actual);
      CHECK(c.pass);
    }
    CHECK_FALSE(r.unknown);
    CHECK(r.pass());
  }
}

TEST_CASE("unknown scenarios are input errors") {
  CHECK_THROWS_AS(run_scenario("no-such-scenario", RewriteBound{}), InputError);
}

TEST_CASE("scenario output is deterministic") {
  auto a = run_scenario("circle", RewriteBound{});
  auto b = run_scenario("circle", RewriteBound{});
  CHECK(io::dump(a.result) == io::dump(b.result));
}
