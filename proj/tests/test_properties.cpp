#include <doctest.h>

#include <string>

#include "property_suite.hpp"

using nshape::props::run_suite;

namespace {

void check_suite(char id, std::uint64_t seed) {
  const auto r = run_suite(id, 1000, seed);
  INFO("suite (", std::string(1, id), ") ", r.name, ": ", r.first_failure);
  CHECK(r.cases >= 1000);
  CHECK(r.failures == 0);
}

}  // namespace

TEST_CASE("property (a): chain rule") { check_suite('a', 1); }
TEST_CASE("property (b): product rules") { check_suite('b', 2); }
TEST_CASE("property (c): bracket degree bound") { check_suite('c', 3); }
TEST_CASE("property (d): order lemma") { check_suite('d', 4); }
TEST_CASE("property (e): flip equivariance") { check_suite('e', 5); }
TEST_CASE("property (f): power decomposition") { check_suite('f', 6); }
TEST_CASE("property (g): orientation") { check_suite('g', 7); }

TEST_CASE("properties are seed independent") {
  for (char id = 'a'; id <= 'g'; ++id) {
    const auto r = run_suite(id, 200, 0x5eed0000u + static_cast<unsigned>(id));
    INFO(std::string(1, id), ": ", r.first_failure);
    CHECK(r.failures == 0);
  }
}
