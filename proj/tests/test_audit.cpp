#include <doctest.h>

#include "dpbloom/audit.hpp"
#include "dpbloom/error.hpp"

using namespace dpbloom;

TEST_CASE("privacy audit passes at epsilon0 = 0.5 on a small filter") {
  const AuditReport report = privacy_audit(32, 3, 5, 0.5, 1'000'000, 31337);
  REQUIRE_FALSE(report.inconclusive);
  CHECK(report.bits.size() == 2 * 32);

  bool saw_differing = false;
  bool saw_agreeing = false;
  for (const auto& row : report.bits) {
    CHECK(row.pass);
    saw_differing |= row.differing;
    saw_agreeing |= !row.differing;
    if (row.differing)
      CHECK(row.band == doctest::Approx(0.5 + 4.0 * row.sigma));
    else
      CHECK(row.band == doctest::Approx(4.0 * row.sigma));
  }
  CHECK(saw_differing);
  CHECK(saw_agreeing);
  CHECK(report.all_pass());
}

TEST_CASE("privacy audit quantile check stays under delta") {
  const AuditReport report = privacy_audit(32, 3, 5, 0.25, 1'000'000, 77,
                                           std::make_pair(1.0, 0.05));
  REQUIRE_FALSE(report.inconclusive);
  REQUIRE(report.quantile.has_value());
  CHECK(report.quantile->pass);
  CHECK(report.quantile->exceed_rate <= report.quantile->threshold);
  CHECK(report.quantile->big_n >= 1);
  CHECK(report.all_pass());
}

TEST_CASE("privacy audit validates inputs") {
  CHECK_THROWS_AS(privacy_audit(32, 3, 5, 0.0, 1'000'000, 1), DomainError);
  CHECK_THROWS_AS(privacy_audit(32, 3, 5, 0.5, 1000, 1), DomainError);
}
