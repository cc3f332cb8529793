#include <doctest.h>

#include <cmath>

#include "steklov/errors.hpp"
#include "steklov/io.hpp"
#include "steklov/report.hpp"
#include "steklov/verification.hpp"

using namespace steklov;

namespace {

const SolverSettings defaults;

double measured(const Certificate& c, const std::string& what) {
  for (const Check& k : c.checks) {
    if (k.what == what) return k.measured;
  }
  FAIL("missing check " << what);
  return NAN;
}

}  // namespace

TEST_CASE("check relations") {
  CHECK(Check{"a", 1.0, 1.0 + 1e-9, Relation::Equal, 1e-8}.passed());
  CHECK_FALSE(Check{"a", 1.0, 1.0 + 1e-7, Relation::Equal, 1e-8}.passed());
  CHECK(Check{"a", 0.5, 0.4, Relation::AtMost, 0.1}.passed());
  CHECK_FALSE(Check{"a", 0.6, 0.4, Relation::AtMost, 0.1}.passed());
  CHECK(Check{"a", 0.36, 0.4, Relation::AtLeast, 0.05}.passed());
  CHECK_FALSE(Check{"a", 0.3, 0.4, Relation::AtLeast, 0.05}.passed());
  Certificate c;
  c.name = "demo";
  c.checks = {{"first", 1, 1, Relation::Equal, 0}, {"second", 2, 1, Relation::AtMost, 0},
              {"third", 0, 1, Relation::AtLeast, 0}};
  CHECK_FALSE(c.passed());
  CHECK(c.first_failure() == "second");
}

TEST_CASE("verdicts are monotone in the tolerance") {
  for (Relation r : {Relation::Equal, Relation::AtMost, Relation::AtLeast}) {
    for (double m : {-1.0, 0.0, 0.3, 1.0, 2.0}) {
      for (double t = 0; t < 3; t += 0.25) {
        const Check a{"x", m, 0.5, r, t}, b{"x", m, 0.5, r, t + 0.1};
        if (a.passed()) CHECK(b.passed());
      }
    }
  }
  // Certificate level: loosening the solver tolerance never breaks a pass.
  SolverSettings loose = defaults;
  loose.tol = 1e-3;
  CHECK(check_eigenvalue_placement(0.4, DomainMode::Intersection, defaults).passed());
  CHECK(check_eigenvalue_placement(0.4, DomainMode::Intersection, loose).passed());
}

TEST_CASE("mu_alpha identity") {
  for (double a : {0.5, 2.0 / 3.0, 1.5}) CHECK(check_mu_alpha_identity(a).passed());
  CHECK(measured(check_mu_alpha_identity(0.5), "mu_alpha = sin(alpha pi/2)") ==
        doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-14));
  CHECK(measured(check_mu_alpha_identity(2.0 / 3.0), "mu_alpha = sin(alpha pi/2)") ==
        doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-14));
  CHECK(measured(check_mu_alpha_identity(1.5), "mu_alpha = sin(alpha pi/2)") ==
        doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-14));
  for (int i = 0; i < 50; ++i) {
    const double a = 0.02 + i * (1.96 / 49);
    if (std::abs(a - 1) < 1e-9) continue;
    CHECK(check_mu_alpha_identity(a).passed());
  }
  CHECK_THROWS_AS(check_mu_alpha_identity(1.0), AlphaOutOfRange);
}

TEST_CASE("eigenvalue placement") {
  CHECK(check_eigenvalue_placement(0.3, DomainMode::Intersection, defaults).passed());
  CHECK(check_eigenvalue_placement(0.7, DomainMode::Union, defaults).passed());
  SolverSettings tight = defaults;
  tight.tol = 1e-8;
  const Certificate near_disk = check_eigenvalue_placement(0.05, DomainMode::Union, tight);
  CHECK(near_disk.passed());
  CHECK(measured(near_disk, "mu2 below 1") > 0.9);
  CHECK_THROWS_AS(check_eigenvalue_placement(0.5, DomainMode::Disk, defaults), std::invalid_argument);
}

TEST_CASE("Weinstock bound") {
  const Certificate c5 = check_weinstock(0.5, defaults);
  CHECK(c5.passed());
  CHECK(measured(c5, "mu2 <= 2 pi / perimeter") <= 0.75);
  for (const auto& [ell, bound] : {std::pair{0.9, 0.584}, std::pair{0.05, 0.969}}) {
    const Certificate c = check_weinstock(ell, defaults);
    CHECK(c.passed());
    double ref = 0;
    for (const Check& k : c.checks) {
      if (k.what == "mu2 <= 2 pi / perimeter") ref = k.reference;
    }
    CHECK(ref == doctest::Approx(bound).epsilon(1e-3));
    CHECK(measured(c, "mu2 <= 2 pi / perimeter") < ref);
  }
}

TEST_CASE("sector bounds") {
  const Certificate in = check_sector_bounds(0.5, DomainMode::Intersection, defaults);
  CHECK(in.passed());
  CHECK(in.checks[0].reference == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(check_sector_bounds(0.98, DomainMode::Intersection, defaults).passed());
  const Certificate un = check_sector_bounds(0.5, DomainMode::Union, defaults);
  CHECK(un.passed());
  CHECK(measured(un, "min positive ee eigenvalue above 1") > 1);
}

TEST_CASE("Morse index") {
  CHECK(measured(morse_index(0.5, defaults), "eigenvalues below 1") == 1);
  CHECK(measured(morse_index(1.5, defaults), "eigenvalues below 1") == 2);
  CHECK(measured(morse_index(0.9, defaults), "eigenvalues below 1") == 1);
  CHECK(measured(morse_index(1.1, defaults), "eigenvalues below 1") == 2);
  for (double a : {0.5, 0.9, 1.1, 1.5}) CHECK(morse_index(a, defaults).passed());
}

TEST_CASE("nondegeneracy pipeline and regular control") {
  CHECK(check_nondegeneracy_pipeline(0.5, defaults).passed());
  CHECK(check_nondegeneracy_pipeline(1.3, defaults).passed());
  CHECK(check_nondegeneracy_pipeline(0.7, defaults, 2.0).passed());
  const Certificate reg = check_regular_control(defaults);
  CHECK(reg.passed());
  CHECK(measured(reg, "multiplicity of eigenvalue 1") == 2);
  CHECK(check_fractional_residuals(1.7, 0.5).passed());
  CHECK(check_pullback_identity(0.5).passed());
}

TEST_CASE("certificates are reproducible bit for bit") {
  const auto dump = [](const Certificate& c) { return dump_json(certificate_to_json(c), -1); };
  CHECK(dump(check_nondegeneracy_pipeline(1.5, defaults)) == dump(check_nondegeneracy_pipeline(1.5, defaults)));
  CHECK(dump(check_sector_bounds(0.3, DomainMode::Union, defaults)) ==
        dump(check_sector_bounds(0.3, DomainMode::Union, defaults)));
  const auto a = half_plane_sample(200, 4), b = half_plane_sample(200, 4);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK((a[i].x() == b[i].x() && a[i].y() == b[i].y()));
}

TEST_CASE("eigenvalue branches are Lipschitz along the ell grid") {
  for (DomainMode m : {DomainMode::Intersection, DomainMode::Union}) {
    SweepRequest r;
    r.mode = m;
    for (int i = 1; i <= 19; ++i) r.ells.push_back(i * 0.05);
    r.k = 4;
    const auto rows = run_sweep(r, defaults);
    double lip = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      REQUIRE(rows[i].ok());
      for (int j = 0; j < r.k; ++j) {
        lip = std::max(lip, std::abs(rows[i].eigenvalues[j] - rows[i - 1].eigenvalues[j]) / 0.05);
      }
    }
    MESSAGE(to_string(m) << " empirical Lipschitz constant " << lip);
    CHECK(std::isfinite(lip));
  }
}
