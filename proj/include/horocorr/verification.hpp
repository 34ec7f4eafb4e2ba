#pragma once

#include <functional>
#include <string>
#include <vector>

#include "horocorr/catalog.hpp"

namespace horocorr {

/// Accumulates named checks; a criterion passes when every check passes.
class CheckLog {
 public:
  /// Records `what` with the measured value and the bound it was held to.
  void expect(bool ok, const std::string& what);
  void note(const std::string& what) { lines_.push_back("  . " + what); }
  bool ok() const { return ok_; }
  const std::vector<std::string>& lines() const { return lines_; }
  std::string first_failure() const { return first_failure_; }

 private:
  bool ok_ = true;
  std::vector<std::string> lines_;
  std::string first_failure_;
};

struct CriterionResult {
  int id = 0;
  std::string tag;
  std::string title;
  bool passed = false;
  std::vector<std::string> details;
  std::string first_failure;
  double seconds = 0.0;
};

struct Criterion {
  int id = 0;
  std::string tag;
  std::string title;
  std::function<void(CheckLog&)> run;
};

std::vector<Criterion> acceptance_criteria();

/// Runs the criteria whose id or tag equals `filter` (all when empty). An
/// exception inside a criterion is recorded as its failure.
std::vector<CriterionResult> run_acceptance(const std::string& filter = {});

/// Points at polar angles 2^-1, ..., 2^-count from `boundary_point`.
std::vector<SpherePoint> dyadic_approach(const SpherePoint& boundary_point, int count);

/// Fourth-order Runge-Kutta solution of Y' = Y^2 + A, Y(0) = y0, at time t.
double rk4_riccati_oracle(double A, double y0, double t, int steps);

struct ExpectationResult {
  std::string name;
  std::string kind;
  bool passed = false;
  double measured = 0.0;  // worst deviation found, or the last beta for beta_diverges
  double tolerance = 0.0;
  std::string detail;
};

/// Checks one expectation of `entry` on `grid`. Flow-dependent kinds are
/// checked at every t in `times`.
ExpectationResult check_expectation(const CatalogEntry& entry, const Expectation& e,
                                    const ParameterGrid& grid, const std::vector<double>& times);
std::vector<ExpectationResult> check_expectations(const CatalogEntry& entry,
                                                  const ParameterGrid& grid,
                                                  const std::vector<double>& times);

}  // namespace horocorr
