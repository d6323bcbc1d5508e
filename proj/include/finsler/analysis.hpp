#pragma once

// Classification (Riemannian / Berwald / Landsberg) and the identity suite.
//
// All norms are max-abs over components and sample points; suprema over the
// indicatrix are estimates from the fixed sample set.

#include <string>
#include <vector>

#include "finsler/curvature.hpp"
#include "finsler/geodesics.hpp"
#include "finsler/parallel.hpp"

namespace finsler {

struct Thresholds {
  double tau = 1e-7;        ///< A, Adot and A_|l, relative
  double tau_p = 1e-6;      ///< P, relative to 1 + max|Gamma|
  double separation = 2.0;  ///< required orders of magnitude between norm and threshold
};

struct Verdict {
  bool value = false;
  std::string norm;       ///< deciding norm
  double measured = 0.0;  ///< relative norm compared with the threshold
  double threshold = 0.0;
  /// |log10(measured / threshold)|; infinite when measured is 0.
  double separation() const;
};

struct ClassificationReport {
  std::string metric;
  int samples = 0;

  double max_A = 0.0;
  double max_Adot = 0.0;
  double max_A_h = 0.0;            ///< max |A_ijk|l| (Chern)
  double max_P = 0.0;              ///< max |P| of the Chern connection
  double max_dGamma_berwald = 0.0; ///< max |d^3 G^i / dy^j dy^k dy^l|
  double max_g = 0.0;
  double max_Gamma = 0.0;

  Verdict riemannian;   ///< max|A| / (1 + max|g|) < tau
  Verdict landsberg;    ///< max|Adot| / (1 + max|A|) < tau
  Verdict berwald_h;    ///< max|A_|l| / (1 + max|A|) < tau
  Verdict berwald_p;    ///< max|P| / (1 + max|Gamma|) < tau_p

  bool is_riemannian = false;
  bool is_berwald = false;  ///< both Berwald criteria
  bool is_landsberg = false;
  bool criteria_agree = false;
  bool chain_ok = false;    ///< riemannian => berwald => landsberg
  double separation = 0.0;  ///< smallest verdict separation
  bool separated = false;
  ExpectedLabels expected;
  bool matches_expected = false;

  bool pass() const { return criteria_agree && chain_ok && matches_expected; }
};

ClassificationReport classify(const MetricSpec& spec, int n_samples, const Thresholds& th = {},
                              ExecMode mode = default_exec_mode());

struct Theorem2Report {
  std::string metric;
  FamilyParams params;
  int samples = 0;
  double max_P = 0.0;     ///< max |P| of the member, relative to 1 + max|Gamma|
  bool P_small = false;
  bool berwald = false;   ///< verdict from classify
  /// On Berwald metrics: max|Adot| and max over m of |Adot^(m)| (relative).
  double max_Adot = 0.0;
  double max_iterates = 0.0;
  bool iterates_vanish = true;
  bool pass = false;
};

Theorem2Report theorem2_check(const MetricSpec& spec, const FamilyParams& params, int n_samples,
                              const Thresholds& th = {}, ExecMode mode = default_exec_mode());

struct PathConfig {
  std::size_t count = 10;
  double t_max = 2.0;
  double dt = 1e-3;
  std::size_t stride = 20;
};

struct Theorem3Report {
  std::string metric;
  double k2 = 1.0;
  std::size_t paths = 0;
  double residual_derivative = 0.0;  ///< max |dAdot/dt - Addot|
  double residual_first = 0.0;       ///< max |dA/dt - Adot|
  double witness = 0.0;              ///< max |k2 Addot - Adot|
  double max_A = 0.0;
  double max_Adot = 0.0;
  double max_Addot = 0.0;
  double lambda = 0.0;               ///< flag curvature at the first start
  bool constant_curvature = false;   ///< K spread over starts below 1e-5
  double residual_constant_curvature = 0.0;  ///< max |Addot + lambda A|
  bool landsberg = false;
  bool consistent = false;  ///< witness small iff Landsberg
};

/// Pointwise ingredients only; the global statement (completeness and
/// boundedness) is not tested.
Theorem3Report theorem3_residual(const MetricSpec& spec, double k2, const PathConfig& cfg = {},
                                 ExecMode mode = default_exec_mode());

/// Flag curvature at `count` sample points with transverse edges from a
/// second sequence (edges nearly parallel to y are redrawn).
std::vector<FlagSample> sample_flags(const MetricSpec& spec, std::size_t count,
                                     ExecMode mode = default_exec_mode());

struct IdentityRow {
  std::string identity;
  std::string eq;  ///< the identity written out
  double residual = 0.0;
  double tol = 0.0;
  std::string status;  ///< "pass", "fail" or "skipped: <cause>"

  bool ok() const { return status == "pass"; }
};

struct IdentityReport {
  std::string metric;
  FamilyParams params;
  int samples = 0;
  std::vector<IdentityRow> rows;

  bool all_pass() const;
  const IdentityRow& row(const std::string& identity) const;
};

/// Residuals are max over samples of max|lhs - rhs| / (1 + max|terms|).
IdentityReport verify_identities(const MetricSpec& spec, const FamilyParams& params, int n_samples,
                                 ExecMode mode = default_exec_mode());

/// Identifiers of the registered identities, in report order.
std::vector<std::string> identity_names();

}  // namespace finsler
