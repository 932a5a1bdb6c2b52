#pragma once

// Named verification suites. Each suite regenerates its inputs from the
// seed, runs a list of numeric checks, and passes iff every check passes.

#include "wrlat/scan.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wrlat {

struct Check {
  std::string description;
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct VerificationOutcome {
  std::string suite;
  std::vector<Check> checks;

  bool passed() const;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  // Replaces the default tolerance of checks that compare against one.
  std::optional<double> tol;
  std::optional<int> grid_width;
  std::optional<int> grid_height;
  double im_max = 2.0;
  // thm12-odd: run only this p (default runs p = 1 and p = 2).
  std::optional<int> p;
  // claim-g2: write the scan CSV here.
  std::optional<std::string> out_csv;
  Execution exec = Execution::Parallel;

  double tol_or(double fallback) const { return tol.value_or(fallback); }
};

struct UnknownSuiteError : Error {
  using Error::Error;
};

const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws UnknownSuiteError.
std::vector<VerificationOutcome> run_suite(const std::string& name, const VerifyOptions& opt = {});

VerificationOutcome verify_hex_systole(const VerifyOptions& opt);
VerificationOutcome verify_hex_maximality(const VerifyOptions& opt);
VerificationOutcome verify_flow_oracle(const VerifyOptions& opt);
VerificationOutcome verify_flow_generic(const VerifyOptions& opt);
VerificationOutcome verify_equivariance(const VerifyOptions& opt);
VerificationOutcome verify_product_systoles(const VerifyOptions& opt);
VerificationOutcome verify_claim_g2(const VerifyOptions& opt);
VerificationOutcome verify_qjq(const VerifyOptions& opt);
VerificationOutcome verify_thm12_odd_suite(const VerifyOptions& opt);
VerificationOutcome verify_bavard_witness(const VerifyOptions& opt);

}  // namespace wrlat
