#pragma once

#include <stdexcept>
#include <string>

namespace hoeffding {

enum class errc {
  bad_input,
  negative_weight,
  sum_not_one,
  degenerate_marginal,
  missing_subset_key,
  mismatched_atoms,
  cell_not_in_support,
  inadmissible_rho,
  not_product_form,
  assumption1_not_verified,
  assumption_failed,
  dimension_mismatch,
  singular_system,
  degenerate_tilde,
};

// Exit-code contract: 2 input/format error, 3 assumption failure,
// 4 numerical failure.
constexpr int exit_code_for(errc c) {
  switch (c) {
    case errc::bad_input:
    case errc::negative_weight:
    case errc::sum_not_one:
    case errc::degenerate_marginal:
    case errc::missing_subset_key:
    case errc::mismatched_atoms:
    case errc::cell_not_in_support:
    case errc::inadmissible_rho:
    case errc::not_product_form:
      return 2;
    case errc::assumption1_not_verified:
    case errc::assumption_failed:
      return 3;
    case errc::dimension_mismatch:
    case errc::singular_system:
    case errc::degenerate_tilde:
      return 4;
  }
  return 1;
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  errc code() const noexcept { return code_; }
  int exit_code() const noexcept { return exit_code_for(code_); }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace hoeffding
