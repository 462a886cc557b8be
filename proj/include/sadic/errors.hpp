#pragma once

#include <stdexcept>
#include <string>

namespace sadic {

enum class Errc {
  invalid_params,
  alphabet_mismatch,
  common_root,
  not_a_factor,
  ambiguous_edges,
  out_of_range,
  budget_exceeded,
  insufficient_depth,
  periodic,
  not_low_complexity,
  non_primitive,
  precision_insufficient,
  not_in_language,
  prefix_too_short,
  length_mismatch,
  parse_error,
  search_exhausted,
  formula_inapplicable,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc c, const std::string& what)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Materialisation budget in bytes. Defaults to SADIC_BUDGET_BYTES or 256 MiB.
std::size_t budget_bytes();
void set_budget_bytes(std::size_t b);

}  // namespace sadic
