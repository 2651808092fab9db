#pragma once

#include <stdexcept>
#include <string>

namespace rndop {

enum class Errc {
  non_finite,
  singular_update,
  not_positive_definite,
  non_positive_trace,
  degenerate_geometry,
  not_centered,
  singular_c,
  singular_e,
  zero_feasible,
  empty_region,
  no_feasible_init,
  too_few_records,
  insufficient_sweep,
  invalid_config,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace rndop
