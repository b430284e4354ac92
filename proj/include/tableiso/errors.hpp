#pragma once

#include <stdexcept>
#include <string>

namespace tableiso {

// Error kinds raised by table validation, algebra preconditions, parsing and
// the corpus constructors. Messages name the first offending element/triple.
enum class errc {
  entry_out_of_range,
  no_identity,
  missing_inverse,
  not_associative,
  invalid_order,
  not_a_subgroup,
  not_normal,
  not_generating,
  order_mismatch,
  choice_out_of_range,
  not_a_p_group,
  add_not_abelian_group,
  mul_not_associative,
  not_distributive,
  syntax_error,
  unknown_spec,
  too_large,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace tableiso
