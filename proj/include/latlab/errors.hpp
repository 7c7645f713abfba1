#pragma once

#include <stdexcept>
#include <string>

namespace latlab {

// Rejected input or violated precondition. Callers can recover from these.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LATLAB_DEFINE_ERROR(name)            \
  class name : public error {                \
   public:                                   \
    using error::error;                      \
  }

LATLAB_DEFINE_ERROR(dimension_error);
LATLAB_DEFINE_ERROR(singular_error);
LATLAB_DEFINE_ERROR(shape_error);
LATLAB_DEFINE_ERROR(degeneracy_error);
LATLAB_DEFINE_ERROR(evenness_error);
LATLAB_DEFINE_ERROR(domain_error);
LATLAB_DEFINE_ERROR(primitivity_error);
LATLAB_DEFINE_ERROR(containment_error);
LATLAB_DEFINE_ERROR(parameter_error);
LATLAB_DEFINE_ERROR(precondition_error);
LATLAB_DEFINE_ERROR(glue_error);
LATLAB_DEFINE_ERROR(consistency_error);
LATLAB_DEFINE_ERROR(budget_error);
LATLAB_DEFINE_ERROR(generation_error);
LATLAB_DEFINE_ERROR(schema_error);

#undef LATLAB_DEFINE_ERROR

// A lattice-theoretic identity failed on valid input. Always a bug.
class invariant_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void check_invariant(bool ok, const std::string& what) {
  if (!ok) throw invariant_violation(what);
}

}  // namespace latlab
