#pragma once

#include <stdexcept>
#include <string>

namespace thinmono {

// Base for all input/contract errors raised by the toolkit. Mathematical
// failures of a certificate are never exceptions; they live in reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define THINMONO_DEFINE_ERROR(Name)          \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  }

THINMONO_DEFINE_ERROR(GaloisClosureError);
THINMONO_DEFINE_ERROR(DegreeError);
THINMONO_DEFINE_ERROR(FormNotUniqueError);
THINMONO_DEFINE_ERROR(DegenerateFormError);
THINMONO_DEFINE_ERROR(IndexNotFoundError);
THINMONO_DEFINE_ERROR(SingularTransformError);
THINMONO_DEFINE_ERROR(InvolutionPropertyError);
THINMONO_DEFINE_ERROR(NotFiniteOrderError);
THINMONO_DEFINE_ERROR(DivergenceError);
THINMONO_DEFINE_ERROR(CoprimalityError);
THINMONO_DEFINE_ERROR(SchemaError);
THINMONO_DEFINE_ERROR(DuplicateIdError);
THINMONO_DEFINE_ERROR(MissingCertificateError);

#undef THINMONO_DEFINE_ERROR

}  // namespace thinmono
