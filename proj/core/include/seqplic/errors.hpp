#pragma once

#include <stdexcept>
#include <string>

namespace seqplic {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SEQPLIC_DEFINE_ERROR(Name)            \
  class Name : public Error {                 \
   public:                                    \
    using Error::Error;                       \
  }

SEQPLIC_DEFINE_ERROR(NonPlanarFace);
SEQPLIC_DEFINE_ERROR(DegenerateFace);
SEQPLIC_DEFINE_ERROR(OpenSurface);
SEQPLIC_DEFINE_ERROR(StarPointViolation);
SEQPLIC_DEFINE_ERROR(DegenerateNormals);
SEQPLIC_DEFINE_ERROR(LineParallelToFace);
SEQPLIC_DEFINE_ERROR(ParallelEdge);
SEQPLIC_DEFINE_ERROR(EmptyTruncation);
SEQPLIC_DEFINE_ERROR(FullTruncation);
SEQPLIC_DEFINE_ERROR(InfeasibleFractions);
SEQPLIC_DEFINE_ERROR(NoConvergence);
SEQPLIC_DEFINE_ERROR(ParseError);

#undef SEQPLIC_DEFINE_ERROR

}  // namespace seqplic
