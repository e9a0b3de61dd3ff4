#pragma once

#include <stdexcept>
#include <string>

namespace corner {

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// composition would leave the representable map class
struct UnsupportedComposition : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// blow-up center is not normalizable in some chart it meets
struct NotPPositioned : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// a lifted submanifold stopped being affine in blow-up coordinates
struct LiftLeavesAffineClass : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// a lifted map could not be expressed on some chart of the source
struct ChartCoverageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace corner
