#pragma once

// Families of affine p-submanifolds: simultaneous normalizability (one
// adapted coordinate frame near every point), intersection closure, and the
// order classes controlling permissible blow-up sequences.

#include "corner/finset.hpp"
#include "corner/psub.hpp"

namespace corner {

struct PCleanFamily {
  std::vector<AffinePSub> elements;
  bool closure_flag = false;  // every pairwise nonempty intersection listed
};

// smallest superfamily closed under pairwise nonempty intersection
PCleanFamily intersection_closure(const PCleanFamily& fam);

bool family_is_closed(const PCleanFamily& fam);

// one common adapted frame near every point of the union; false as well
// when some member is not individually p-positioned
bool is_p_clean(const PCleanFamily& fam);

enum class OrderClass { SizeOrder, IntersectionOrder, Neither };

const char* order_class_name(OrderClass c);

// classifies the listed order of an intersection-closed family; throws
// PreconditionError when the family is not closed
OrderClass order_class(const PCleanFamily& ordered);

// the multidiagonal of a partition: z_i = z_j (componentwise, fibre width
// kappa) whenever i, j share a block; fibre copy i occupies coordinates
// fibre_offset + (i-1)*kappa .. + kappa - 1; pins are boundary coordinates
// set to zero
AffinePSub diagonal_psub(const OrthantChart& chart, int fibre_offset, int k,
                         int kappa, const Partition& part,
                         const std::vector<int>& pins);

// multidiagonals for all non-discrete partitions of {1..k} in the model
// chart [0,1]^(scl) x R^(k*kappa); with scl a leading boundary coordinate
// (label 0) is pinned to zero in every element
PCleanFamily diagonal_family(int k, int kappa, bool scl);

}  // namespace corner
