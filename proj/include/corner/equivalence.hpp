#pragma once

#include <map>
#include <string>

#include "corner/atlas.hpp"

namespace corner {

// Outcome of comparing two blow-up atlases over the same base.
//
// Equivalent      - a full certificate was found: the hypersurface
//                   registries biject canonically, and certified overlap
//                   pieces of the interior-identity map cover every chart
//                   of both atlases, so the glued chart maps assemble to a
//                   diffeomorphism over the identity of the base.
// Uncertified     - registries biject but no complete certificate was
//                   found; the spaces may or may not be equivalent.
// RegistryMismatch - the registries admit no canonical bijection (different
//                   surviving original faces or different front faces); the
//                   spaces are proven inequivalent as labelled models.
enum class EquivVerdict { Equivalent, Uncertified, RegistryMismatch };

struct EquivReport {
  EquivVerdict verdict = EquivVerdict::Uncertified;
  std::string detail;  // reason for a non-Equivalent verdict
  // canonical label bijection (first atlas -> second); filled whenever the
  // registries biject, i.e. for every verdict except RegistryMismatch
  std::map<HypLabel, HypLabel> label_map;
};

// Decide equivalence of two iterated blow-ups of the same base.  Original
// labels must survive identically and front faces are matched by the centre
// they resolve; on top of that bijection the certificate demands certified
// overlap pieces of the identity covering every chart of both atlases.  The
// pieces all arise from exactly inverting blow-down chains over the same
// base identity, so covering both sides already forces the glued maps to be
// mutually inverse.  A positive answer is a proof; a negative one
// distinguishes proven label mismatch from mere failure to certify.  Throws
// PreconditionError when the bases differ.
EquivReport check_equivalence_report(const Atlas& A, const Atlas& B);

// convenience: true exactly when the report says Equivalent
bool check_equivalence(const Atlas& A, const Atlas& B);

}  // namespace corner
