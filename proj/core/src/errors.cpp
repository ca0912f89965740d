#include "fda/errors.hpp"

namespace fda {

std::string_view to_string(Errc code) {
  switch (code) {
  case Errc::parse: return "ParseError";
  case Errc::duplicate_name: return "DuplicateName";
  case Errc::unknown_generator: return "UnknownGenerator";
  case Errc::signature_mismatch: return "SignatureMismatch";
  case Errc::inhomogeneous_image: return "InhomogeneousImage";
  case Errc::bidegree_mismatch: return "BidegreeMismatch";
  case Errc::chain_map_violation: return "ChainMapViolation";
  case Errc::not_closed: return "NotClosed";
  case Errc::capped: return "Capped";
  case Errc::unsupported: return "Unsupported";
  case Errc::bad_indices: return "BadIndices";
  case Errc::zero_cocycle: return "ZeroCocycle";
  case Errc::rep_mismatch: return "RepMismatch";
  case Errc::not_proportional: return "NotProportional";
  case Errc::unknown_task: return "UnknownTask";
  case Errc::ledger_mismatch: return "LedgerMismatch";
  case Errc::io: return "IOError";
  }
  return "Unknown";
}

} // namespace fda
