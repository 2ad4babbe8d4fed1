#pragma once

#include <stdexcept>
#include <string>

namespace isc {

// Bad user data: malformed files, violated input invariants. CLI exit 3.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StratumNotClosed : public InvalidInput {
 public:
  StratumNotClosed(const std::string& coface, const std::string& face)
      : InvalidInput("stratum closure violated: face " + face + " of " + coface + " lies in a shallower stratum"),
        coface_id(coface),
        face_id(face) {}
  std::string coface_id, face_id;
};

class ForbiddenCodimensionOne : public InvalidInput {
 public:
  explicit ForbiddenCodimensionOne(const std::string& stratum)
      : InvalidInput("stratum " + stratum + " has codimension 1"), name(stratum) {}
  std::string name;
};

class NotACocycle : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// An internal consistency check failed. CLI exit 4.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The truncation triangle at some codimension does not split, so this tower
// branch has no intersection space complex. CLI exit 2.
class ObstructionNonzero : public std::runtime_error {
 public:
  ObstructionNonzero(int codim, int ext1, std::string witness)
      : std::runtime_error("no retraction at codimension " + std::to_string(codim)),
        codim(codim),
        ext1_dim(ext1),
        witness(std::move(witness)) {}
  int codim;
  int ext1_dim;
  std::string witness;
};

// generic_betti could not find two samples agreeing on the minimum
class MinimumUnstable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace isc
