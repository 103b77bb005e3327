#pragma once

#include <stdexcept>
#include <string>

namespace orbitrank {

// Error kinds raised across the library. Each operation documents which
// kinds it can throw; messages carry the witness data (offending level,
// node id, point pair, ...).
enum class Err {
  // ordinal
  DepthBudgetExceeded,
  // wftree
  CycleDetected,
  DanglingParent,
  LevelMismatch,
  NodeNotFound,
  MapNotTotal,
  // eqseq
  NotAPartition,
  NotDecreasing,
  NotEventuallyDiscrete,
  NotInjective,
  NotAReduction,
  NotSurjective,
  NotClassSurjective,
  // permgroup
  BudgetExceeded,
  NotASubgroup,
  ChainNotTrivialAtEnd,
  IndexOutOfRange,
  NotNormal,
  NoInterleaving,
  // symrank
  WreathOperandUnsupported,
  LimitHypothesisFails,
  // spec files
  SyntaxError,
  UnknownName,
  DuplicateName,
  ValidationError,
};

const char* err_name(Err kind);

class Error : public std::runtime_error {
 public:
  Error(Err kind, const std::string& message)
      : std::runtime_error(std::string(err_name(kind)) + ": " + message),
        kind_(kind) {}

  Err kind() const { return kind_; }

 private:
  Err kind_;
};

}  // namespace orbitrank
