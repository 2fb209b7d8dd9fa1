#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ccqo/types.hpp"

namespace ccqo {

/// Integer-flag encoding of a search sub-box, one flag per coordinate:
///   0 - coordinate fixed to the degenerate interval [0,0]
///   1 - interval still contains 0 (undecided)
///   2 - interval excludes 0 (coordinate forced nonzero)
/// Flags replace interval boxes entirely; the original SearchBox is kept once,
/// globally. Immutable value type.
class FlagBox {
 public:
  /// All flags 1 (the initial box).
  explicit FlagBox(int p);

  int dim() const { return static_cast<int>(flags_.size()); }
  std::uint8_t flag(int i) const { return flags_[static_cast<std::size_t>(i)]; }
  int count_zero() const { return count_zero_; }
  int count_two() const { return count_two_; }
  int count_one() const { return dim() - count_zero_ - count_two_; }

  /// Split at coordinate eta (must have flag 1) into the child fixing the
  /// coordinate to zero and the child forcing it nonzero.
  std::pair<FlagBox, FlagBox> branch(int eta) const;

  /// Indices with flag != 0.
  IndexSet support() const;

  /// Indices carrying a given flag value.
  IndexSet indices_with_flag(std::uint8_t f) const;

  /// Digit string, e.g. "20111".
  std::string to_string() const;

  bool operator==(const FlagBox& other) const { return flags_ == other.flags_; }

 private:
  FlagBox child_with(int eta, std::uint8_t f) const;

  std::vector<std::uint8_t> flags_;
  int count_zero_ = 0;
  int count_two_ = 0;
};

FlagBox initial_flagbox(int p);

enum class VerdictKind {
  Infeasible,            // D1 or D2: no feasible sub-box remains
  TerminalFixedSupport,  // D3: flag-2 count equals k; remaining 1s collapse to 0
  TerminalFreeSupport,   // D4 (and not D3): flag-0 count equals p-k
  Continue,
};

struct DeletionVerdict {
  VerdictKind kind = VerdictKind::Continue;
  IndexSet support;  // resolved support for terminal verdicts
};

/// Apply the deletion/terminality conditions with priority D1/D2 > D3 > D4.
DeletionVerdict check_deletion(const FlagBox& fb, int k);

const char* to_string(VerdictKind kind);

}  // namespace ccqo
