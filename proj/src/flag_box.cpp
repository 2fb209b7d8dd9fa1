#include "ccqo/flag_box.hpp"

namespace ccqo {

FlagBox::FlagBox(int p) {
  if (p < 1) throw InvalidInputError("flag box dimension must be positive");
  flags_.assign(static_cast<std::size_t>(p), std::uint8_t{1});
}

FlagBox FlagBox::child_with(int eta, std::uint8_t f) const {
  FlagBox child = *this;
  child.flags_[static_cast<std::size_t>(eta)] = f;
  if (f == 0)
    ++child.count_zero_;
  else
    ++child.count_two_;
  return child;
}

std::pair<FlagBox, FlagBox> FlagBox::branch(int eta) const {
  if (eta < 0 || eta >= dim())
    throw NotBranchableError("branch coordinate out of range");
  if (flag(eta) != 1)
    throw NotBranchableError("coordinate " + std::to_string(eta) + " has flag " +
                             std::to_string(flag(eta)) + ", expected 1");
  return {child_with(eta, 0), child_with(eta, 2)};
}

IndexSet FlagBox::support() const {
  IndexSet s;
  s.reserve(flags_.size());
  for (int i = 0; i < dim(); ++i)
    if (flag(i) != 0) s.push_back(i);
  return s;
}

IndexSet FlagBox::indices_with_flag(std::uint8_t f) const {
  IndexSet s;
  for (int i = 0; i < dim(); ++i)
    if (flag(i) == f) s.push_back(i);
  return s;
}

std::string FlagBox::to_string() const {
  std::string s(flags_.size(), '0');
  for (std::size_t i = 0; i < flags_.size(); ++i) s[i] = static_cast<char>('0' + flags_[i]);
  return s;
}

FlagBox initial_flagbox(int p) { return FlagBox(p); }

DeletionVerdict check_deletion(const FlagBox& fb, int k) {
  const int p = fb.dim();
  if (k < 1 || k >= p) throw InvalidInputError("need 1 <= k < p");
  if (fb.count_two() > k) return {VerdictKind::Infeasible, {}};       // D1
  if (fb.count_zero() > p - k) return {VerdictKind::Infeasible, {}};  // D2
  if (fb.count_two() == k)                                            // D3
    return {VerdictKind::TerminalFixedSupport, fb.indices_with_flag(2)};
  if (fb.count_zero() == p - k)                                       // D4
    return {VerdictKind::TerminalFreeSupport, fb.support()};
  return {VerdictKind::Continue, {}};
}

const char* to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Infeasible: return "Infeasible";
    case VerdictKind::TerminalFixedSupport: return "TerminalFixedSupport";
    case VerdictKind::TerminalFreeSupport: return "TerminalFreeSupport";
    case VerdictKind::Continue: return "Continue";
  }
  return "?";
}

}  // namespace ccqo
