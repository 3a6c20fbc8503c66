#pragma once

#include <stdexcept>
#include <string>

namespace moddiag {

enum class Err {
  AmbientMismatch,
  NotASubspace,
  NotAssociative,
  NoIdentity,
  GroupClosureOverflow,
  NotSplit,
  NotInvariant,
  NotNested,
  Undecided,
  NotSelfInjective,
  HeadNotSimple,
  SlotMismatch,
  MixedProfiles,
  NotIndependent,
  NotSubmodule,
  NotNestedSections,
  NotQuotient,
  NotVisible,
  NoCommonSection,
  TuningConflict,
  DimCapExceeded,
  BadInput,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
public:
  Err kind;
  Error(Err k, const std::string& msg)
      : std::runtime_error(std::string(err_name(k)) + ": " + msg), kind(k) {}
};

[[noreturn]] inline void fail(Err k, const std::string& msg) { throw Error(k, msg); }

}  // namespace moddiag
