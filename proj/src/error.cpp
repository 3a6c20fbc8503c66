#include "moddiag/error.hpp"

namespace moddiag {

const char* err_name(Err e) {
  switch (e) {
    case Err::AmbientMismatch: return "AmbientMismatch";
    case Err::NotASubspace: return "NotASubspace";
    case Err::NotAssociative: return "NotAssociative";
    case Err::NoIdentity: return "NoIdentity";
    case Err::GroupClosureOverflow: return "GroupClosureOverflow";
    case Err::NotSplit: return "NotSplit";
    case Err::NotInvariant: return "NotInvariant";
    case Err::NotNested: return "NotNested";
    case Err::Undecided: return "Undecided";
    case Err::NotSelfInjective: return "NotSelfInjective";
    case Err::HeadNotSimple: return "HeadNotSimple";
    case Err::SlotMismatch: return "SlotMismatch";
    case Err::MixedProfiles: return "MixedProfiles";
    case Err::NotIndependent: return "NotIndependent";
    case Err::NotSubmodule: return "NotSubmodule";
    case Err::NotNestedSections: return "NotNestedSections";
    case Err::NotQuotient: return "NotQuotient";
    case Err::NotVisible: return "NotVisible";
    case Err::NoCommonSection: return "NoCommonSection";
    case Err::TuningConflict: return "TuningConflict";
    case Err::DimCapExceeded: return "DimCapExceeded";
    case Err::BadInput: return "BadInput";
  }
  return "Unknown";
}

}  // namespace moddiag
