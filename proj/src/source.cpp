#include "umlsem/source.hpp"

namespace umlsem {

std::string SourcePos::to_string() const {
  if (!valid()) return document.empty() ? "<unknown>" : document;
  return (document.empty() ? std::string("<input>") : document) + ":" + std::to_string(line) + ":" +
         std::to_string(column);
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::Resolve: return "ResolveError";
    case ErrorKind::UnknownClass: return "UnknownClass";
    case ErrorKind::SignatureConflict: return "SignatureConflict";
    case ErrorKind::CyclicInheritance: return "CyclicInheritance";
    case ErrorKind::CompositionMultiplicity: return "CompositionMultiplicity";
    case ErrorKind::NoInitial: return "NoInitial";
    case ErrorKind::UnknownSelector: return "UnknownSelector";
    case ErrorKind::GuardType: return "GuardTypeError";
    case ErrorKind::HorizonTooLarge: return "HorizonTooLarge";
    case ErrorKind::NoSts: return "NoSts";
    case ErrorKind::InitialStateEmpty: return "InitialStateEmpty";
    case ErrorKind::UnknownRoleClass: return "UnknownRoleClass";
    case ErrorKind::Precondition: return "PreconditionError";
  }
  return "Error";
}

namespace {

std::string format(ErrorKind kind, const std::string& message, const SourcePos& pos) {
  std::string out = pos.valid() ? pos.to_string() + ": " : std::string();
  out += to_string(kind);
  out += ": ";
  out += message;
  return out;
}

std::string describe_expected(const std::vector<std::string>& expected, const std::string& found) {
  std::string msg = "unexpected " + found;
  if (!expected.empty()) {
    msg += ", expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
  }
  return msg;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, SourcePos pos)
    : std::runtime_error(format(kind, message, pos)), kind_(kind), pos_(std::move(pos)), detail_(message) {}

SyntaxError::SyntaxError(SourcePos pos, std::vector<std::string> expected, const std::string& found)
    : Error(ErrorKind::Syntax, describe_expected(expected, found), std::move(pos)), expected_(std::move(expected)) {}

ResolveError::ResolveError(std::string name, SourcePos pos, const std::string& why)
    : Error(ErrorKind::Resolve, why + " '" + name + "'", std::move(pos)), name_(std::move(name)) {}

}  // namespace umlsem
