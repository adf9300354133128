#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace umlsem {

/// Location of a syntactic element. Lines and columns are 1-based; a
/// default-constructed position (line 0) means "no source".
struct SourcePos {
  std::string document;
  int line = 0;
  int column = 0;

  bool valid() const { return line > 0; }
  std::string to_string() const;

  auto operator<=>(const SourcePos&) const = default;
};

enum class ErrorKind {
  Syntax,
  Resolve,
  UnknownClass,
  SignatureConflict,
  CyclicInheritance,
  CompositionMultiplicity,
  NoInitial,
  UnknownSelector,
  GuardType,
  HorizonTooLarge,
  NoSts,
  InitialStateEmpty,
  UnknownRoleClass,
  Precondition,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, SourcePos pos = {});

  ErrorKind kind() const { return kind_; }
  const SourcePos& pos() const { return pos_; }
  /// Message without the kind/position prefix.
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  SourcePos pos_;
  std::string detail_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(SourcePos pos, std::vector<std::string> expected, const std::string& found);

  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::vector<std::string> expected_;
};

class ResolveError : public Error {
 public:
  ResolveError(std::string name, SourcePos pos, const std::string& why = "unresolved name");

  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

}  // namespace umlsem
