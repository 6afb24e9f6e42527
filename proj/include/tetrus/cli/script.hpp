#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tetrus/word.hpp"

// The workbench input language. One statement per line (or separated by ';'),
// '#' starts a comment:
//
//   group <id> free <gen>, <gen>
//   hom <id> : <group> -> Z<n> { <gen> -> <residue>, ... }
//   sub <id> = kernel <hom>
//   sub <id> = < <word>, ... >
//   diamond <id> = <sub> ^ <sub>
//   analyze <sub>
//   surface build-tetrus
//   verify theorem1
//
// Free groups have rank two; their generators play the roles of x and h in
// order. Word lists are read over the most recently declared group, or over
// x, h when none has been declared.
namespace tetrus::cli {

struct Span {
  int line = 1;
  int column = 1;
  friend bool operator==(const Span&, const Span&) = default;
};

struct Diagnostic {
  Span span;
  std::string token;  // offending token, empty at end of input
  std::string message;
  std::string str() const;  // "line:column: message (at 'token')"
};

struct GroupDecl {
  std::string id;
  std::vector<std::string> generators;
  friend bool operator==(const GroupDecl&, const GroupDecl&) = default;
};

struct HomDecl {
  std::string id;
  std::string group;
  long long modulus = 1;
  std::vector<std::pair<std::string, long long>> images;  // residues in [0, modulus)
  friend bool operator==(const HomDecl&, const HomDecl&) = default;
};

struct KernelSub {
  std::string id;
  std::string hom;
  friend bool operator==(const KernelSub&, const KernelSub&) = default;
};

struct GeneratedSub {
  std::string id;
  std::string group;             // empty for the default alphabet x, h
  std::vector<FreeWord> words;   // reduced
  friend bool operator==(const GeneratedSub&, const GeneratedSub&) = default;
};

struct DiamondDecl {
  std::string id;
  std::string left;
  std::string right;
  friend bool operator==(const DiamondDecl&, const DiamondDecl&) = default;
};

struct Analyze {
  std::string sub;
  friend bool operator==(const Analyze&, const Analyze&) = default;
};

struct BuildSurface {
  friend bool operator==(const BuildSurface&, const BuildSurface&) = default;
};

struct VerifyTheorem {
  friend bool operator==(const VerifyTheorem&, const VerifyTheorem&) = default;
};

using StatementBody =
    std::variant<GroupDecl, HomDecl, KernelSub, GeneratedSub, DiamondDecl, Analyze, BuildSurface, VerifyTheorem>;

struct Statement {
  Span span;
  StatementBody body;
  // Source positions are not part of a statement's identity.
  friend bool operator==(const Statement& a, const Statement& b) { return a.body == b.body; }
};

struct Script {
  std::vector<Statement> statements;
  friend bool operator==(const Script&, const Script&) = default;
};

struct ParseResult {
  Script script;
  std::vector<Diagnostic> diagnostics;  // empty iff the script is valid
  bool ok() const { return diagnostics.empty(); }
};

// Lexes, parses and scope-checks. Never throws on bad input; every problem
// becomes a diagnostic and parsing resumes at the next statement.
ParseResult parse_script(std::string_view text);

// Canonical source text; parse_script(print_script(s)) reproduces s.
std::string print_script(const Script& s);

}  // namespace tetrus::cli
