#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "cycdesc/cycles.hpp"
#include "cycdesc/descent.hpp"

namespace cycdesc {

struct TaskSpec {
  std::string command;
  std::vector<std::string> args;
  int line = 0;
};

/// A parsed problem file: declarations in file order plus the task list.
///
/// Grammar, one declaration per line ('#' starts a comment):
///   field Q | field Fp <p>
///   ring <name> vars <v1> <v2> ...
///   scheme <name> piece <p> ring <r> ideal <poly>; <poly> [piece ...]
///   morphism <name> <X> -> <Y> piece <a>-><b> map <v>=<poly>, ... [piece ...] [assert <prop>,...]
///   compose <name> <f> then <g>
///   subscheme <name> scheme <S> piece <p> ideal <poly>; ... [piece ...]
///   point <name> scheme <S> piece <p> prime <poly>; ... [asserted]
///   cycle <name> scheme <S> terms <int>*<point> ...
///   task <command> <args>
class Problem {
 public:
  using Object = std::variant<RingPtr, SchemePtr, MorphismPtr, ClosedSubscheme, SchemePoint, Cycle>;

  /// Throws Error with Syntax, UnresolvedReference, IllDefinedMorphism or
  /// InvalidDeclaration; messages carry "line L, column C".
  static Problem parse(std::string_view text);

  /// Canonical text; parse(print()) prints identically.
  std::string print() const;

  const FieldPtr& field() const { return field_; }
  const std::vector<TaskSpec>& tasks() const { return tasks_; }

  template <typename T>
  const T& get(const std::string& name) const;
  bool has(const std::string& name) const { return objects_.count(name) > 0; }

  /// Names of declared objects of kind T, in file order.
  template <typename T>
  std::vector<std::string> names() const;
  std::vector<std::string> morphism_names() const;

 private:
  struct Decl {
    std::string name;
    std::string text;  // canonical declaration line
  };

  FieldPtr field_;
  std::map<std::string, Object> objects_;
  std::vector<Decl> decls_;
  std::vector<TaskSpec> tasks_;

  friend class ProblemParser;
};

/// One "key: value" line of a report.
using ReportField = std::pair<std::string, std::string>;

struct TaskReport {
  std::string task;  // "pullback f Zeta"
  std::vector<ReportField> fields;
};

struct Report {
  std::vector<ReportField> header;
  std::vector<TaskReport> tasks;
  /// 0, or the ErrorCode value of the failure that stopped the run.
  int exit_code = 0;

  std::string to_text() const;
};

/// Runs every task (or only those whose command equals `only`, if given).
/// A task error stops the run and is recorded as an "error" field.
Report run_problem(const Problem& problem, const std::string& only = {});

/// One task against a parsed problem.
TaskReport run_task(const Problem& problem, const TaskSpec& task);

struct CorpusEntry {
  std::string name;
  bool matched = false;
  std::string detail;
};

/// Runs every "<name>.cyc" in `dir` whose file name matches `filter` (a
/// shell glob; empty means all) and compares with "<name>.golden".
/// With `update`, golden files are rewritten instead.
std::vector<CorpusEntry> verify_corpus(const std::string& dir, const std::string& filter = {}, bool update = false);

}  // namespace cycdesc
