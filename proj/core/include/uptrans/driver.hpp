#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uptrans/stdlib.hpp"

namespace uptrans {

enum class Status { Ok, Fail, Inconclusive };
enum class Command { Check, Translate, Transport, Replay, Bench };
enum class ReportFormat { Text, JsonLines };

const char* status_name(Status s);
std::optional<Command> parse_command(const std::string& s);

struct Report {
  std::string name;
  Status status = Status::Ok;
  std::string mode;  // check, translate, whitebox, blackbox, goal, direct, replaced, decl
  std::vector<std::pair<std::string, std::string>> derived;  // label, printed term
  uint64_t steps = 0;
  std::vector<std::string> axioms;
  std::string message;
  double elapsed_ms = 0;
};

struct RunOptions {
  uint64_t budget = kDefaultBudget;
};

struct RunResult {
  std::vector<Report> reports;
  int exit_code = 0;  // 0 ok, 1 some item failed, 2 parse error
};

// Declaration files are processed in order over a copy of the prelude.
// check: abstraction check of every def (the built-in corpus without files).
// translate: prints the translations of every def (the corpus without files).
// transport: runs transport and goal declarations.
// replay: runs the embedded corpus, then the files.
// bench: runs every goal twice, by direct evaluation and after goal replacement.
RunResult run(Command command, const std::vector<SourceFile>& files, const RunOptions& opts = {});

// Runs declarations over lib as `command` would and returns their reports.
// Transports and goals extend lib. Deep terms need with_large_stack.
std::vector<Report> process(Library& lib, Command command, const std::vector<Decl>& decls,
                            const RunOptions& opts = {});

std::string emit_report(const std::vector<Report>& reports, ReportFormat format);

}  // namespace uptrans
