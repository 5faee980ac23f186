#pragma once

// Orchestration behind the command-line tool: staged verification of one
// spec, corpus enumeration, and report summaries.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "holo/io.hpp"

namespace holo {

enum class Stage { canonical, berger, realize, probe };

const char* stage_name(Stage s);
/// Comma-separated stage names, returned in pipeline order without
/// duplicates. Throws SpecError on an empty list or an unknown name.
std::vector<Stage> parse_stages(const std::string& text);

struct RunConfig {
  std::filesystem::path input;
  std::vector<Stage> stages{Stage::canonical, Stage::berger, Stage::realize, Stage::probe};
  ProbeConfig probe;
  std::filesystem::path output;
  std::uint64_t seed = 0;
  /// Adds wall-clock timings to the report, which makes it nondeterministic.
  bool timing = false;

  /// Throws SpecError when stages are empty or a tolerance is not positive.
  void validate() const;
};

struct Report {
  Json body;
  bool pass = false;
};

/// Runs the requested stages in pipeline order. Verification failures are
/// recorded in the report; SpecError (including UnsupportedError) propagates.
Report run_verify(const PencilSpec& spec, const RunConfig& config);

/// Partitions of n as ascending part lists, in lexicographic order.
std::vector<std::vector<std::size_t>> partitions(std::size_t n);

/// Sign patterns for an ascending partition: within each run of equal sizes
/// '+' precedes '-', and patterns equal up to a global flip appear once (the
/// lexicographically smaller representative, '+' < '-').
std::vector<std::string> sign_classes(const std::vector<std::size_t>& partition);

struct CorpusEntry {
  std::string name;  // n{n}_p{parts joined by '-'}_s{signs}
  PencilSpec spec;
};

/// Nilpotent single-eigenvalue specs for 2 <= n <= max_n.
/// Throws SpecError unless 2 <= max_n <= 8.
std::vector<CorpusEntry> corpus(std::size_t max_n);

/// Writes one JSON file per corpus entry; returns the paths in corpus order.
std::vector<std::filesystem::path> write_corpus(std::size_t max_n, const std::filesystem::path& dir);

struct SummaryRow {
  std::string file;
  std::string status;  // pass, fail or error
  std::size_t n = 0;
  std::string partition;
  std::string signs;
  std::string dim_gL;
  std::string berger;
  std::string realize;
  std::string probe_rank;
  std::string probe_residual;
  std::string message;
};

struct Summary {
  std::vector<SummaryRow> rows;  // error rows first, then failures, then passes
  int exit_code = 0;             // 2 if any error, else 1 if any failure
};

Summary summarize_reports(const std::vector<std::filesystem::path>& files);
std::string summary_table(const Summary& s);
std::string summary_csv(const Summary& s);

}  // namespace holo
