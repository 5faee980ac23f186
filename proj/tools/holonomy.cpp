// holonomy: verify Jordan-block specs, generate corpora, summarize reports.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "holo/pipeline.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

struct VerifyArgs {
  std::string input;
  std::string stages = "canonical,berger,realize,probe";
  std::string out;
  std::string metric_out;
  std::string basis_out;
  std::uint64_t seed = 0;
  double membership_tol = 1e-6;
  double rank_threshold = 1e-8;
  bool timing = false;
};

int cmd_verify(const VerifyArgs& args) {
  holo::RunConfig config;
  config.input = args.input;
  config.output = args.out;
  config.seed = args.seed;
  config.timing = args.timing;
  config.probe.membership_tol = args.membership_tol;
  config.probe.rank_threshold = args.rank_threshold;

  holo::Report report;
  try {
    config.stages = holo::parse_stages(args.stages);
    config.validate();
    const auto spec = holo::pencil_from_json(holo::read_json_file(config.input));
    report = holo::run_verify(spec, config);
    const auto pair = holo::build_canonical(spec);
    if (!args.metric_out.empty())
      holo::write_json_file(args.metric_out, holo::metric_to_json(holo::lower_B(holo::build_B(pair), pair.g)));
    if (!args.basis_out.empty()) {
      holo::Json bases{{"centralizer", holo::basis_to_json(holo::centralizer_basis(pair))}, {"m_ij", holo::Json::array()}};
      for (const auto& t : holo::block_pairs(pair))
        bases["m_ij"].push_back(holo::basis_to_json(holo::m_ij_basis(pair, t.i, t.j)));
      holo::write_json_file(args.basis_out, bases);
    }
  } catch (const holo::SpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }

  if (config.output.empty())
    std::cout << report.body.dump(2) << '\n';
  else {
    holo::write_json_file(config.output, report.body);
    std::cout << config.input.string() << ": " << (report.pass ? "pass" : "fail") << '\n';
  }
  return report.pass ? kPass : kFail;
}

int cmd_corpus(std::size_t max_n, const std::string& out) {
  try {
    const auto paths = holo::write_corpus(max_n, out);
    for (const auto& p : paths) std::cout << p.string() << '\n';
  } catch (const holo::SpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kPass;
}

int cmd_report(const std::vector<std::string>& files, const std::string& csv) {
  std::vector<std::filesystem::path> paths(files.begin(), files.end());
  const auto summary = holo::summarize_reports(paths);
  std::cout << holo::summary_table(summary);
  if (!csv.empty()) {
    std::ofstream os(csv);
    if (!os) {
      std::cerr << "error: cannot write " << csv << '\n';
      return kInputError;
    }
    os << holo::summary_csv(summary);
  }
  return summary.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and numerical verification of holonomy algebras for g-symmetric operators"};
  app.require_subcommand(1);

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Run the verification stages on one spec");
  v->add_option("--input", verify.input, "Spec JSON file")->required();
  v->add_option("--stages", verify.stages, "Comma-separated subset of canonical,berger,realize,probe");
  v->add_option("--out", verify.out, "Report JSON path (stdout when omitted)");
  v->add_option("--seed", verify.seed, "Seed for probe basepoints");
  v->add_option("--membership-tol", verify.membership_tol, "Probe membership tolerance");
  v->add_option("--rank-threshold", verify.rank_threshold, "Relative singular-value threshold");
  v->add_option("--metric-out", verify.metric_out, "Also write the realized metric JSON");
  v->add_option("--basis-out", verify.basis_out, "Also write centralizer and m_ij bases JSON");
  v->add_flag("--timing", verify.timing, "Include per-stage wall-clock times in the report");

  std::size_t max_n = 0;
  std::string corpus_out;
  auto* c = app.add_subcommand("corpus", "Write nilpotent single-eigenvalue specs");
  c->add_option("--max-n", max_n, "Largest dimension (2..8)")->required();
  c->add_option("--out", corpus_out, "Output directory")->required();

  std::vector<std::string> report_files;
  std::string csv;
  auto* r = app.add_subcommand("report", "Summarize report files");
  r->add_option("files", report_files, "Report JSON files");
  r->add_option("--csv", csv, "Also write the summary as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  if (*v) return cmd_verify(verify);
  if (*c) return cmd_corpus(max_n, corpus_out);
  return cmd_report(report_files, csv);
}
