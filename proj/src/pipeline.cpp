#include "holo/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

namespace holo {

namespace {

Json optional_tuple(const auto& opt) {
  if (!opt) return nullptr;
  Json out = Json::array();
  for (auto v : *opt) out.push_back(v);
  return out;
}

Json finite_or_inf(double v) { return std::isfinite(v) ? Json(v) : Json("inf"); }

Json canonical_stage(const CanonicalPair& pair) {
  const auto v = validate_pair(pair.g, pair.L);
  const bool roundtrip = reassemble(eigen_split(pair)) == pair;
  Json j{{"dim", pair.dim()},
         {"blocks", pair.blocks().size()},
         {"g_symmetric", v.g_symmetric},
         {"g_nondegenerate", v.g_nondegenerate},
         {"l_g_symmetric", v.l_g_symmetric},
         {"split_roundtrip", roundtrip}};
  if (!v.ok()) j["failure"] = v.failure();
  j["pass"] = v.ok() && roundtrip;
  return j;
}

Json berger_stage(const CanonicalPair& pair, const SubspaceBasis& centralizer) {
  const std::size_t formula = centralizer_dimension_formula(pair);
  const CurvatureMap r = r_formal(pair);
  const auto bianchi = check_bianchi(r);
  const auto sectional = check_sectional(r);
  const auto cert = berger_certificate(r, centralizer);
  Json sect_fail = nullptr;
  if (sectional.failing) sect_fail = {sectional.failing->i, sectional.failing->j};
  return {{"dim_gL", centralizer.size()},
          {"dim_formula", formula},
          {"certificate", certificate_to_json(cert)},
          {"sectional_ok", sectional.ok()},
          {"bianchi_witness", optional_tuple(bianchi.witness)},
          {"sectional_failure", sect_fail},
          {"pass", cert.passes() && sectional.ok() && bianchi.ok && formula == centralizer.size()}};
}

Json realize_stage(const CanonicalPair& pair, QuadraticMetric& qm) {
  const auto rep = verify_realization(pair, &qm);
  return {{"metric_symmetric", rep.metric_symmetric},
          {"symmetrization_noop", rep.symmetrization_noop},
          {"nabla_l_ok", rep.nabla_l_ok},
          {"g_symmetric_ok", rep.g_symmetric_ok},
          {"routes_agree", rep.routes_agree},
          {"matches_r_formal", rep.matches_r_formal},
          {"curvature_rank", rep.curvature_rank},
          {"flat", rep.curvature_rank == 0},
          {"validity_radius", finite_or_inf(validity_radius(qm))},
          {"nabla_l_failure", optional_tuple(rep.nabla_l_failure)},
          {"g_symmetric_failure", optional_tuple(rep.g_symmetric_failure)},
          {"pass", rep.passes()}};
}

Json probe_stage(const QuadraticMetric& qm, const SubspaceBasis& centralizer, const ProbeConfig& config) {
  Json j{{"membership_tol", config.membership_tol},
         {"rank_threshold", config.rank_threshold},
         {"seed", config.seed}};
  try {
    HolonomyProbe probe(FloatMetric::from_exact(qm), centralizer, config.negligible_norm);
    const auto loops = standard_loop_family(qm.dim(), config);
    const auto rep = holonomy_span(probe, loops, config);
    j.update(span_report_to_json(rep));
    j["loops"] = loops.size();
    j["pass"] = rep.passes(config);
  } catch (const SingularMetricError& e) {
    j["error"] = e.what();
    j["pass"] = false;
  }
  return j;
}

std::string partition_label(const PencilSpec& spec) {
  std::string out;
  for (std::size_t e = 0; e < spec.eigens.size(); ++e) {
    if (e) out += ';';
    for (std::size_t b = 0; b < spec.eigens[e].blocks.size(); ++b) {
      if (b) out += '-';
      out += std::to_string(spec.eigens[e].blocks[b].size);
    }
  }
  return out;
}

std::string signs_label(const PencilSpec& spec) {
  std::string out;
  for (std::size_t e = 0; e < spec.eigens.size(); ++e) {
    if (e) out += ';';
    for (const auto& b : spec.eigens[e].blocks) out += b.sign > 0 ? '+' : '-';
  }
  return out;
}

}  // namespace

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::canonical: return "canonical";
    case Stage::berger: return "berger";
    case Stage::realize: return "realize";
    case Stage::probe: return "probe";
  }
  return "?";
}

std::vector<Stage> parse_stages(const std::string& text) {
  std::vector<Stage> found;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    bool known = false;
    for (Stage s : {Stage::canonical, Stage::berger, Stage::realize, Stage::probe})
      if (item == stage_name(s)) {
        found.push_back(s);
        known = true;
      }
    if (!known) throw SpecError("unknown stage: " + item);
  }
  if (found.empty()) throw SpecError("at least one stage is required");
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

void RunConfig::validate() const {
  if (stages.empty()) throw SpecError("at least one stage is required");
  if (!(probe.membership_tol > 0) || !(probe.rank_threshold > 0))
    throw SpecError("probe tolerances must be positive");
}

Report run_verify(const PencilSpec& spec, const RunConfig& config) {
  config.validate();
  ProbeConfig probe_config = config.probe;
  probe_config.seed = config.seed;

  Report report;
  report.body["spec"] = pencil_to_json(spec);
  report.body["n"] = spec.dimension();
  report.body["partition"] = partition_label(spec);
  report.body["signs"] = signs_label(spec);

  const CanonicalPair pair = build_canonical(spec);
  auto wants = [&](Stage s) { return std::find(config.stages.begin(), config.stages.end(), s) != config.stages.end(); };

  Json stages = Json::object();
  Json timings = Json::object();
  auto timed = [&](Stage s, const std::function<Json()>& body) {
    const auto start = std::chrono::steady_clock::now();
    stages[stage_name(s)] = body();
    const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
    timings[stage_name(s)] = ms.count();
  };

  std::optional<SubspaceBasis> centralizer;
  auto get_centralizer = [&]() -> const SubspaceBasis& {
    if (!centralizer) centralizer = centralizer_basis(pair);
    return *centralizer;
  };
  std::optional<QuadraticMetric> metric;

  if (wants(Stage::canonical)) timed(Stage::canonical, [&] { return canonical_stage(pair); });
  if (wants(Stage::berger)) timed(Stage::berger, [&] { return berger_stage(pair, get_centralizer()); });
  if (wants(Stage::realize))
    timed(Stage::realize, [&] {
      metric.emplace();
      return realize_stage(pair, *metric);
    });
  if (wants(Stage::probe))
    timed(Stage::probe, [&] {
      if (!metric) metric = lower_B(build_B(pair), pair.g);
      return probe_stage(*metric, get_centralizer(), probe_config);
    });

  bool pass = true;
  for (const auto& [name, st] : stages.items()) pass = pass && st["pass"].get<bool>();
  report.body["stages"] = stages;
  report.body["verdict"] = pass ? "pass" : "fail";
  if (config.timing) report.body["timing_ms"] = timings;
  report.pass = pass;
  return report;
}

std::vector<std::vector<std::size_t>> partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t remaining, std::size_t min_part) {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (std::size_t p = min_part; p <= remaining; ++p) {
      current.push_back(p);
      rec(remaining - p, p);
      current.pop_back();
    }
  };
  if (n > 0) rec(n, 1);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> sign_classes(const std::vector<std::size_t>& partition) {
  // Runs of equal sizes; a run of length m admits m+1 sign multisets.
  std::vector<std::size_t> runs;
  for (std::size_t k = 0; k < partition.size(); ++k) {
    if (k == 0 || partition[k] != partition[k - 1])
      runs.push_back(1);
    else
      ++runs.back();
  }
  std::vector<std::string> patterns{""};
  for (std::size_t m : runs) {
    std::vector<std::string> next;
    for (const auto& prefix : patterns)
      for (std::size_t minus = 0; minus <= m; ++minus)
        next.push_back(prefix + std::string(m - minus, '+') + std::string(minus, '-'));
    patterns = std::move(next);
  }
  auto flip = [&](const std::string& s) {
    std::string f;
    std::size_t pos = 0;
    for (std::size_t m : runs) {
      std::size_t minus = static_cast<std::size_t>(std::count(s.begin() + pos, s.begin() + pos + m, '-'));
      f += std::string(minus, '+') + std::string(m - minus, '-');
      pos += m;
    }
    return f;
  };
  std::vector<std::string> out;
  for (const auto& p : patterns)
    if (p <= flip(p)) out.push_back(p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<CorpusEntry> corpus(std::size_t max_n) {
  if (max_n < 2 || max_n > 8) throw SpecError("corpus max_n must lie in [2, 8]");
  std::vector<CorpusEntry> out;
  for (std::size_t n = 2; n <= max_n; ++n)
    for (const auto& part : partitions(n))
      for (const auto& signs : sign_classes(part)) {
        EigenSpec e{Rational(0), {}};
        std::string plabel;
        for (std::size_t b = 0; b < part.size(); ++b) {
          e.blocks.push_back({part[b], signs[b] == '+' ? 1 : -1});
          if (b) plabel += '-';
          plabel += std::to_string(part[b]);
        }
        PencilSpec spec{{e}};
        out.push_back({"n" + std::to_string(n) + "_p" + plabel + "_s" + signs, normalized(spec)});
      }
  return out;
}

std::vector<std::filesystem::path> write_corpus(std::size_t max_n, const std::filesystem::path& dir) {
  const auto entries = corpus(max_n);
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> paths;
  for (const auto& e : entries) {
    auto path = dir / (e.name + ".json");
    write_json_file(path, pencil_to_json(e.spec));
    paths.push_back(path);
  }
  return paths;
}

namespace {

std::string stage_status(const Json& stages, const char* name) {
  if (!stages.contains(name)) return "-";
  return stages[name].value("pass", false) ? "pass" : "fail";
}

SummaryRow summarize_one(const std::filesystem::path& file) {
  SummaryRow row;
  row.file = file.string();
  try {
    const Json j = read_json_file(file);
    const PencilSpec spec = pencil_from_json(j.at("spec"));
    const Json& stages = j.at("stages");
    row.n = spec.dimension();
    row.partition = partition_label(spec);
    row.signs = signs_label(spec);
    row.status = j.at("verdict").get<std::string>();
    if (row.status != "pass" && row.status != "fail") throw SpecError("unknown verdict " + row.status);
    row.dim_gL = "-";
    if (stages.contains("berger")) row.dim_gL = std::to_string(stages["berger"].at("dim_gL").get<std::size_t>());
    else if (stages.contains("probe") && stages["probe"].contains("dim_gL"))
      row.dim_gL = std::to_string(stages["probe"]["dim_gL"].get<std::size_t>());
    row.berger = stage_status(stages, "berger");
    row.realize = stage_status(stages, "realize");
    row.probe_rank = "-";
    row.probe_residual = "-";
    if (stages.contains("probe")) {
      const Json& p = stages["probe"];
      if (p.contains("span_rank")) row.probe_rank = std::to_string(p["span_rank"].get<std::size_t>());
      if (p.contains("max_membership_residual")) {
        std::ostringstream os;
        os << std::scientific << std::setprecision(2) << p["max_membership_residual"].get<double>();
        row.probe_residual = os.str();
      }
      if (p.contains("error")) row.message = p["error"].get<std::string>();
    }
  } catch (const std::exception& e) {
    row.status = "error";
    row.message = e.what();
  }
  return row;
}

int status_rank(const std::string& s) { return s == "error" ? 0 : s == "fail" ? 1 : 2; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

Summary summarize_reports(const std::vector<std::filesystem::path>& files) {
  Summary s;
  for (const auto& f : files) s.rows.push_back(summarize_one(f));
  std::stable_sort(s.rows.begin(), s.rows.end(),
                   [](const SummaryRow& a, const SummaryRow& b) { return status_rank(a.status) < status_rank(b.status); });
  for (const auto& r : s.rows) {
    if (r.status == "error") s.exit_code = 2;
    else if (r.status == "fail" && s.exit_code == 0) s.exit_code = 1;
  }
  return s;
}

std::string summary_table(const Summary& s) {
  const std::vector<std::string> header{"status", "n", "partition", "signs", "dim_gL", "berger", "realize",
                                        "probe_rank", "probe_residual", "file"};
  std::vector<std::vector<std::string>> cells{header};
  for (const auto& r : s.rows)
    cells.push_back({r.status, r.status == "error" ? "-" : std::to_string(r.n), r.partition, r.signs, r.dim_gL,
                     r.berger, r.realize, r.probe_rank, r.probe_residual,
                     r.message.empty() ? r.file : r.file + " (" + r.message + ")"});
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream os;
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << row[c];
      if (c + 1 < row.size()) os << std::string(width[c] - row[c].size() + 2, ' ');
    }
    os << '\n';
  }
  return os.str();
}

std::string summary_csv(const Summary& s) {
  std::ostringstream os;
  os << "file,status,n,partition,signs,dim_gL,berger,realize,probe_rank,probe_residual,message\n";
  for (const auto& r : s.rows)
    os << csv_field(r.file) << ',' << r.status << ',' << (r.status == "error" ? "" : std::to_string(r.n)) << ','
       << csv_field(r.partition) << ',' << csv_field(r.signs) << ',' << r.dim_gL << ',' << r.berger << ','
       << r.realize << ',' << r.probe_rank << ',' << r.probe_residual << ',' << csv_field(r.message) << '\n';
  return os.str();
}

}  // namespace holo
