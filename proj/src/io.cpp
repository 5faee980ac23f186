#include "holo/io.hpp"

#include <fstream>
#include <sstream>

namespace holo {

namespace {

Rational rational_from_json(const Json& j) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw SpecError(e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw SpecError("expected a rational string, got " + j.dump());
}

bool looks_complex(const std::string& s) {
  return s.find('i') != std::string::npos || s.find('I') != std::string::npos ||
         s.find('j') != std::string::npos;
}

}  // namespace

Json matrix_to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

RatMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw SpecError("matrix must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j[0].size();
  RatMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw SpecError("matrix rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rational_from_json(j[r][c]);
  }
  return m;
}

PencilSpec pencil_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("eigenvalues") || !j["eigenvalues"].is_array())
    throw SpecError("spec must be an object with an \"eigenvalues\" array");
  PencilSpec spec;
  for (const auto& e : j["eigenvalues"]) {
    if (!e.is_object() || !e.contains("lambda") || !e.contains("blocks"))
      throw SpecError("each eigenvalue needs \"lambda\" and \"blocks\"");
    if (e.contains("imag")) {
      const auto& im = e["imag"];
      bool zero = (im.is_number() && im.get<double>() == 0) ||
                  (im.is_string() && rational_from_json(im) == 0);
      if (!zero) throw UnsupportedError("unsupported: complex block");
    }
    if (e["lambda"].is_string() && looks_complex(e["lambda"].get<std::string>()))
      throw UnsupportedError("unsupported: complex block");
    EigenSpec es{rational_from_json(e["lambda"]), {}};
    if (!e["blocks"].is_array()) throw SpecError("\"blocks\" must be an array");
    for (const auto& b : e["blocks"]) {
      if (!b.is_object() || !b.contains("size") || !b.contains("sign"))
        throw SpecError("each block needs \"size\" and \"sign\"");
      if (!b["size"].is_number_integer() || b["size"].get<long>() < 1)
        throw SpecError("block size must be a positive integer");
      if (!b["sign"].is_number_integer()) throw SpecError("block sign must be +1 or -1");
      const long sign = b["sign"].get<long>();
      if (sign != 1 && sign != -1) throw SpecError("block sign must be +1 or -1");
      es.blocks.push_back({static_cast<std::size_t>(b["size"].get<long>()), static_cast<int>(sign)});
    }
    spec.eigens.push_back(std::move(es));
  }
  return normalized(std::move(spec));
}

Json pencil_to_json(const PencilSpec& spec) {
  Json eigs = Json::array();
  for (const auto& e : spec.eigens) {
    Json blocks = Json::array();
    for (const auto& b : e.blocks) blocks.push_back({{"size", b.size}, {"sign", b.sign}});
    eigs.push_back({{"lambda", to_string(e.lambda)}, {"blocks", blocks}});
  }
  return {{"eigenvalues", eigs}};
}

Json basis_to_json(const SubspaceBasis& basis) {
  Json out = Json::array();
  for (std::size_t k = 0; k < basis.size(); ++k) {
    Json item{{"matrix", matrix_to_json(basis.elements[k])}};
    if (k < basis.tags.size()) item["tag"] = {basis.tags[k].i, basis.tags[k].j};
    out.push_back(std::move(item));
  }
  return out;
}

Json certificate_to_json(const BergerCertificate& cert) {
  Json w = Json::array();
  for (const auto& t : cert.witnesses) w.push_back({t.i, t.j});
  return {{"dim_gL", cert.dim_gL},
          {"image_rank", cert.image_rank},
          {"bianchi_ok", cert.bianchi_ok},
          {"containment_ok", cert.containment_ok},
          {"witnesses", w}};
}

Json metric_to_json(const QuadraticMetric& qm) {
  const std::size_t n = qm.dim();
  Json b = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    Json bi = Json::array();
    for (std::size_t j = 0; j < n; ++j) {
      Json bij = Json::array();
      for (std::size_t p = 0; p < n; ++p) {
        Json bijp = Json::array();
        for (std::size_t q = 0; q < n; ++q) bijp.push_back(to_string(qm.lowered(i, j, p, q)));
        bij.push_back(std::move(bijp));
      }
      bi.push_back(std::move(bij));
    }
    b.push_back(std::move(bi));
  }
  return {{"g0", matrix_to_json(qm.g0)}, {"B_lowered", b}};
}

QuadraticMetric metric_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("g0") || !j.contains("B_lowered"))
    throw SpecError("metric needs \"g0\" and \"B_lowered\"");
  QuadraticMetric qm;
  qm.g0 = matrix_from_json(j["g0"]);
  const std::size_t n = qm.g0.rows();
  if (qm.g0.cols() != n) throw SpecError("g0 must be square");
  qm.lowered = Tensor4(n);
  const Json& b = j["B_lowered"];
  auto check = [n](const Json& a) {
    if (!a.is_array() || a.size() != n) throw SpecError("B_lowered must be an n x n x n x n array");
  };
  check(b);
  for (std::size_t i = 0; i < n; ++i) {
    check(b[i]);
    for (std::size_t jj = 0; jj < n; ++jj) {
      check(b[i][jj]);
      for (std::size_t p = 0; p < n; ++p) {
        check(b[i][jj][p]);
        for (std::size_t q = 0; q < n; ++q) qm.lowered(i, jj, p, q) = rational_from_json(b[i][jj][p][q]);
      }
    }
  }
  qm.symmetrization_noop = true;
  return qm;
}

Json span_report_to_json(const SpanReport& rep) {
  Json samples = Json::array();
  for (const auto& s : rep.samples) {
    Json base = Json::array();
    for (Eigen::Index c = 0; c < s.loop.basepoint.size(); ++c) base.push_back(s.loop.basepoint[c]);
    samples.push_back({{"plane", {s.loop.alpha, s.loop.beta}},
                       {"side", s.loop.side},
                       {"basepoint", base},
                       {"residual", s.membership_residual}});
  }
  Json gap = std::isfinite(rep.gap) ? Json(rep.gap) : Json("inf");
  return {{"span_rank", rep.span_rank},
          {"dim_gL", rep.dim_gL},
          {"max_membership_residual", rep.max_membership_residual},
          {"max_metric_defect", rep.max_metric_defect},
          {"gap", gap},
          {"singular_values", rep.singular_values},
          {"samples", samples}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SpecError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace holo
