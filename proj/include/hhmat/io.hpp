#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hhmat/counterexample.hpp"
#include "hhmat/error.hpp"
#include "hhmat/majorize.hpp"
#include "hhmat/matrix.hpp"
#include "hhmat/theorems.hpp"

namespace hhmat {

using json = nlohmann::json;

// Matrix files: {"dim": n, "re": [[...]], "im": [[...]]}, row-major. Non-square
// matrices carry "rows"/"cols" instead of "dim".

inline json to_json(const CMatrix& m) {
  json re = json::array(), im = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json rr = json::array(), ii = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ii.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  json out;
  if (m.is_square()) {
    out["dim"] = m.rows();
  } else {
    out["rows"] = m.rows();
    out["cols"] = m.cols();
  }
  out["re"] = std::move(re);
  out["im"] = std::move(im);
  return out;
}

inline json to_json(const HermitianMatrix& m) { return to_json(m.matrix()); }

inline CMatrix cmatrix_from_json(const json& j) {
  try {
    const std::size_t rows = j.contains("dim") ? j.at("dim").get<std::size_t>() : j.at("rows").get<std::size_t>();
    const std::size_t cols = j.contains("dim") ? rows : j.at("cols").get<std::size_t>();
    const json& re = j.at("re");
    const bool has_im = j.contains("im");
    if (re.size() != rows || (has_im && j.at("im").size() != rows))
      throw InvalidArgument("matrix json: row count does not match dimension");
    std::vector<cplx> entries;
    entries.reserve(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
      if (re[r].size() != cols || (has_im && j.at("im")[r].size() != cols))
        throw InvalidArgument("matrix json: column count does not match dimension");
      for (std::size_t c = 0; c < cols; ++c)
        entries.emplace_back(re[r][c].get<double>(), has_im ? j.at("im")[r][c].get<double>() : 0.0);
    }
    return CMatrix(rows, cols, std::move(entries));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("matrix json: ") + e.what());
  }
}

/// Symmetrizes on load: returns (M + M*)/2.
inline HermitianMatrix hermitian_from_json(const json& j) {
  const CMatrix m = cmatrix_from_json(j);
  if (!m.is_square()) throw InvalidArgument("matrix json: Hermitian matrix must be square");
  return HermitianMatrix::hermitian_part(m);
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw IoError("'" + path + "': " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path + "'");
}

inline HermitianMatrix load_hermitian(const std::string& path) { return hermitian_from_json(read_json_file(path)); }

inline void save_matrix(const std::string& path, const CMatrix& m) { write_text_file(path, to_json(m).dump(2) + "\n"); }

// -- weights -----------------------------------------------------------------

inline json to_json(const WeightPair& w) {
  json j;
  j["kind"] = to_string(w.kind());
  if (w.scalar_x()) {
    j["x"] = *w.scalar_x();
    j["dim"] = w.dim();
  } else {
    j["X"] = to_json(w.x_weight());
    j["Y"] = to_json(w.y_weight());
  }
  return j;
}

inline WeightPair weight_pair_from_json(const json& j) {
  try {
    const WeightKind kind = parse_weight_kind(j.at("kind").get<std::string>());
    if (kind == WeightKind::scalar) return WeightPair::scalar(j.at("x").get<double>(), j.at("dim").get<std::size_t>());
    CMatrix x = cmatrix_from_json(j.at("X"));
    CMatrix y = cmatrix_from_json(j.at("Y"));
    return kind == WeightKind::commuting_normal ? WeightPair::commuting_normal(std::move(x), std::move(y))
                                                : WeightPair::bi_isometric(std::move(x), std::move(y));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("weights json: ") + e.what());
  }
}

// -- certificates and verdicts -------------------------------------------------

inline json to_json(const MajorizationCert& c) {
  json perms = json::array();
  for (const auto& p : c.perms) perms.push_back(p);
  return {{"weights", c.weights}, {"perms", perms}, {"residual", c.residual}};
}

namespace detail {

// JSON has no inf/nan; those become null.
inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace detail

inline json to_json(const CheckVerdict& v) {
  json j;
  j["name"] = v.name;
  j["holds"] = v.holds;
  j["min_slack"] = detail::finite_or_null(v.min_slack);
  j["tol"] = v.tol;
  j["scale"] = v.scale;
  json details = json::array();
  for (const auto& d : v.details) details.push_back({{"label", d.label}, {"slack", detail::finite_or_null(d.slack)}});
  j["details"] = std::move(details);
  json metrics = json::object();
  for (const auto& [k, x] : v.metrics) metrics[k] = detail::finite_or_null(x);
  j["metrics"] = std::move(metrics);
  j["notes"] = v.notes;
  return j;
}

inline json to_json(const FourPointWitness& w) {
  return {{"fn", w.fn},       {"P", to_json(w.p)},     {"S", to_json(w.s)},    {"T", to_json(w.t)},
          {"Q", to_json(w.q)}, {"outer", w.outer}, {"inner", w.inner}, {"sample", w.sample}};
}

inline FourPointWitness four_point_witness_from_json(const json& j) {
  FourPointWitness w{j.at("fn").get<std::string>(),
                     hermitian_from_json(j.at("P")),
                     hermitian_from_json(j.at("S")),
                     hermitian_from_json(j.at("T")),
                     hermitian_from_json(j.at("Q")),
                     j.value("outer", 0.0),
                     j.value("inner", 0.0),
                     j.value("sample", std::size_t{0})};
  return w;
}

}  // namespace hhmat
