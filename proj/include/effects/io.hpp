#pragma once

// File formats.  Operators travel as JSON {"dim": d, "entries": [[[re, im],
// ...], ...]} in row-major order; qubit pairs as {"A": {"a0": ..., "a": [x,
// y, z]}, "B": {...}}.  CSV cells and JSON eigenvalue lists carry doubles at
// full precision so values survive a text round trip bit-exactly.

#include <complex>
#include <cstdio>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "effects/core.hpp"
#include "effects/qubit.hpp"
#include "effects/types.hpp"

namespace effects::io {

using nlohmann::json;

// 17 significant digits, the smallest count that round-trips every double.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string join_csv(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line;
}

inline json operator_to_json(const ComplexMatrix<double>& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return json{{"dim", m.rows()}, {"entries", std::move(rows)}};
}

inline ComplexMatrix<double> operator_from_json(const json& j) {
  try {
    const auto dim = j.at("dim").get<long>();
    if (dim < 1) throw ParseError("operator dim must be positive");
    const json& rows = j.at("entries");
    if (!rows.is_array() || static_cast<long>(rows.size()) != dim)
      throw ParseError("operator needs exactly dim rows");
    ComplexMatrix<double> m(dim, dim);
    for (long r = 0; r < dim; ++r) {
      const json& row = rows.at(static_cast<std::size_t>(r));
      if (!row.is_array() || static_cast<long>(row.size()) != dim)
        throw ParseError("operator row " + std::to_string(r) + " needs dim entries");
      for (long c = 0; c < dim; ++c) {
        const json& cell = row.at(static_cast<std::size_t>(c));
        if (!cell.is_array() || cell.size() != 2)
          throw ParseError("operator entries must be [re, im] pairs");
        m(r, c) = {cell.at(0).get<double>(), cell.at(1).get<double>()};
      }
    }
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad operator JSON: ") + e.what());
  }
}

inline json qubit_to_json(const QubitEffectd& q) {
  return json{{"a0", q.a0()}, {"a", {q.a()(0), q.a()(1), q.a()(2)}}};
}

inline QubitEffectd qubit_from_json(const json& j) {
  try {
    const double a0 = j.at("a0").get<double>();
    const json& a = j.at("a");
    if (!a.is_array() || a.size() != 3)
      throw ParseError("qubit entry 'a' must be a 3-vector");
    Vector3<double> v(a.at(0).get<double>(), a.at(1).get<double>(), a.at(2).get<double>());
    return QubitEffectd(a0, v);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad qubit JSON: ") + e.what());
  }
}

inline json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("cannot parse '" + path + "': " + e.what());
  }
}

inline ComplexMatrix<double> load_operator(const std::string& path) {
  return operator_from_json(parse_file(path));
}

inline std::pair<QubitEffectd, QubitEffectd> load_pair(const std::string& path) {
  const json j = parse_file(path);
  try {
    return {qubit_from_json(j.at("A")), qubit_from_json(j.at("B"))};
  } catch (const json::exception& e) {
    throw ParseError("pair file needs objects 'A' and 'B': " + std::string(e.what()));
  }
}

}  // namespace effects::io
