// Copyright 2026 The sepnoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/// JSON and CSV output. Numbers are written with 17 significant digits so the
/// same inputs always give byte-identical files.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sepnoise/gate_compiler.hpp"
#include "sepnoise/linalg.hpp"
#include "sepnoise/separated_noise.hpp"

namespace sepnoise {

using Json = nlohmann::ordered_json;

inline std::string format_double(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline void write_json(std::ostream& os, const Json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(it.key()).dump() << ": ";
        write_json(os, it.value(), indent, depth + 1);
      }
      os << "\n" << close_pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      if (flat) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write_json(os, j[i], indent, depth + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write_json(os, j[i], indent, depth + 1);
      }
      os << "\n" << close_pad << "]";
      return;
    }
    case Json::value_t::number_float: os << format_double(j.get<double>()); return;
    default: os << j.dump(); return;
  }
}

}  // namespace detail

/// Pretty-prints with %.17g floats; non-finite values become NaN/Infinity tokens.
inline std::string dump_json(const Json& j, int indent = 2) {
  std::ostringstream os;
  detail::write_json(os, j, indent, 0);
  os << "\n";
  return os.str();
}

/// {"re": [[...]], "im": [[...]]}, row-major.
inline Json matrix_to_json(const CMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json rr = Json::array(), ri = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      rr.push_back(m(i, k).real());
      ri.push_back(m(i, k).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  return Json{{"re", re}, {"im", im}};
}

inline CMatrix matrix_from_json(const Json& j) {
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  const Eigen::Index rows = static_cast<Eigen::Index>(re.size());
  const Eigen::Index cols = rows ? static_cast<Eigen::Index>(re[0].size()) : 0;
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < cols; ++k)
      m(i, k) = cplx(re[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].get<double>(),
                     im[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].get<double>());
  return m;
}

inline Json vector_to_json(const RVector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

inline Json rate_matrix_to_json(const RateMatrix& r) {
  return Json{{"matrix", matrix_to_json(r.gamma)},
              {"spectrum", vector_to_json(r.spectrum())},
              {"strength", r.strength()},
              {"physical", r.physical()}};
}

inline Json separated_to_json(const SeparatedNoiseResult& r, const std::string& basis_label, double energy_scale) {
  return Json{{"basis", basis_label},
              {"route", to_string(r.route)},
              {"t_op", r.t_op},
              {"theta", 2.0 * energy_scale * r.t_op},
              {"strength", r.strength},
              {"gamma_s", matrix_to_json(r.gamma_s.gamma)},
              {"spectrum", vector_to_json(r.gamma_s.spectrum())},
              {"physical", r.gamma_s.physical()},
              {"gamma_f", matrix_to_json(r.gamma_f.gamma)}};
}

inline Json gate_noise_to_json(const GateNoise& g, const std::string& basis_label) {
  Json ops = Json::array();
  for (const auto& s : g.segments)
    ops.push_back(Json{{"label", s.label},
                       {"idle", s.idle},
                       {"duration", s.duration},
                       {"gamma_l", matrix_to_json(s.gamma_l.gamma)}});
  return Json{{"basis", basis_label},
              {"method", to_string(g.method)},
              {"t_g", g.t_g},
              {"gamma_n", matrix_to_json(g.gamma_n.gamma)},
              {"spectrum", vector_to_json(g.gamma_n.spectrum())},
              {"strength", g.gamma_n.strength()},
              {"u", matrix_to_json(g.u)},
              {"operations", ops}};
}

/// Header row, then one row per record; all numbers at 17 significant digits.
inline void write_csv(std::ostream& os, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
    os << "\n";
  }
}

}  // namespace sepnoise
