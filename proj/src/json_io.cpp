#include "bsz/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace bsz {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) bad(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

std::pair<int, int> degree_pair(const Json& j) {
  const Json& d = field(j, "deg");
  if (!d.is_array() || d.size() != 2 || !d[0].is_number_integer() || !d[1].is_number_integer())
    bad("\"deg\" must be [n, m]");
  int n = d[0].get<int>(), m = d[1].get<int>();
  if (n < 0 || m < 0) throw Error(ErrorCode::InvalidDegree, "negative degree");
  return {n, m};
}

CMatrix complex_grid(const Json& j, Eigen::Index rows, Eigen::Index cols, const char* what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
    bad(std::string(what) + ": expected " + std::to_string(rows) + " rows");
  CMatrix out(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      bad(std::string(what) + ": expected " + std::to_string(cols) + " columns");
    for (Eigen::Index c = 0; c < cols; ++c) out(r, c) = complex_from_json(row[static_cast<size_t>(c)]);
  }
  return out;
}

Json grid_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json poly_list(const std::vector<BiPoly>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(to_json(p));
  return out;
}

Json cells(const std::vector<ConditionCell>& cs) {
  Json out = Json::array();
  for (const auto& c : cs)
    out.push_back({{"N", c.N}, {"M", c.M}, {"max", c.max_entry}, {"noise_floor", c.noise_floor}});
  return out;
}

void emit(const Json& j, int indent, int level, std::string& out) {
  auto newline = [&](int lvl) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<size_t>(indent * lvl), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(level + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        emit(it.value(), indent, level + 1, out);
      }
      newline(level);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Leaf arrays of numbers stay on one line.
      bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat && indent >= 0 ? ", " : ",";
        first = false;
        if (!flat) newline(level + 1);
        emit(e, indent, level + 1, out);
      }
      if (!flat) newline(level);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

Json to_json(cplx c) { return Json::array({c.real(), c.imag()}); }

cplx complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  bad("complex entries must be [re, im] or a number");
}

Json to_json(const BiPoly& p) {
  return {{"deg", {p.n(), p.m()}}, {"coeffs", grid_to_json(p.coeffs())}};
}

BiPoly poly_from_json(const Json& j) {
  auto [n, m] = degree_pair(j);
  return BiPoly(complex_grid(field(j, "coeffs"), n + 1, m + 1, "coeffs"));
}

Json to_json(const MomentTable& t) {
  return {{"jmax", t.jmax()}, {"kmax", t.kmax()}, {"c", grid_to_json(t.data())}};
}

MomentTable moments_from_json(const Json& j) {
  int J = int_field(j, "jmax"), K = int_field(j, "kmax");
  if (J < 0 || K < 0) bad("jmax and kmax must be nonnegative");
  CMatrix raw = complex_grid(field(j, "c"), 2 * J + 1, 2 * K + 1, "c");
  double scale = raw.cwiseAbs().maxCoeff();
  if (MomentTable::hermitian_defect(J, K, raw) > 1e-8 * std::max(scale, 1e-300))
    bad("moment table is not Hermitian symmetric");
  return MomentTable(J, K, raw);
}

Json to_json(const TrigPoly& t) {
  return {{"deg", {t.n, t.m}}, {"coeffs", grid_to_json(t.coeffs)}};
}

TrigPoly trig_from_json(const Json& j) {
  auto [n, m] = degree_pair(j);
  TrigPoly t(n, m);
  t.coeffs = complex_grid(field(j, "coeffs"), 2 * n + 1, 2 * m + 1, "coeffs");
  return t;
}

Json to_json(const StratificationReport& r) {
  return {{"holds", r.holds}, {"max_violation", r.max_violation}, {"a_norm", r.a_norm}, {"dimA", r.dimA},
          {"dimB", r.dimB},   {"d_min", r.d_min},                 {"d_max", r.d_max}};
}

Json to_json(const SosCertificate& c) {
  return {{"A", poly_list(c.A)},
          {"B", poly_list(c.B)},
          {"C", poly_list(c.C)},
          {"n1", c.n1},
          {"n2", c.n2},
          {"residual", c.residual},
          {"variant", c.variant == CertVariant::L ? "L" : "G"},
          {"t", c.t}};
}

Json to_json(const GeometryReport& g) {
  return {{"passed", g.passed},
          {"worst_deviation", g.worst_deviation},
          {"worst_z", to_json(g.worst_z)},
          {"worst_w", to_json(g.worst_w)}};
}

Json to_json(const DetRep& d) {
  return {{"U", grid_to_json(d.U)},
          {"m", d.m},
          {"n1", d.n1},
          {"n2", d.n2},
          {"scale", to_json(d.scale)},
          {"residual", d.residual},
          {"unitarity", d.unitarity},
          {"on_variety", d.on_variety}};
}

Json to_json(const FullMeasureReport& r) {
  return {{"verdict", verdict_name(r.verdict)},
          {"depth", {r.depth_n, r.depth_m}},
          {"positivity_ok", r.positivity_ok},
          {"determinant_margin", r.determinant_margin},
          {"e2_conditions", cells(r.e2_conditions)},
          {"h_conditions", cells(r.h_conditions)}};
}

Json to_json(const ArSolution& s) {
  return {{"classification", ar_class_name(s.classification)},
          {"a", to_json(s.a)},
          {"diagnostics", {{"a_norm", s.a_norm}, {"condition", to_json(s.condition)}}}};
}

Json to_json(const Error& e) {
  return {{"error", error_name(e.code())}, {"message", e.what()}, {"value", e.value()}};
}

std::string dump(const Json& j, int indent) {
  std::string out;
  emit(j, indent, 0, out);
  return out;
}

}  // namespace bsz
